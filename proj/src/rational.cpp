#include "polyident/rational.hpp"

#include <cctype>

#include "polyident/error.hpp"

namespace polyident {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSignedPermutation: return "NotSignedPermutation";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::TooManyFacets: return "TooManyFacets";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidPolytope: return "InvalidPolytope";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::Parse, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Integer num;
  Integer den = 1;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto p = body.substr(0, slash);
    auto q = body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) bad(text);
    num = Integer(std::string(p), 10);
    den = Integer(std::string(q), 10);
    if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    // "1." and ".5" are accepted, "." is not.
    if (whole.empty() && frac.empty()) bad(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) bad(text);
    std::string digits = std::string(whole) + std::string(frac);
    num = Integer(digits, 10);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  } else {
    if (!all_digits(body)) bad(text);
    num = Integer(std::string(body), 10);
  }

  if (negative) num = -num;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

int sign(const Rational& value) { return sgn(value); }

}  // namespace polyident
