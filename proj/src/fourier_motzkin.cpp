#include "polyident/fourier_motzkin.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "polyident/error.hpp"

namespace polyident {

namespace {

class History {
 public:
  History() = default;
  History(std::size_t bits, std::size_t set) : words_((bits + 63) / 64, 0) { words_[set / 64] |= 1ULL << (set % 64); }

  History operator|(const History& other) const {
    History out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
  }

  bool subset_of(const History& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// coeffs . x <= rhs, stored with coefficients scaled to a primitive integer
// vector so that parallel rows compare equal.
struct Row {
  std::vector<Rational> coeffs;
  Rational rhs;
  History history;
};

void normalize(Row& row) {
  Integer lcm_den = 1;
  for (const auto& c : row.coeffs) {
    if (sgn(c) != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  Integer g = 0;
  for (const auto& c : row.coeffs) {
    if (sgn(c) == 0) continue;
    Integer v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) return;
  const Rational scale(lcm_den, g);
  for (auto& c : row.coeffs) c *= scale;
  row.rhs *= scale;
}

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Drops rows dominated by a parallel row that is at least as tight and
// derived from a subset of its originals, and resolves constant rows.
// Merging on tightness alone would break the history rule: the survivor can
// carry a larger history and lose the combination that proves infeasibility.
// Returns false if a constant row 0 <= rhs with rhs < 0 appears.
bool compact(std::vector<Row>& rows) {
  std::map<std::vector<Rational>, std::vector<std::size_t>> seen;
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& row : rows) {
    if (is_zero(row.coeffs)) {
      if (sgn(row.rhs) < 0) return false;
      continue;
    }
    normalize(row);
    auto& same = seen[row.coeffs];
    bool placed = false;
    for (std::size_t idx : same) {
      Row& kept = out[idx];
      if (kept.rhs <= row.rhs && kept.history.subset_of(row.history)) {
        placed = true;
        break;
      }
      if (row.rhs <= kept.rhs && row.history.subset_of(kept.history)) {
        kept = std::move(row);
        placed = true;
        break;
      }
    }
    if (!placed) {
      same.push_back(out.size());
      out.push_back(std::move(row));
    }
  }
  rows = std::move(out);
  return true;
}

}  // namespace

bool fm_feasible(const LinearSystem& system, const FmOptions& options, FmStats* stats) {
  const std::size_t nv = system.num_vars;
  const std::size_t n_ineq = system.ineq_a.rows();
  const std::size_t n_eq = system.eq_a.rows();
  if ((n_ineq && system.ineq_a.cols() != nv) || (n_eq && system.eq_a.cols() != nv) ||
      system.ineq_b.size() != n_ineq || system.eq_b.size() != n_eq) {
    throw Error(ErrorCode::DimensionMismatch, "linear system shape");
  }

  // Reduced row echelon form of [eq_a | eq_b].
  Mat eq(n_eq, nv + 1);
  for (std::size_t r = 0; r < n_eq; ++r) {
    for (std::size_t c = 0; c < nv; ++c) eq(r, c) = system.eq_a(r, c);
    eq(r, nv) = system.eq_b[r];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < nv && lead < n_eq; ++c) {
    std::size_t p = lead;
    while (p < n_eq && sgn(eq(p, c)) == 0) ++p;
    if (p == n_eq) continue;
    for (std::size_t k = 0; k <= nv; ++k) std::swap(eq(p, k), eq(lead, k));
    const Rational inv = 1 / eq(lead, c);
    for (std::size_t k = 0; k <= nv; ++k) eq(lead, k) *= inv;
    for (std::size_t r = 0; r < n_eq; ++r) {
      if (r == lead || sgn(eq(r, c)) == 0) continue;
      const Rational f = eq(r, c);
      for (std::size_t k = 0; k <= nv; ++k) eq(r, k) -= f * eq(lead, k);
    }
    pivot_col.push_back(c);
    ++lead;
  }
  for (std::size_t r = lead; r < n_eq; ++r) {
    if (sgn(eq(r, nv)) != 0) return false;  // 0 = nonzero
  }

  std::vector<bool> is_pivot(nv, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < nv; ++c) {
    if (!is_pivot[c]) free_vars.push_back(c);
  }

  // x_p = eq(r, nv) - sum_f eq(r, f) x_f for each pivot p; substitute.
  std::vector<Row> rows;
  rows.reserve(n_ineq);
  for (std::size_t i = 0; i < n_ineq; ++i) {
    Row row;
    row.coeffs.resize(free_vars.size());
    row.rhs = system.ineq_b[i];
    for (std::size_t k = 0; k < free_vars.size(); ++k) row.coeffs[k] = system.ineq_a(i, free_vars[k]);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      const Rational& a = system.ineq_a(i, pivot_col[r]);
      if (sgn(a) == 0) continue;
      row.rhs -= a * eq(r, nv);
      for (std::size_t k = 0; k < free_vars.size(); ++k) row.coeffs[k] -= a * eq(r, free_vars[k]);
    }
    row.history = History(n_ineq, i);
    rows.push_back(std::move(row));
  }
  if (!compact(rows)) return false;

  std::vector<bool> alive(free_vars.size(), true);
  std::size_t eliminated = 0;
  FmStats local;
  local.peak_rows = rows.size();

  while (!rows.empty()) {
    // Pick the variable generating the fewest new rows.
    std::size_t best = free_vars.size();
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < free_vars.size(); ++k) {
      if (!alive[k]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& row : rows) {
        const int s = sgn(row.coeffs[k]);
        pos += s > 0;
        neg += s < 0;
      }
      if (pos + neg == 0) {
        alive[k] = false;
        continue;
      }
      const std::size_t cost = pos * neg;
      if (best == free_vars.size() || cost < best_cost) {
        best = k;
        best_cost = cost;
      }
    }
    if (best == free_vars.size()) break;

    alive[best] = false;
    ++eliminated;
    std::vector<const Row*> pos, neg;
    std::vector<Row> next;
    for (const auto& row : rows) {
      const int s = sgn(row.coeffs[best]);
      if (s > 0) pos.push_back(&row);
      else if (s < 0) neg.push_back(&row);
      else next.push_back(row);
    }
    // Only upper (or only lower) bounds on the variable: it can absorb any
    // value, so those rows are dropped.
    for (const Row* p : pos) {
      for (const Row* q : neg) {
        History h = p->history | q->history;
        if (h.count() > eliminated + 1) {
          ++local.chernikov_dropped;
          continue;
        }
        const Rational a = p->coeffs[best];
        const Rational b = -q->coeffs[best];
        Row combined;
        combined.coeffs.resize(free_vars.size());
        for (std::size_t k = 0; k < free_vars.size(); ++k) {
          combined.coeffs[k] = b * p->coeffs[k] + a * q->coeffs[k];
        }
        combined.coeffs[best] = 0;
        combined.rhs = b * p->rhs + a * q->rhs;
        combined.history = std::move(h);
        next.push_back(std::move(combined));
      }
      if (next.size() > options.max_rows) {
        throw Error(ErrorCode::TooLarge, "Fourier-Motzkin intermediate system exceeds " +
                                             std::to_string(options.max_rows) + " rows");
      }
    }
    rows = std::move(next);
    if (!compact(rows)) {
      local.eliminated = eliminated;
      if (stats) *stats = local;
      return false;
    }
    local.peak_rows = std::max(local.peak_rows, rows.size());
  }

  local.eliminated = eliminated;
  if (stats) *stats = local;
  return true;
}

}  // namespace polyident
