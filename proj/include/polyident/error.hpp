#pragma once

#include <stdexcept>
#include <string>

namespace polyident {

enum class ErrorCode {
  DimensionMismatch,
  Singular,
  RankDeficient,
  NotSquare,
  NotSignedPermutation,
  EmptyPolytope,
  UnboundedPolytope,
  TooManyFacets,
  InvalidConfig,
  InvalidPolytope,
  SearchBudgetExceeded,
  TooLarge,
  CapExceeded,
  Parse,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polyident
