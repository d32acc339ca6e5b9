#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "polyident/automorphism.hpp"
#include "polyident/matrix.hpp"
#include "polyident/polytope.hpp"

namespace polyident {

/// A permutation of the vertices together with the linear map G realising
/// it (G V = V Pi).
struct AutomorphismWitness {
  Permutation perm;
  Mat linear_map;
  bool signed_perm = false;
  std::optional<SignedPermutationParts> decomposition;
};

AutomorphismWitness make_witness(Permutation perm, Mat linear_map);

enum class Method { GeneratorBased, BruteForce };
const char* to_string(Method method);

struct IdentifiabilityReport {
  bool identifiable = true;
  Method method = Method::GeneratorBased;
  std::size_t dim = 0;
  std::size_t vertex_count = 0;
  /// Generator-based: the sifted generators examined, in order, up to and
  /// including the first failure. Brute force: every permutation admitting a
  /// linear map, in lexicographic order.
  std::vector<AutomorphismWitness> generator_witnesses;
  std::optional<AutomorphismWitness> counterexample;
  /// Monotonic time spent deciding; excludes input validation and, for brute
  /// force, the materialisation of witness matrices after the verdict.
  std::chrono::nanoseconds elapsed{0};
  std::size_t raw_generator_count = 0;
  SearchStats search;
};

/// Holds V and V^+ so that candidate maps G = V Pi V^+ are cheap to form.
class LinearMapSolver {
 public:
  /// Throws Error(RankDeficient) unless rank(V) = dim.
  explicit LinearMapSolver(const Polytope& p);

  /// The unique G with G V = V Pi, if one exists.
  std::optional<Mat> map_for(const Permutation& perm) const;
  const Mat& pseudoinverse() const noexcept { return pinv_; }

 private:
  Mat v_;
  Mat pinv_;
};

std::optional<Mat> linear_map_for(const Polytope& p, const Permutation& perm);

struct CheckOptions {
  SearchOptions search;
};

/// Coloring matrix -> colored graph -> automorphism generators -> sifting ->
/// linear map per generator -> signed-permutation test, stopping at the
/// first generator that fails. Throws Error(InvalidPolytope) for inputs that
/// fail validation and propagates Error(SearchBudgetExceeded).
IdentifiabilityReport check_identifiability(const Polytope& p, const CheckOptions& options = {});

struct BruteForceOptions {
  std::size_t cap = 10;
  bool parallel = false;
};

/// Sweeps all m! vertex permutations and keeps those admitting a linear map;
/// identifiable iff every such map is a signed permutation. The reported
/// counterexample is the failing witness of largest permutation order,
/// lexicographically first among those. The sweep runs
/// in exact machine-integer arithmetic when the scaled entries fit, falling
/// back to the rational reference otherwise. Throws Error(TooLarge) when m > cap.
IdentifiabilityReport brute_force_identifiability(const Polytope& p, const BruteForceOptions& options = {});

/// Serial reference for the above: calls linear_map_for on every permutation.
IdentifiabilityReport brute_force_identifiability_reference(const Polytope& p, std::size_t cap = 8);

/// True iff [a linear map G with G V = V Pi exists] <=> [Pi^T C Pi = C].
/// Computed along two independent routes; should hold for every input.
bool verify_map_color_equivalence(const Polytope& p, const Permutation& perm);

}  // namespace polyident
