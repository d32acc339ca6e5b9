#pragma once

#include <cstdint>
#include <vector>

#include "polyident/polytope.hpp"

namespace polyident {

enum class VertexMethod {
  Auto,               // basis enumeration while C(f, n) <= auto_basis_limit, else double description
  Basis,              // exhaustive n-subset basis enumeration (OpenMP kernel)
  BasisSerial,        // same, single-threaded reference implementation
  DoubleDescription,  // incremental extreme-ray computation on the homogenized cone
};

struct VertexEnumOptions {
  bool check_bounded = false;
  VertexMethod method = VertexMethod::Auto;
  std::uint64_t max_subsets = 2'000'000;
  std::uint64_t auto_basis_limit = 20'000;
};

/// Number of n-subsets of f rows, saturating at UINT64_MAX.
std::uint64_t subset_count(std::size_t f, std::size_t n);

/// All vertices of { x | a x <= b }, deduplicated and in lexicographic order.
/// Errors: EmptyPolytope, UnboundedPolytope (only with check_bounded),
/// TooManyFacets (basis methods, when C(f, n) > max_subsets).
Polytope enumerate_vertices(const HRepresentation& h, const VertexEnumOptions& options = {});

// The individual kernels. Each returns the sorted vertex list (possibly empty).
std::vector<std::vector<Rational>> basis_vertices_serial(const HRepresentation& h, std::uint64_t max_subsets);
std::vector<std::vector<Rational>> basis_vertices_parallel(const HRepresentation& h, std::uint64_t max_subsets);
std::vector<std::vector<Rational>> double_description_vertices(const HRepresentation& h);

}  // namespace polyident
