#include "polyident/identifiability.hpp"

#include <algorithm>
#include <numeric>

#include "polyident/coloring.hpp"
#include "polyident/error.hpp"
#include "polyident/group.hpp"

namespace polyident {

AutomorphismWitness make_witness(Permutation perm, Mat linear_map) {
  AutomorphismWitness w{std::move(perm), std::move(linear_map), false, std::nullopt};
  w.signed_perm = is_signed_permutation(w.linear_map);
  if (w.signed_perm) w.decomposition = decompose_signed_permutation(w.linear_map);
  return w;
}

const char* to_string(Method method) {
  return method == Method::GeneratorBased ? "generator_based" : "brute_force";
}

LinearMapSolver::LinearMapSolver(const Polytope& p) : v_(p.vertices), pinv_(right_pseudoinverse(p.vertices)) {}

std::optional<Mat> LinearMapSolver::map_for(const Permutation& perm) const {
  const Mat v_pi = v_.permute_columns(perm);
  Mat g = v_pi * pinv_;
  if (g * v_ != v_pi) return std::nullopt;
  return g;
}

std::optional<Mat> linear_map_for(const Polytope& p, const Permutation& perm) {
  return LinearMapSolver(p).map_for(perm);
}

namespace {

using Clock = std::chrono::steady_clock;

void require_valid(const Polytope& p) {
  const auto result = validate_polytope(p, false);
  if (!result.valid()) throw Error(ErrorCode::InvalidPolytope, result.summary());
}

void require_small(const Polytope& p, std::size_t cap) {
  if (p.vertex_count() > cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(p.vertex_count()) +
                                         " vertices exceed the brute-force cap of " + std::to_string(cap));
  }
}

// Exact sweep over permutations in machine integers. With W the vertex
// matrix scaled to integers and B a column basis, a permutation admits a map
// iff for every other column j: sum_k coef[j][k] w_{pi(B_k)} = den[j] w_{pi(j)},
// where coef[j] / den[j] are the coordinates of w_j in the basis. The map is
// then G = W_{pi(B)} (d W_B^{-1}) / d with d = +-det(W_B).
struct SweepSetup {
  std::size_t n = 0, m = 0;
  std::vector<int> basis, others;
  std::vector<Integer> w;     // column-major n x m
  std::vector<Integer> coef;  // per column j, n coefficients
  std::vector<Integer> den;   // per column j
  std::vector<Integer> adj;   // n x n row-major
  Integer det;
};

template <typename T>
class SweepKernel {
 public:
  explicit SweepKernel(const SweepSetup& s) : n_(s.n), m_(s.m), basis_(s.basis), others_(s.others) {
    auto cvt = [](const std::vector<Integer>& src) {
      std::vector<T> out(src.size());
      for (std::size_t i = 0; i < src.size(); ++i) out[i] = to_t(src[i]);
      return out;
    };
    w_ = cvt(s.w);
    coef_ = cvt(s.coef);
    den_ = cvt(s.den);
    adj_ = cvt(s.adj);
    det_ = to_t(s.det);
  }

  bool admits(const int* image) const {
    for (int j : others_) {
      const T* target = &w_[static_cast<std::size_t>(image[j]) * n_];
      const T* c = &coef_[static_cast<std::size_t>(j) * n_];
      const T d = den_[static_cast<std::size_t>(j)];
      for (std::size_t r = 0; r < n_; ++r) {
        T lhs = 0;
        for (std::size_t k = 0; k < n_; ++k) lhs += c[k] * w_[static_cast<std::size_t>(image[basis_[k]]) * n_ + r];
        if (lhs != d * target[r]) return false;
      }
    }
    return true;
  }

  bool signed_perm(const int* image) const {
    std::vector<int> col_hits(n_, 0);
    for (std::size_t r = 0; r < n_; ++r) {
      int row_hits = 0;
      for (std::size_t c = 0; c < n_; ++c) {
        T g = 0;
        for (std::size_t k = 0; k < n_; ++k) {
          g += w_[static_cast<std::size_t>(image[basis_[k]]) * n_ + r] * adj_[k * n_ + c];
        }
        if (g == 0) continue;
        if (g != det_ && g != -det_) return false;
        ++row_hits;
        ++col_hits[c];
      }
      if (row_hits != 1) return false;
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
  }

  // Lexicographic sweep over permutations starting with `prefix`.
  void sweep(std::vector<int> prefix, std::vector<std::vector<int>>& found) const {
    std::vector<int> image = std::move(prefix);
    std::vector<char> used(m_, 0);
    for (int x : image) used[x] = 1;
    const auto fixed = static_cast<std::ptrdiff_t>(image.size());
    for (std::size_t v = 0; v < m_; ++v) {
      if (!used[v]) image.push_back(static_cast<int>(v));
    }
    do {
      if (admits(image.data())) found.push_back(image);
    } while (std::next_permutation(image.begin() + fixed, image.end()));
  }

 private:
  static T to_t(const Integer& x) {
    if constexpr (sizeof(T) == 8) {
      return static_cast<T>(x.get_si());
    } else {
      // Assemble from two 64-bit halves of |x|.
      Integer mag = abs(x);
      Integer hi = mag >> 64;
      Integer lo = mag - (hi << 64);
      unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                            static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
      T v = static_cast<T>(u);
      return sgn(x) < 0 ? -v : v;
    }
  }

  std::size_t n_, m_;
  std::vector<int> basis_, others_;
  std::vector<T> w_, coef_, den_, adj_;
  T det_;
};

template <typename T>
struct SweepResult {
  std::vector<std::vector<int>> solutions;
  std::vector<char> signed_flags;
};

template <typename T>
SweepResult<T> run_sweep(const SweepSetup& setup, bool parallel) {
  SweepKernel<T> kernel(setup);
  SweepResult<T> out;
  const auto m = static_cast<int>(setup.m);
  if (!parallel || m < 3) {
    kernel.sweep({}, out.solutions);
  } else {
    const int tasks = m * m;
    std::vector<std::vector<std::vector<int>>> parts(static_cast<std::size_t>(tasks));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < tasks; ++t) {
      if (t / m == t % m) continue;
      kernel.sweep({t / m, t % m}, parts[static_cast<std::size_t>(t)]);
    }
    for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out.solutions));
  }
  out.signed_flags.reserve(out.solutions.size());
  for (const auto& s : out.solutions) out.signed_flags.push_back(kernel.signed_perm(s.data()) ? 1 : 0);
  return out;
}

struct Prepared {
  SweepSetup setup;
  int width = 0;  // 64, 128, or 0 when neither fits
};

Prepared prepare(const Polytope& p) {
  Prepared out;
  auto& s = out.setup;
  s.n = p.dim();
  s.m = p.vertex_count();
  const Mat& v = p.vertices;

  Integer scale = 1;
  for (const auto& x : v.entries()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  s.w.resize(s.n * s.m);
  Integer max_w = 0;
  for (std::size_t j = 0; j < s.m; ++j) {
    for (std::size_t r = 0; r < s.n; ++r) {
      Integer x = v(r, j).get_num() * (scale / v(r, j).get_den());
      max_w = std::max<Integer>(max_w, abs(x));
      s.w[j * s.n + r] = std::move(x);
    }
  }

  s.basis = independent_columns(v);
  std::vector<char> in_basis(s.m, 0);
  for (int b : s.basis) in_basis[b] = 1;
  for (std::size_t j = 0; j < s.m; ++j) {
    if (!in_basis[j]) s.others.push_back(static_cast<int>(j));
  }

  // Fraction-free Gauss-Jordan on [W_B | I] ends at [d I | d W_B^{-1}].
  const std::size_t n = s.n;
  std::vector<Integer> aug(n * 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) aug[r * 2 * n + k] = s.w[static_cast<std::size_t>(s.basis[k]) * n + r];
    aug[r * 2 * n + n + r] = 1;
  }
  Integer prev = 1, t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (sgn(aug[piv * 2 * n + k]) == 0) ++piv;  // W_B is invertible
    if (piv != k) {
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(aug[piv * 2 * n + c], aug[k * 2 * n + c]);
    }
    const Integer pk = aug[k * 2 * n + k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer f = aug[i * 2 * n + k];
      for (std::size_t c = 0; c < 2 * n; ++c) {
        if (c == k) continue;
        t = pk * aug[i * 2 * n + c] - f * aug[k * 2 * n + c];
        mpz_divexact(aug[i * 2 * n + c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      aug[i * 2 * n + k] = 0;
    }
    prev = pk;
  }
  s.det = prev;
  s.adj.resize(n * n);
  Integer max_adj = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      s.adj[r * n + c] = aug[r * 2 * n + n + c];
      max_adj = std::max<Integer>(max_adj, abs(s.adj[r * n + c]));
    }
  }

  s.coef.assign(n * s.m, 0);
  s.den.assign(s.m, 1);
  Integer max_coef = 0;
  for (int j : s.others) {
    Integer* c = &s.coef[static_cast<std::size_t>(j) * n];
    Integer g = s.det;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t r = 0; r < n; ++r) c[k] += s.adj[k * n + r] * s.w[static_cast<std::size_t>(j) * n + r];
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c[k].get_mpz_t());
    }
    s.den[j] = s.det / g;
    max_coef = std::max<Integer>(max_coef, abs(s.den[j]));
    for (std::size_t k = 0; k < n; ++k) {
      mpz_divexact(c[k].get_mpz_t(), c[k].get_mpz_t(), g.get_mpz_t());
      max_coef = std::max<Integer>(max_coef, abs(c[k]));
    }
  }

  // Largest intermediate: n * max(coef, adj) * max_w, plus the det comparison.
  Integer bound = Integer(static_cast<unsigned long>(s.n + 1)) * std::max(max_coef, max_adj) * max_w;
  bound = std::max<Integer>(bound, abs(s.det));
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  out.width = bits < 62 ? 64 : bits < 125 ? 128 : 0;
  return out;
}

std::size_t order_of(const Permutation& p) {
  std::size_t order = 1;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t len = 0;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(p[j]), ++len) seen[j] = 1;
    if (len) order = std::lcm(order, len);
  }
  return order;
}

// Among failing witnesses (already in lexicographic order), the one whose
// permutation has the largest order; the first such on ties.
std::optional<AutomorphismWitness> pick_counterexample(const std::vector<AutomorphismWitness>& witnesses) {
  const AutomorphismWitness* best = nullptr;
  std::size_t best_order = 0;
  for (const auto& w : witnesses) {
    if (w.signed_perm) continue;
    const auto order = order_of(w.perm);
    if (!best || order > best_order) {
      best = &w;
      best_order = order;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

}  // namespace

IdentifiabilityReport check_identifiability(const Polytope& p, const CheckOptions& options) {
  require_valid(p);
  IdentifiabilityReport report;
  report.method = Method::GeneratorBased;
  report.dim = p.dim();
  report.vertex_count = p.vertex_count();

  const auto start = Clock::now();
  const auto graph = build_colored_graph(coloring_matrix(p));
  const auto raw = automorphism_generators(graph, options.search, &report.search);
  report.raw_generator_count = raw.generators.size();
  const auto sifted = sift_generators(raw);
  const LinearMapSolver solver(p);
  for (const auto& perm : sifted.generators) {
    auto g = solver.map_for(perm);
    if (!g) throw Error(ErrorCode::InvalidConfig, "graph automorphism without a linear map: " + perm.to_string());
    report.generator_witnesses.push_back(make_witness(perm, std::move(*g)));
    if (!report.generator_witnesses.back().signed_perm) {
      report.identifiable = false;
      report.counterexample = report.generator_witnesses.back();
      break;
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

IdentifiabilityReport brute_force_identifiability(const Polytope& p, const BruteForceOptions& options) {
  require_small(p, options.cap);
  require_valid(p);
  IdentifiabilityReport report;
  report.method = Method::BruteForce;
  report.dim = p.dim();
  report.vertex_count = p.vertex_count();

  const auto start = Clock::now();
  auto prepared = prepare(p);
  std::vector<std::vector<int>> solutions;
  std::vector<char> flags;
  if (prepared.width == 64) {
    auto r = run_sweep<std::int64_t>(prepared.setup, options.parallel);
    solutions = std::move(r.solutions);
    flags = std::move(r.signed_flags);
  } else if (prepared.width == 128) {
    auto r = run_sweep<__int128>(prepared.setup, options.parallel);
    solutions = std::move(r.solutions);
    flags = std::move(r.signed_flags);
  } else {
    return brute_force_identifiability_reference(p, options.cap);
  }
  report.identifiable = std::all_of(flags.begin(), flags.end(), [](char f) { return f != 0; });
  report.elapsed = Clock::now() - start;

  const LinearMapSolver solver(p);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    Permutation perm(std::move(solutions[i]));
    auto g = solver.map_for(perm);
    if (!g) throw Error(ErrorCode::InvalidConfig, "integer sweep disagrees with rational check: " + perm.to_string());
    auto w = make_witness(std::move(perm), std::move(*g));
    if (w.signed_perm != (flags[i] != 0)) {
      throw Error(ErrorCode::InvalidConfig, "integer signed-permutation test disagrees with rational test");
    }
    report.generator_witnesses.push_back(std::move(w));
  }
  report.counterexample = pick_counterexample(report.generator_witnesses);
  return report;
}

IdentifiabilityReport brute_force_identifiability_reference(const Polytope& p, std::size_t cap) {
  require_small(p, cap);
  require_valid(p);
  IdentifiabilityReport report;
  report.method = Method::BruteForce;
  report.dim = p.dim();
  report.vertex_count = p.vertex_count();

  const auto start = Clock::now();
  const LinearMapSolver solver(p);
  std::vector<int> image(p.vertex_count());
  std::iota(image.begin(), image.end(), 0);
  do {
    Permutation perm(image);
    if (auto g = solver.map_for(perm)) {
      auto w = make_witness(std::move(perm), std::move(*g));
      if (!w.signed_perm) report.identifiable = false;
      report.generator_witnesses.push_back(std::move(w));
    }
  } while (std::next_permutation(image.begin(), image.end()));
  report.elapsed = Clock::now() - start;
  report.counterexample = pick_counterexample(report.generator_witnesses);
  return report;
}

bool verify_map_color_equivalence(const Polytope& p, const Permutation& perm) {
  const bool has_map = linear_map_for(p, perm).has_value();
  const bool keeps_colors = preserves_matrix(coloring_matrix(p).c, perm);
  return has_map == keeps_colors;
}

}  // namespace polyident
