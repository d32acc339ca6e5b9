#include "polyident/vertex_enumeration.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <set>

#include <omp.h>

#include "polyident/error.hpp"

namespace polyident {

namespace {

using Point = std::vector<Rational>;

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

// Pascal table, rows 0..f, saturating.
std::vector<std::vector<std::uint64_t>> binomials(std::size_t f) {
  std::vector<std::vector<std::uint64_t>> c(f + 1);
  for (std::size_t i = 0; i <= f; ++i) {
    c[i].assign(i + 1, 1);
    for (std::size_t k = 1; k < i; ++k) c[i][k] = sat_add(c[i - 1][k - 1], c[i - 1][k]);
  }
  return c;
}

std::uint64_t choose(const std::vector<std::vector<std::uint64_t>>& c, std::size_t a, std::size_t b) {
  return b > a ? 0 : c[a][b];
}

// Solves the square system given by rows `idx` of (a, b) with equality.
std::optional<Point> solve_rows(const HRepresentation& h, std::span<const int> idx, Mat& work) {
  const std::size_t n = h.dim();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) work(r, c) = h.a(idx[r], c);
    work(r, n) = h.b[idx[r]];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && sgn(work(p, col)) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != col) {
      for (std::size_t k = col; k <= n; ++k) std::swap(work(p, k), work(col, k));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(work(r, col)) == 0) continue;
      const Rational f = work(r, col) / work(col, col);
      for (std::size_t k = col; k <= n; ++k) work(r, k) -= f * work(col, k);
    }
  }
  Point x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = work(r, n) / work(r, r);
  return x;
}

bool satisfies(const HRepresentation& h, const Point& x) {
  Rational acc;
  for (std::size_t i = 0; i < h.facet_count(); ++i) {
    acc = 0;
    for (std::size_t c = 0; c < h.dim(); ++c) acc += h.a(i, c) * x[c];
    if (acc > h.b[i]) return false;
  }
  return true;
}

void require_subsets(const HRepresentation& h, std::uint64_t max_subsets) {
  const auto total = subset_count(h.facet_count(), h.dim());
  if (total > max_subsets) {
    throw Error(ErrorCode::TooManyFacets, "C(" + std::to_string(h.facet_count()) + ", " +
                                              std::to_string(h.dim()) + ") basis subsets exceed cap " +
                                              std::to_string(max_subsets));
  }
}

}  // namespace

std::uint64_t subset_count(std::size_t f, std::size_t n) {
  if (n > f) return 0;
  n = std::min(n, f - n);
  // Multiplicative formula in 128 bits keeps every intermediate exact until
  // the running value itself no longer fits.
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    acc = acc * (f - n + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<Point> basis_vertices_serial(const HRepresentation& h, std::uint64_t max_subsets) {
  check_shape(h);
  require_subsets(h, max_subsets);
  const std::size_t n = h.dim();
  const std::size_t f = h.facet_count();
  std::set<Point> found;
  if (n == 0 || n > f) return {};

  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
  Mat work(n, n + 1);
  while (true) {
    if (auto x = solve_rows(h, idx, work); x && satisfies(h, *x)) found.insert(std::move(*x));
    // next combination in lexicographic order
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == static_cast<int>(f - n + i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t k = i; k < n; ++k) idx[k] = idx[k - 1] + 1;
  }
  return {found.begin(), found.end()};
}

std::vector<Point> basis_vertices_parallel(const HRepresentation& h, std::uint64_t max_subsets) {
  check_shape(h);
  require_subsets(h, max_subsets);
  const std::size_t n = h.dim();
  const std::size_t f = h.facet_count();
  if (n == 0 || n > f) return {};

  const auto table = binomials(f);
  const std::uint64_t total = choose(table, f, n);
  constexpr std::uint64_t kChunk = 2048;
  const auto chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<std::vector<Point>> per_chunk(static_cast<std::size_t>(chunks));

#pragma omp parallel
  {
    Mat work(n, n + 1);
    std::vector<int> idx(n);
#pragma omp for schedule(dynamic)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
      // Unrank the first combination of this chunk (lexicographic order).
      std::uint64_t rank = static_cast<std::uint64_t>(chunk) * kChunk;
      int next = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = next;; ++c) {
          const auto below = choose(table, f - static_cast<std::size_t>(c) - 1, n - i - 1);
          if (rank < below) {
            idx[i] = c;
            next = c + 1;
            break;
          }
          rank -= below;
        }
      }
      auto& out = per_chunk[static_cast<std::size_t>(chunk)];
      const std::uint64_t count = std::min(kChunk, total - static_cast<std::uint64_t>(chunk) * kChunk);
      for (std::uint64_t step = 0; step < count; ++step) {
        if (auto x = solve_rows(h, idx, work); x && satisfies(h, *x)) out.push_back(std::move(*x));
        std::size_t i = n;
        while (i > 0 && idx[i - 1] == static_cast<int>(f - n + i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t k = i; k < n; ++k) idx[k] = idx[k - 1] + 1;
      }
    }
  }

  std::vector<Point> all;
  for (auto& part : per_chunk) std::move(part.begin(), part.end(), std::back_inserter(all));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

namespace {

using IntVec = std::vector<Integer>;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= 1ULL << (i % 64); }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] & ~o.w_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> w_;
};

struct Ray {
  IntVec y;    // (x, t)
  Bits zeros;  // processed constraints tight at y
};

void make_primitive(IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

IntVec to_integer_row(std::span<const Rational> coeffs) {
  Integer l = 1;
  for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntVec out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = coeffs[i].get_num() * (l / coeffs[i].get_den());
  make_primitive(out);
  return out;
}

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<Point> double_description_vertices(const HRepresentation& h) {
  check_shape(h);
  const std::size_t n = h.dim();
  const std::size_t f = h.facet_count();
  const std::size_t d = n + 1;

  // Homogenized cone { (x, t) | a x - b t <= 0, -t <= 0 }; the t-row goes first.
  std::vector<IntVec> rows;
  rows.reserve(f + 1);
  {
    std::vector<Rational> trow(d, Rational(0));
    trow[n] = -1;
    rows.push_back(to_integer_row(trow));
  }
  for (std::size_t i = 0; i < f; ++i) {
    std::vector<Rational> r(d);
    for (std::size_t c = 0; c < n; ++c) r[c] = h.a(i, c);
    r[n] = -h.b[i];
    rows.push_back(to_integer_row(r));
  }

  Mat stacked(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < d; ++c) stacked(i, c) = rows[i][c];
  const auto basis = independent_columns(stacked.transpose());
  // A lineality space means no vertex exists at all.
  if (basis.size() < d) return {};

  // Initial simplicial cone: rays are the columns of -H0^{-1}.
  const Mat h0_inv = invert(stacked.transpose().select_columns(basis).transpose());
  std::vector<bool> processed(rows.size(), false);
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = -h0_inv(r, j);
    Ray ray{to_integer_row(col), Bits(rows.size())};
    for (std::size_t k = 0; k < d; ++k) {
      if (k != j) ray.zeros.set(static_cast<std::size_t>(basis[k]));
    }
    rays.push_back(std::move(ray));
  }
  for (int b : basis) processed[static_cast<std::size_t>(b)] = true;

  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    if (processed[ri]) continue;
    processed[ri] = true;
    const IntVec& row = rows[ri];

    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      value[k] = dot(row, rays[k].y);
      const int s = sgn(value[k]);
      if (s > 0) pos.push_back(k);
      else if (s < 0) neg.push_back(k);
    }
    if (pos.empty()) {
      for (auto& ray : rays) {
        if (sgn(dot(row, ray.y)) == 0) ray.zeros.set(ri);
      }
      continue;
    }
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (sgn(value[k]) > 0) continue;
      Ray keep = rays[k];
      if (sgn(value[k]) == 0) keep.zeros.set(ri);
      next.push_back(std::move(keep));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < d) continue;
        // Combinatorial adjacency: no third ray is tight on all of `common`.
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k != p && k != q && common.subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVec y(d);
        for (std::size_t c = 0; c < d; ++c) y[c] = value[p] * rays[q].y[c] - value[q] * rays[p].y[c];
        make_primitive(y);
        common.set(ri);
        next.push_back({std::move(y), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<Point> out;
  for (const auto& ray : rays) {
    if (sgn(ray.y[n]) <= 0) continue;  // recession direction
    Point x(n);
    for (std::size_t c = 0; c < n; ++c) {
      x[c] = Rational(ray.y[c], ray.y[n]);
      x[c].canonicalize();
    }
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polytope enumerate_vertices(const HRepresentation& h, const VertexEnumOptions& options) {
  check_shape(h);
  if (options.check_bounded && !check_bounded(h)) {
    throw Error(ErrorCode::UnboundedPolytope, "recession cone {d | A d <= 0} is nontrivial");
  }

  VertexMethod method = options.method;
  if (method == VertexMethod::Auto) {
    method = subset_count(h.facet_count(), h.dim()) <= options.auto_basis_limit ? VertexMethod::Basis
                                                                                  : VertexMethod::DoubleDescription;
  }
  std::vector<Point> points;
  switch (method) {
    case VertexMethod::BasisSerial: points = basis_vertices_serial(h, options.max_subsets); break;
    case VertexMethod::DoubleDescription: points = double_description_vertices(h); break;
    default: points = basis_vertices_parallel(h, options.max_subsets); break;
  }
  if (points.empty()) throw Error(ErrorCode::EmptyPolytope, "no feasible basic solution");

  const std::size_t n = h.dim();
  Mat v(n, points.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t r = 0; r < n; ++r) v(r, j) = points[j][r];
  return Polytope(std::move(v));
}

}  // namespace polyident
