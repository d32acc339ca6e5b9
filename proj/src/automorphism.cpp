#include "polyident/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

#include "polyident/error.hpp"

namespace polyident {

OrderedPartition OrderedPartition::unit(std::size_t m) {
  OrderedPartition p;
  if (m == 0) return p;
  p.cells.emplace_back(m);
  std::iota(p.cells[0].begin(), p.cells[0].end(), 0);
  return p;
}

OrderedPartition OrderedPartition::by_node_color(const ColoredGraph& g) {
  std::vector<int> order(g.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.node_color[a] < g.node_color[b]; });
  OrderedPartition p;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || g.node_color[order[k]] != g.node_color[order[k - 1]]) p.cells.emplace_back();
    p.cells.back().push_back(order[k]);
  }
  return p;
}

bool OrderedPartition::is_discrete() const {
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.size() == 1; });
}

std::size_t OrderedPartition::node_count() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.size();
  return n;
}

std::vector<std::size_t> OrderedPartition::cell_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(cells.size());
  for (const auto& c : cells) sizes.push_back(c.size());
  return sizes;
}

void OrderedPartition::check(std::size_t m) const {
  std::vector<char> seen(m, 0);
  for (const auto& c : cells) {
    if (c.empty()) throw Error(ErrorCode::InvalidConfig, "empty cell");
    for (int v : c) {
      if (v < 0 || static_cast<std::size_t>(v) >= m || seen[v]) {
        throw Error(ErrorCode::InvalidConfig, "cells are not a partition of the nodes");
      }
      seen[v] = 1;
    }
  }
  if (node_count() != m) throw Error(ErrorCode::InvalidConfig, "cells do not cover every node");
}

OrderedPartition individualize(const OrderedPartition& p, std::size_t cell_index, int node) {
  OrderedPartition out;
  out.cells.reserve(p.cells.size() + 1);
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (i != cell_index) {
      out.cells.push_back(p.cells[i]);
      continue;
    }
    std::vector<int> rest;
    for (int v : p.cells[i]) {
      if (v != node) rest.push_back(v);
    }
    if (rest.size() == p.cells[i].size()) throw Error(ErrorCode::InvalidConfig, "node not in target cell");
    out.cells.push_back({node});
    if (!rest.empty()) out.cells.push_back(std::move(rest));
  }
  return out;
}

OrderedPartition refine_partition(const ColoredGraph& g, const OrderedPartition& input) {
  input.check(g.m);
  OrderedPartition p = input;
  std::vector<int> cell_of(g.m);

  using Signature = std::pair<ColorId, std::vector<std::pair<ColorId, int>>>;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < p.cells.size(); ++c)
      for (int v : p.cells[c]) cell_of[v] = static_cast<int>(c);

    OrderedPartition next;
    next.cells.reserve(g.m);
    for (const auto& cell : p.cells) {
      if (cell.size() == 1) {
        next.cells.push_back(cell);
        continue;
      }
      std::vector<std::pair<Signature, int>> keyed;
      keyed.reserve(cell.size());
      for (int v : cell) {
        Signature s;
        s.first = g.node_color[v];
        s.second.reserve(g.m - 1);
        for (std::size_t u = 0; u < g.m; ++u) {
          if (static_cast<int>(u) == v) continue;
          s.second.emplace_back(g.edge(static_cast<std::size_t>(v), u), cell_of[u]);
        }
        std::sort(s.second.begin(), s.second.end());
        keyed.emplace_back(std::move(s), v);
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t k = 0; k < keyed.size(); ++k) {
        if (k == 0 || keyed[k].first != keyed[k - 1].first) {
          if (k != 0) changed = true;
          next.cells.emplace_back();
        }
        next.cells.back().push_back(keyed[k].second);
      }
    }
    p = std::move(next);
  }
  return p;
}

namespace {

std::size_t first_nonsingleton(const OrderedPartition& p) {
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (p.cells[i].size() > 1) return i;
  }
  return p.cells.size();
}

std::vector<int> labeling(const OrderedPartition& p) {
  std::vector<int> out;
  out.reserve(p.cells.size());
  for (const auto& c : p.cells) out.push_back(c.front());
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

class Search {
 public:
  Search(const ColoredGraph& g, const SearchOptions& options, SearchStats& stats)
      : g_(g), options_(options), stats_(stats) {}

  GeneratorSet run() {
    GeneratorSet out;
    out.m = g_.m;
    if (g_.m == 0) return out;

    // First path: always individualize the smallest node of the target cell.
    struct Level {
      OrderedPartition part;
      std::size_t target;
      int chosen;
    };
    std::vector<Level> path;
    OrderedPartition part = refine_partition(g_, OrderedPartition::by_node_color(g_));
    tick();
    invariants_.push_back(part.cell_sizes());
    while (!part.is_discrete()) {
      const std::size_t target = first_nonsingleton(part);
      const int chosen = part.cells[target].front();
      path.push_back({part, target, chosen});
      part = refine_partition(g_, individualize(part, target, chosen));
      tick();
      invariants_.push_back(part.cell_sizes());
    }
    first_leaf_ = labeling(part);
    stats_.first_path_depth = path.size();
    ++stats_.leaves;

    UnionFind orbits(g_.m);
    std::vector<std::vector<Permutation>> per_level(path.size());
    for (std::size_t k = path.size(); k-- > 0;) {
      const Level& level = path[k];
      std::vector<int> failed;
      for (int w : level.part.cells[level.target]) {
        if (w == level.chosen) continue;
        if (orbits.find(w) == orbits.find(level.chosen)) continue;
        // A node in the orbit of a node already shown unreachable is unreachable too.
        if (std::any_of(failed.begin(), failed.end(), [&](int f) { return orbits.find(f) == orbits.find(w); })) {
          continue;
        }
        auto found = explore(refine_partition(g_, individualize(level.part, level.target, w)), k + 1);
        if (!found) {
          failed.push_back(w);
          continue;
        }
        for (std::size_t i = 0; i < g_.m; ++i) orbits.unite(static_cast<int>(i), (*found)[i]);
        per_level[k].push_back(std::move(*found));
      }
    }
    // Reported root level first, like a strong generating set listed along the base.
    for (auto& level : per_level) std::move(level.begin(), level.end(), std::back_inserter(out.generators));
    return out;
  }

 private:
  void tick() {
    if (++stats_.nodes > options_.node_budget) {
      throw Error(ErrorCode::SearchBudgetExceeded,
                  "search tree exceeded " + std::to_string(options_.node_budget) + " nodes");
    }
  }

  // Depth-first search below `part` for a leaf whose labeling, composed with
  // the first leaf's, is an automorphism.
  std::optional<Permutation> explore(const OrderedPartition& part, std::size_t depth) {
    tick();
    if (depth >= invariants_.size() || part.cell_sizes() != invariants_[depth]) return std::nullopt;
    if (part.is_discrete()) {
      ++stats_.leaves;
      const auto leaf = labeling(part);
      std::vector<int> image(g_.m);
      for (std::size_t i = 0; i < g_.m; ++i) image[first_leaf_[i]] = leaf[i];
      Permutation gamma(std::move(image));
      if (preserves_colors(g_, gamma)) return gamma;
      return std::nullopt;
    }
    // Any child order is complete; trying the last member first makes the
    // generator found for a transitive cell a cyclic shift where one exists.
    const std::size_t target = first_nonsingleton(part);
    const auto& cell = part.cells[target];
    for (auto it = cell.rbegin(); it != cell.rend(); ++it) {
      if (auto found = explore(refine_partition(g_, individualize(part, target, *it)), depth + 1)) return found;
    }
    return std::nullopt;
  }

  const ColoredGraph& g_;
  const SearchOptions& options_;
  SearchStats& stats_;
  std::vector<std::vector<std::size_t>> invariants_;
  std::vector<int> first_leaf_;
};

void require_small(const ColoredGraph& g, std::size_t cap) {
  if (g.m > cap) {
    throw Error(ErrorCode::TooLarge, std::to_string(g.m) + " nodes exceed the brute-force cap of " +
                                         std::to_string(cap));
  }
}

// Lexicographic sweep over permutations whose first entries equal `prefix`.
void sweep(const ColoredGraph& g, std::vector<int> prefix, std::vector<Permutation>& out) {
  std::vector<int> image = std::move(prefix);
  std::vector<char> used(g.m, 0);
  for (int x : image) used[x] = 1;
  const auto fixed = static_cast<std::ptrdiff_t>(image.size());
  for (std::size_t v = 0; v < g.m; ++v) {
    if (!used[v]) image.push_back(static_cast<int>(v));
  }
  do {
    bool ok = true;
    for (std::size_t i = 0; i < g.m && ok; ++i) {
      const auto pi = static_cast<std::size_t>(image[i]);
      for (std::size_t j = i; j < g.m && ok; ++j) {
        ok = g.edge(pi, static_cast<std::size_t>(image[j])) == g.edge(i, j);
      }
    }
    if (ok) out.emplace_back(image);
  } while (std::next_permutation(image.begin() + fixed, image.end()));
}

}  // namespace

GeneratorSet automorphism_generators(const ColoredGraph& g, const SearchOptions& options, SearchStats* stats) {
  SearchStats local;
  Search search(g, options, local);
  auto out = search.run();
  if (stats) *stats = local;
  return out;
}

std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g, std::size_t cap) {
  require_small(g, cap);
  std::vector<Permutation> out;
  if (g.m == 0) return {Permutation::identity(0)};
  sweep(g, {}, out);
  return out;
}

std::vector<Permutation> brute_force_automorphisms_parallel(const ColoredGraph& g, std::size_t cap) {
  require_small(g, cap);
  if (g.m < 3) return brute_force_automorphisms(g, cap);
  // One task per ordered pair of leading images; concatenating the task
  // results in pair order reproduces the serial lexicographic order.
  const auto m = static_cast<int>(g.m);
  const int tasks = m * m;
  std::vector<std::vector<Permutation>> parts(static_cast<std::size_t>(tasks));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < tasks; ++t) {
    const int a = t / m;
    const int b = t % m;
    if (a == b) continue;
    sweep(g, {a, b}, parts[static_cast<std::size_t>(t)]);
  }
  std::vector<Permutation> out;
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

}  // namespace polyident
