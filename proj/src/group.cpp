#include "polyident/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "polyident/error.hpp"

namespace polyident {

StabilizerChain::StabilizerChain(std::size_t m, std::span<const Permutation> generators) : m_(m) {
  for (const auto& g : generators) {
    if (g.size() != m) throw Error(ErrorCode::DimensionMismatch, "generator degree != group degree");
    if (!g.is_identity()) strong_.push_back(g);
  }
  auto ensure_moved = [&](const Permutation& g) {
    if (std::all_of(base_.begin(), base_.end(), [&](int b) { return g(b) == b; })) base_.push_back(g.first_moved());
  };
  for (const auto& g : strong_) ensure_moved(g);

  // Add residues of non-sifting Schreier generators until every level passes.
  bool complete = false;
  while (!complete) {
    rebuild_levels();
    complete = true;
    for (std::size_t level = base_.size(); level-- > 0 && complete;) {
      const auto gens = level_generators(level);
      for (int beta : orbit(level)) {
        for (const Permutation* s : gens) {
          const Permutation& u_beta = transversal(level, beta);
          const Permutation& u_image = transversal(level, (*s)(beta));
          Permutation schreier = u_image.inverse() * (*s) * u_beta;
          auto [residue, stop] = strip(std::move(schreier), level + 1);
          if (residue.is_identity()) continue;
          (void)stop;
          ensure_moved(residue);
          strong_.push_back(std::move(residue));
          complete = false;
          break;
        }
        if (!complete) break;
      }
    }
  }
}

std::vector<const Permutation*> StabilizerChain::level_generators(std::size_t level) const {
  std::vector<const Permutation*> out;
  for (const auto& s : strong_) {
    bool fixes = true;
    for (std::size_t i = 0; i < level && fixes; ++i) fixes = s(base_[i]) == base_[i];
    if (fixes) out.push_back(&s);
  }
  return out;
}

void StabilizerChain::rebuild_levels() {
  levels_.assign(base_.size(), Level{});
  for (std::size_t level = 0; level < base_.size(); ++level) {
    auto& reps = levels_[level].reps;
    reps.assign(m_, std::nullopt);
    const auto gens = level_generators(level);
    const int b = base_[level];
    reps[b] = Permutation::identity(m_);
    std::deque<int> queue{b};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const Permutation* s : gens) {
        const int y = (*s)(x);
        if (reps[y]) continue;
        reps[y] = (*s) * (*reps[x]);
        queue.push_back(y);
      }
    }
  }
}

std::vector<int> StabilizerChain::orbit(std::size_t level) const {
  std::vector<int> out;
  for (std::size_t x = 0; x < m_; ++x) {
    if (levels_[level].reps[x]) out.push_back(static_cast<int>(x));
  }
  return out;
}

const Permutation& StabilizerChain::transversal(std::size_t level, int point) const {
  const auto& rep = levels_.at(level).reps.at(static_cast<std::size_t>(point));
  if (!rep) throw Error(ErrorCode::InvalidConfig, "point outside basic orbit");
  return *rep;
}

std::pair<Permutation, std::size_t> StabilizerChain::strip(Permutation g, std::size_t start) const {
  for (std::size_t level = start; level < levels_.size(); ++level) {
    const int beta = g(base_[level]);
    const auto& rep = levels_[level].reps[static_cast<std::size_t>(beta)];
    if (!rep) return {std::move(g), level};
    g = rep->inverse() * g;
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.size() != m_) return false;
  return strip(g, 0).first.is_identity();
}

Integer StabilizerChain::order() const {
  Integer out = 1;
  for (std::size_t level = 0; level < levels_.size(); ++level) out *= static_cast<unsigned long>(orbit(level).size());
  return out;
}

namespace {

class Orbits {
 public:
  explicit Orbits(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void absorb(const Permutation& g) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      int a = find(static_cast<int>(i));
      int b = find(g[i]);
      if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

GeneratorSet sift_generators(const GeneratorSet& gens) {
  GeneratorSet kept{gens.m, {}};
  for (const auto& g : gens.generators) {
    if (g.is_identity()) continue;
    if (!kept.generators.empty() && StabilizerChain(gens.m, kept.generators).contains(g)) continue;
    kept.generators.push_back(g);
  }
  if (gens.m == 0 || kept.generators.size() <= gens.m - 1) return kept;

  // Bottom-up: at each level add representatives of the basic orbit until
  // the group generated so far moves the base point onto the whole orbit.
  const StabilizerChain chain(gens.m, kept.generators);
  GeneratorSet rebuilt{gens.m, {}};
  Orbits orbits(gens.m);
  for (std::size_t level = chain.depth(); level-- > 0;) {
    const int b = chain.base()[level];
    for (int beta : chain.orbit(level)) {
      if (orbits.find(beta) == orbits.find(b)) continue;
      const Permutation& u = chain.transversal(level, beta);
      orbits.absorb(u);
      rebuilt.generators.push_back(u);
    }
  }
  return rebuilt;
}

std::vector<Permutation> expand_group(const GeneratorSet& gens, std::size_t cap) {
  std::set<Permutation> seen;
  const auto id = Permutation::identity(gens.m);
  seen.insert(id);
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation x = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens.generators) {
      Permutation y = x * s;
      if (seen.insert(y).second) {
        if (seen.size() > cap) {
          throw Error(ErrorCode::CapExceeded, "group has more than " + std::to_string(cap) + " elements");
        }
        queue.push_back(std::move(y));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace polyident
