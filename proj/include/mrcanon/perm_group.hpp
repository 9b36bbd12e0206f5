// Copyright 2026 The mrcanon Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MRCANON_PERM_GROUP_HPP_
#define MRCANON_PERM_GROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"

namespace mrcanon {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller root so that roots are orbit minima.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

// Base and strong generating set built by deterministic incremental
// Schreier-Sims. Level i stores the generators fixing the first i base
// points, the orbit of the i-th base point under them and, for each orbit
// point b, the inverse coset representative (a permutation sending b back
// to the base point) as a flat row.
class PermutationGroup {
 public:
  explicit PermutationGroup(std::size_t n = 0) : n_(n) {}

  // Trivial group whose base starts with the given points (0-based).
  PermutationGroup(std::size_t n, std::span<const std::uint32_t> base_prefix) : n_(n) {
    for (std::uint32_t b : base_prefix) append_base_point0(b);
  }

  std::size_t degree() const noexcept { return n_; }
  std::size_t base_length() const noexcept { return levels_.size(); }
  bool is_trivial() const noexcept { return gens_.empty(); }

  std::vector<Vertex> base() const {
    std::vector<Vertex> out;
    for (const Level& l : levels_) out.push_back(l.point + 1);
    return out;
  }
  std::uint32_t base_point0(std::size_t i) const { return levels_[i].point; }

  const std::vector<Permutation>& generators() const noexcept { return gens_; }

  // Appends a base point; the stabilizer of the whole base is trivial, so
  // the new level starts with a trivial orbit.
  void append_base_point0(std::uint32_t b) {
    if (b >= n_) throw DomainError("base point out of range");
    for (const Level& l : levels_) {
      if (l.point == b) throw PreconditionError("base point " + std::to_string(b + 1) + " repeated");
    }
    Level l;
    l.point = b;
    l.where.assign(n_, -1);
    l.where[b] = 0;
    l.orbit.push_back(b);
    l.rows.resize(n_);
    std::iota(l.rows.begin(), l.rows.end(), 0u);
    l.checked.push_back(0);
    l.parent.push_back({0, kNoParent});
    levels_.push_back(std::move(l));
  }

  // Adds p to the group. Returns false when p was already a member.
  bool extend(const Permutation& p) {
    check_degree(p);
    auto [h, j] = strip(p.images0(), 0);
    if (is_identity(h)) return false;
    add_strong(std::move(h), j);
    complete(j);
    return true;
  }

  bool contains(const Permutation& p) const {
    check_degree(p);
    return is_identity(strip(p.images0(), 0).first);
  }

  BigInt order() const {
    BigInt out = 1;
    for (const Level& l : levels_) out *= static_cast<unsigned long long>(l.orbit.size());
    return out;
  }

  std::size_t orbit_size(std::size_t level) const { return levels_[level].orbit.size(); }

  // Orbit minimum of every point (0-based) under the whole group.
  std::vector<std::uint32_t> orbit_reps0() const {
    detail::UnionFind uf(n_);
    for (const Permutation& g : gens_) {
      for (std::uint32_t x = 0; x < n_; ++x) uf.unite(x, g.image0(x));
    }
    std::vector<std::uint32_t> rep(n_);
    for (std::uint32_t x = 0; x < n_; ++x) rep[x] = uf.find(x);
    return rep;
  }

  // Orbits met by `points` (1-based), each intersected with `points`,
  // sorted, ordered by their minimum.
  std::vector<std::vector<Vertex>> orbits(std::span<const Vertex> points) const {
    const std::vector<std::uint32_t> rep = orbit_reps0();
    std::vector<std::pair<std::uint32_t, Vertex>> keyed;
    for (Vertex v : points) {
      if (v < 1 || v > n_) throw DomainError("orbit point out of range");
      keyed.emplace_back(rep[v - 1], v);
    }
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (i == 0 || keyed[i].first != keyed[i - 1].first) out.emplace_back();
      out.back().push_back(keyed[i].second);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::vector<Vertex>> orbits() const {
    std::vector<Vertex> all(n_);
    std::iota(all.begin(), all.end(), 1u);
    return orbits(all);
  }

  // Pointwise stabilizer of `fixed` (1-based), via a rebuild whose base
  // starts with `fixed`.
  PermutationGroup stabilizer(std::span<const Vertex> fixed) const {
    std::vector<std::uint32_t> prefix;
    for (Vertex v : fixed) {
      if (v < 1 || v > n_) throw DomainError("stabilized point out of range");
      prefix.push_back(v - 1);
    }
    PermutationGroup rebuilt(n_, prefix);
    for (const Permutation& g : gens_) rebuilt.extend(g);
    PermutationGroup out(n_);
    if (prefix.size() < rebuilt.levels_.size()) {
      for (std::uint32_t gi : rebuilt.levels_[prefix.size()].gens) out.extend(rebuilt.gens_[gi]);
    }
    return out;
  }

  // Orbit minima under a subgroup of the pointwise stabilizer of `fixed`
  // (0-based). Exact when `fixed` is the image of a base prefix; otherwise
  // the subgroup generated by the strong generators fixing `fixed`.
  std::vector<std::uint32_t> stabilizer_orbit_reps0(std::span<const std::uint32_t> fixed) const {
    std::vector<std::uint32_t> rep(n_);
    std::iota(rep.begin(), rep.end(), 0u);
    if (gens_.empty()) return rep;
    const std::size_t k = fixed.size();
    if (std::optional<std::vector<std::uint32_t>> h = base_image_inverse(fixed)) {
      if (k >= levels_.size()) return rep;
      // Stab(fixed) = h^-1 G^(k) h.
      detail::UnionFind uf(n_);
      for (std::uint32_t gi : levels_[k].gens) {
        const Permutation& t = gens_[gi];
        for (std::uint32_t x = 0; x < n_; ++x) uf.unite(x, t.image0(x));
      }
      std::vector<std::uint32_t> best(n_, UINT32_MAX);
      for (std::uint32_t x = 0; x < n_; ++x) {
        const std::uint32_t r = uf.find((*h)[x]);
        best[r] = std::min(best[r], x);
      }
      for (std::uint32_t x = 0; x < n_; ++x) rep[x] = best[uf.find((*h)[x])];
      return rep;
    }
    detail::UnionFind uf(n_);
    for (const Permutation& g : gens_) {
      bool fixes = true;
      for (std::uint32_t f : fixed) {
        if (g.image0(f) != f) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      for (std::uint32_t x = 0; x < n_; ++x) uf.unite(x, g.image0(x));
    }
    for (std::uint32_t x = 0; x < n_; ++x) rep[x] = uf.find(x);
    return rep;
  }

  // An element h with h(images[i]) = base[i] for every i, if one exists.
  std::optional<std::vector<std::uint32_t>> base_image_inverse(
      std::span<const std::uint32_t> images) const {
    std::vector<std::uint32_t> h(n_);
    std::iota(h.begin(), h.end(), 0u);
    const std::size_t k = std::min(images.size(), levels_.size());
    for (std::size_t i = 0; i < k; ++i) {
      const Level& l = levels_[i];
      const std::int32_t at = l.where[h[images[i]]];
      if (at < 0) return std::nullopt;
      if (at == 0) continue;
      const std::uint32_t* row = l.rows.data() + static_cast<std::size_t>(at) * n_;
      for (std::uint32_t& x : h) x = row[x];
    }
    return h;
  }

 private:
  static constexpr std::uint32_t kNoParent = UINT32_MAX;

  struct Level {
    std::uint32_t point = 0;
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> where;
    std::vector<std::uint32_t> rows;
    std::vector<std::uint32_t> checked;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parent;  // (orbit index, generator)
  };

  void check_degree(const Permutation& p) const {
    if (p.degree() != n_) throw DomainError("permutation degree does not match group degree");
  }

  static bool is_identity(const std::vector<std::uint32_t>& h) {
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] != i) return false;
    }
    return true;
  }

  std::pair<std::vector<std::uint32_t>, std::size_t> strip(std::vector<std::uint32_t> h,
                                                           std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      const std::int32_t at = l.where[h[l.point]];
      if (at < 0) return {std::move(h), i};
      if (at == 0) continue;
      const std::uint32_t* row = l.rows.data() + static_cast<std::size_t>(at) * n_;
      for (std::uint32_t& x : h) x = row[x];
    }
    return {std::move(h), levels_.size()};
  }

  void add_strong(std::vector<std::uint32_t> h, std::size_t j) {
    if (j == levels_.size()) {
      std::uint32_t moved = 0;
      while (h[moved] == moved) ++moved;
      append_base_point0(moved);
    }
    const auto gi = static_cast<std::uint32_t>(gens_.size());
    gens_.push_back(Permutation::from_images0(std::move(h)));
    gen_inv_.push_back(gens_.back().inverse());
    for (std::size_t i = 0; i <= j; ++i) {
      levels_[i].gens.push_back(gi);
      grow_orbit(levels_[i], levels_[i].gens.size() - 1);
    }
  }

  void grow_orbit(Level& l, std::size_t first_new) {
    const std::size_t old = l.orbit.size();
    for (std::size_t k = 0; k < old; ++k) {
      for (std::size_t g = first_new; g < l.gens.size(); ++g) try_add(l, k, l.gens[g]);
    }
    for (std::size_t k = old; k < l.orbit.size(); ++k) {
      for (std::uint32_t gi : l.gens) try_add(l, k, gi);
    }
  }

  void try_add(Level& l, std::size_t k, std::uint32_t gi) {
    const std::uint32_t c = gens_[gi].image0(l.orbit[k]);
    if (l.where[c] >= 0) return;
    l.where[c] = static_cast<std::int32_t>(l.orbit.size());
    l.orbit.push_back(c);
    l.checked.push_back(0);
    l.parent.emplace_back(static_cast<std::uint32_t>(k), gi);
    // row_c = row_k * g^-1
    const std::size_t base = l.rows.size();
    l.rows.resize(base + n_);
    const std::uint32_t* row_k = l.rows.data() + k * n_;
    const Permutation& ginv = gen_inv_[gi];
    for (std::uint32_t x = 0; x < n_; ++x) l.rows[base + x] = row_k[ginv.image0(x)];
  }

  void complete(std::size_t top) {
    std::vector<std::uint32_t> u(n_);
    std::vector<std::uint32_t> sg(n_);
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(top);
    if (i >= static_cast<std::ptrdiff_t>(levels_.size())) i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      for (std::size_t k = 0; k < levels_[i].orbit.size() && !restarted; ++k) {
        while (levels_[i].checked[k] < levels_[i].gens.size()) {
          Level& l = levels_[i];
          const std::uint32_t gi = l.gens[l.checked[k]++];
          const std::uint32_t c = gens_[gi].image0(l.orbit[k]);
          const auto kc = static_cast<std::uint32_t>(l.where[c]);
          if (l.parent[kc].first == k && l.parent[kc].second == gi) continue;
          // sg = row_kc * g * row_k^-1
          const std::uint32_t* row_k = l.rows.data() + static_cast<std::size_t>(k) * n_;
          const std::uint32_t* row_kc = l.rows.data() + static_cast<std::size_t>(kc) * n_;
          for (std::uint32_t x = 0; x < n_; ++x) u[row_k[x]] = x;
          const Permutation& g = gens_[gi];
          for (std::uint32_t x = 0; x < n_; ++x) sg[x] = row_kc[g.image0(u[x])];
          auto [h, j] = strip(sg, static_cast<std::size_t>(i) + 1);
          if (is_identity(h)) continue;
          add_strong(std::move(h), j);
          i = static_cast<std::ptrdiff_t>(j);
          restarted = true;
          break;
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t n_ = 0;
  std::vector<Level> levels_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> gen_inv_;
};

inline PermutationGroup group_new(std::size_t n) { return PermutationGroup(n); }
inline bool group_extend(PermutationGroup& g, const Permutation& p) { return g.extend(p); }
inline bool membership(const PermutationGroup& g, const Permutation& p) { return g.contains(p); }
inline std::vector<std::vector<Vertex>> orbits(const PermutationGroup& g,
                                               std::span<const Vertex> points) {
  return g.orbits(points);
}
inline PermutationGroup stabilizer(const PermutationGroup& g, std::span<const Vertex> fixed) {
  return g.stabilizer(fixed);
}
inline BigInt order(const PermutationGroup& g) { return g.order(); }

}  // namespace mrcanon

#endif  // MRCANON_PERM_GROUP_HPP_
