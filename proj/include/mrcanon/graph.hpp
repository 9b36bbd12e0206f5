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

#ifndef MRCANON_GRAPH_HPP_
#define MRCANON_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrcanon/errors.hpp"

namespace mrcanon {

// Vertices are 1-based in every public interface. Internally the library
// works on 0-based indices; functions and members that take or return
// 0-based values carry a trailing `0` in their name.
using Vertex = std::uint32_t;
using Position = std::uint32_t;

// ---------------------------------------------------------------------------
// Permutation

class Permutation {
 public:
  Permutation() = default;

  // `images[v-1]` is the image of vertex v. Throws DomainError unless the
  // sequence is a bijection on 1..n.
  explicit Permutation(const std::vector<Vertex>& images) {
    images_.resize(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const Vertex w = images[i];
      if (w < 1 || w > images.size() || seen[w - 1]) {
        throw DomainError("permutation images are not a bijection on 1.." +
                          std::to_string(images.size()));
      }
      seen[w - 1] = true;
      images_[i] = w - 1;
    }
  }

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.images_.resize(n);
    std::iota(p.images_.begin(), p.images_.end(), 0u);
    return p;
  }

  // Caller guarantees a bijection on 0..n-1.
  static Permutation from_images0(std::vector<std::uint32_t> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }

  Vertex operator()(Vertex v) const {
    if (v < 1 || v > images_.size()) {
      throw DomainError("vertex " + std::to_string(v) + " out of range");
    }
    return images_[v - 1] + 1;
  }

  std::uint32_t image0(std::uint32_t v) const noexcept { return images_[v]; }
  const std::vector<std::uint32_t>& images0() const noexcept { return images_; }

  std::vector<Vertex> images() const {
    std::vector<Vertex> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
    return out;
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      p.images_[images_[i]] = static_cast<std::uint32_t>(i);
    }
    return p;
  }

  // Function composition: (a * b)(x) = a(b(x)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw DomainError("permutation degree mismatch");
    Permutation p;
    p.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) p.images_[i] = a.images_[b.images_[i]];
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

  // Disjoint-cycle notation, e.g. "(1 2)(5 6)"; the identity prints as "()".
  std::string to_cycle_string() const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (done[start] || images_[start] == start) continue;
      out += '(';
      std::size_t v = start;
      bool first = true;
      while (!done[v]) {
        done[v] = true;
        if (!first) out += ' ';
        out += std::to_string(v + 1);
        first = false;
        v = images_[v];
      }
      out += ')';
    }
    return out.empty() ? std::string("()") : out;
  }

  // Inverse of to_cycle_string. Points not mentioned are fixed.
  static Permutation parse_cycles(std::string_view text, std::size_t n) {
    Permutation p = identity(n);
    std::vector<bool> used(n, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw DomainError("expected '(' in cycle notation");
      ++i;
      std::vector<std::uint32_t> cycle;
      for (;;) {
        skip_ws();
        if (i >= text.size()) throw DomainError("unterminated cycle");
        if (text[i] == ')') {
          ++i;
          break;
        }
        std::size_t value = 0;
        bool any = false;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          value = value * 10 + static_cast<std::size_t>(text[i] - '0');
          ++i;
          any = true;
        }
        if (!any) throw DomainError("malformed cycle notation");
        if (value < 1 || value > n) throw DomainError("cycle point out of range");
        if (used[value - 1]) throw DomainError("point repeated in cycle notation");
        used[value - 1] = true;
        cycle.push_back(static_cast<std::uint32_t>(value - 1));
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        p.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
      skip_ws();
    }
    return p;
  }

 private:
  std::vector<std::uint32_t> images_;
};

// ---------------------------------------------------------------------------
// OrderedPartition
//
// Flat vertex array plus cell boundaries. `lab_` lists the vertices in
// position order, `cell_of_[v]` is the array index at which v's cell starts
// and `cell_end_[s]` (meaningful only at cell starts) is one past its end.
// The position of v in the ordered-partition sense is cell_of_[v] + 1.

class OrderedPartition {
 public:
  OrderedPartition() = default;

  static OrderedPartition unit(std::size_t n) {
    OrderedPartition p;
    p.lab_.resize(n);
    std::iota(p.lab_.begin(), p.lab_.end(), 0u);
    p.inv_ = p.lab_;
    p.cell_of_.assign(n, 0);
    p.cell_end_.assign(n, 0);
    if (n > 0) p.cell_end_[0] = static_cast<std::uint32_t>(n);
    p.cells_ = n > 0 ? 1 : 0;
    return p;
  }

  // Cells given as 1-based vertex lists; throws DomainError unless they are
  // non-empty, pairwise disjoint and cover 1..n.
  OrderedPartition(std::size_t n, const std::vector<std::vector<Vertex>>& cells) {
    lab_.reserve(n);
    cell_of_.assign(n, 0);
    cell_end_.assign(n, 0);
    inv_.assign(n, 0);
    std::vector<bool> seen(n, false);
    for (const auto& cell : cells) {
      if (cell.empty()) throw DomainError("ordered partition has an empty cell");
      const auto start = static_cast<std::uint32_t>(lab_.size());
      for (Vertex v : cell) {
        if (v < 1 || v > n) throw DomainError("partition vertex out of range");
        if (seen[v - 1]) throw DomainError("partition cells are not disjoint");
        seen[v - 1] = true;
        inv_[v - 1] = static_cast<std::uint32_t>(lab_.size());
        cell_of_[v - 1] = start;
        lab_.push_back(v - 1);
      }
      cell_end_[start] = static_cast<std::uint32_t>(lab_.size());
    }
    if (lab_.size() != n) throw DomainError("partition cells do not cover 1..n");
    cells_ = cells.size();
  }

  std::size_t size() const noexcept { return lab_.size(); }
  std::size_t cell_count() const noexcept { return cells_; }
  bool is_discrete() const noexcept { return cells_ == lab_.size(); }

  Position position(Vertex v) const {
    check_vertex(v);
    return cell_of_[v - 1] + 1;
  }

  // 1-based index of the cell containing v.
  std::size_t index(Vertex v) const {
    check_vertex(v);
    const std::uint32_t target = cell_of_[v - 1];
    std::size_t k = 1;
    for (std::uint32_t s = 0; s < target; s = cell_end_[s]) ++k;
    return k;
  }

  // Cells in order, each listed in ascending vertex order (1-based).
  std::vector<std::vector<Vertex>> cells() const {
    std::vector<std::vector<Vertex>> out;
    out.reserve(cells_);
    for (std::uint32_t s = 0; s < lab_.size(); s = cell_end_[s]) {
      std::vector<Vertex> cell;
      for (std::uint32_t i = s; i < cell_end_[s]; ++i) cell.push_back(lab_[i] + 1);
      std::sort(cell.begin(), cell.end());
      out.push_back(std::move(cell));
    }
    return out;
  }

  std::vector<std::size_t> cell_sizes() const {
    std::vector<std::size_t> out;
    for (std::uint32_t s = 0; s < lab_.size(); s = cell_end_[s]) out.push_back(cell_end_[s] - s);
    return out;
  }

  // Replaces v's cell W by ({v}, W - {v}). Throws PreconditionError when v is
  // already a singleton.
  OrderedPartition individualize(Vertex v) const {
    check_vertex(v);
    OrderedPartition p = *this;
    p.individualize0(v - 1);
    return p;
  }

  // Same cell boundaries and same cell contents; equivalent to comparing
  // the cells after sorting each one.
  friend bool operator==(const OrderedPartition& a, const OrderedPartition& b) {
    return a.cell_of_ == b.cell_of_;
  }

  // --- low-level 0-based interface used by the refinement code -----------

  std::uint32_t vertex_at0(std::uint32_t i) const noexcept { return lab_[i]; }
  std::uint32_t index_of0(std::uint32_t v) const noexcept { return inv_[v]; }
  std::uint32_t cell_start0(std::uint32_t v) const noexcept { return cell_of_[v]; }
  std::uint32_t cell_end_at0(std::uint32_t start) const noexcept { return cell_end_[start]; }
  std::uint32_t cell_size_at0(std::uint32_t start) const noexcept { return cell_end_[start] - start; }
  std::span<const std::uint32_t> order0() const noexcept { return lab_; }

  // Swaps two array slots of the same cell.
  void swap_slots0(std::uint32_t i, std::uint32_t j) noexcept {
    const std::uint32_t a = lab_[i];
    const std::uint32_t b = lab_[j];
    lab_[i] = b;
    lab_[j] = a;
    inv_[b] = i;
    inv_[a] = j;
  }

  // Splits the cell starting at `start` so that a new cell begins at
  // `split`; costs O(end - split).
  void split_cell0(std::uint32_t start, std::uint32_t split) noexcept {
    const std::uint32_t end = cell_end_[start];
    cell_end_[start] = split;
    cell_end_[split] = end;
    for (std::uint32_t i = split; i < end; ++i) cell_of_[lab_[i]] = split;
    ++cells_;
  }

  // Moves v to the front of its cell and splits it off. Returns the start of
  // the new singleton cell.
  std::uint32_t individualize0(std::uint32_t v) {
    const std::uint32_t start = cell_of_[v];
    if (cell_end_[start] - start < 2) {
      throw PreconditionError("vertex " + std::to_string(v + 1) +
                              " is already in a singleton cell");
    }
    swap_slots0(start, inv_[v]);
    split_cell0(start, start + 1);
    return start;
  }

  // Labeling of a discrete partition: vertex -> 0-based position.
  std::vector<std::uint32_t> labeling0() const {
    std::vector<std::uint32_t> out(lab_.size());
    for (std::size_t v = 0; v < lab_.size(); ++v) out[v] = cell_of_[v];
    return out;
  }

 private:
  void check_vertex(Vertex v) const {
    if (v < 1 || v > lab_.size()) {
      throw DomainError("vertex " + std::to_string(v) + " out of range 1.." +
                        std::to_string(lab_.size()));
    }
  }

  std::vector<std::uint32_t> lab_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<std::uint32_t> cell_end_;
  std::size_t cells_ = 0;
};

inline Position position(Vertex v, const OrderedPartition& pi) { return pi.position(v); }
inline std::size_t index(Vertex v, const OrderedPartition& pi) { return pi.index(v); }
inline OrderedPartition individualize(const OrderedPartition& pi, Vertex v) {
  return pi.individualize(v);
}

// pi1 is finer than (or equal to) pi2 when no vertex has a smaller position
// in pi1 than in pi2.
inline bool is_finer(const OrderedPartition& pi1, const OrderedPartition& pi2) {
  if (pi1.size() != pi2.size()) throw DomainError("partitions over different vertex sets");
  for (std::uint32_t v = 0; v < pi1.size(); ++v) {
    if (pi1.cell_start0(v) < pi2.cell_start0(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ColoredGraph

class ColoredGraph {
 public:
  using Edge = std::pair<Vertex, Vertex>;

  ColoredGraph() : adj_(std::make_shared<Adjacency>()) {}

  ColoredGraph(std::size_t n, const std::vector<Edge>& edges)
      : ColoredGraph(n, edges, OrderedPartition::unit(n)) {}

  ColoredGraph(std::size_t n, const std::vector<Edge>& edges, OrderedPartition coloring)
      : coloring_(std::move(coloring)) {
    if (coloring_.size() != n) throw DomainError("coloring does not cover 1..n");
    auto adj = std::make_shared<Adjacency>();
    std::vector<std::uint32_t> degree(n, 0);
    for (const auto& [u, v] : edges) {
      if (u < 1 || u > n || v < 1 || v > n) throw DomainError("edge endpoint out of range");
      if (u == v) throw DomainError("loop at vertex " + std::to_string(u));
      ++degree[u - 1];
      ++degree[v - 1];
    }
    adj->offsets.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) adj->offsets[v + 1] = adj->offsets[v] + degree[v];
    adj->targets.resize(adj->offsets[n]);
    std::vector<std::uint32_t> fill(adj->offsets.begin(), adj->offsets.end() - 1);
    for (const auto& [u, v] : edges) {
      adj->targets[fill[u - 1]++] = v - 1;
      adj->targets[fill[v - 1]++] = u - 1;
    }
    for (std::size_t v = 0; v < n; ++v) {
      auto first = adj->targets.begin() + adj->offsets[v];
      auto last = adj->targets.begin() + adj->offsets[v + 1];
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last) {
        throw DomainError("duplicate edge at vertex " + std::to_string(v + 1));
      }
    }
    adj->edge_count = edges.size();
    adj_ = std::move(adj);
  }

  std::size_t order() const noexcept { return coloring_.size(); }
  std::size_t edge_count() const noexcept { return adj_->edge_count; }
  const OrderedPartition& coloring() const noexcept { return coloring_; }

  // Same edges, different coloring; the adjacency structure is shared.
  ColoredGraph with_coloring(OrderedPartition coloring) const {
    if (coloring.size() != order()) throw DomainError("coloring does not cover 1..n");
    ColoredGraph g;
    g.adj_ = adj_;
    g.coloring_ = std::move(coloring);
    return g;
  }

  std::span<const std::uint32_t> neighbors0(std::uint32_t v) const noexcept {
    return {adj_->targets.data() + adj_->offsets[v], adj_->offsets[v + 1] - adj_->offsets[v]};
  }
  std::uint32_t degree0(std::uint32_t v) const noexcept {
    return adj_->offsets[v + 1] - adj_->offsets[v];
  }

  bool adjacent(Vertex u, Vertex v) const {
    if (u < 1 || u > order() || v < 1 || v > order()) throw DomainError("vertex out of range");
    const auto nb = neighbors0(u - 1);
    return std::binary_search(nb.begin(), nb.end(), v - 1);
  }

  // Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::uint32_t u = 0; u < order(); ++u) {
      for (std::uint32_t v : neighbors0(u)) {
        if (u < v) out.emplace_back(u + 1, v + 1);
      }
    }
    return out;
  }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
    if (!(a.coloring_ == b.coloring_)) return false;
    return a.adj_ == b.adj_ || (a.adj_->offsets == b.adj_->offsets &&
                                a.adj_->targets == b.adj_->targets);
  }

 private:
  struct Adjacency {
    std::vector<std::uint32_t> offsets{0};
    std::vector<std::uint32_t> targets;
    std::size_t edge_count = 0;
  };

  std::shared_ptr<const Adjacency> adj_;
  OrderedPartition coloring_;
};

// Image of g under p: edges mapped pointwise, each cell mapped setwise with
// the cell order kept.
inline ColoredGraph apply_permutation(const ColoredGraph& g, const Permutation& p) {
  if (p.degree() != g.order()) throw DomainError("permutation degree does not match graph");
  std::vector<ColoredGraph::Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(p(u), p(v));
  std::vector<std::vector<Vertex>> cells = g.coloring().cells();
  for (auto& cell : cells) {
    for (Vertex& v : cell) v = p(v);
  }
  return ColoredGraph(g.order(), edges, OrderedPartition(g.order(), cells));
}

// True when phi (vertex of g1 -> vertex of g2) maps edges onto edges and the
// k-th cell of g1's coloring onto the k-th cell of g2's.
inline bool is_isomorphism(const ColoredGraph& g1, const ColoredGraph& g2,
                           const Permutation& phi) {
  const std::size_t n = g1.order();
  if (g2.order() != n || phi.degree() != n || g1.edge_count() != g2.edge_count()) return false;
  const OrderedPartition& c1 = g1.coloring();
  const OrderedPartition& c2 = g2.coloring();
  if (c1.cell_count() != c2.cell_count()) return false;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t w = phi.image0(v);
    if (c1.cell_start0(v) != c2.cell_start0(w)) return false;
    if (c1.cell_size_at0(c1.cell_start0(v)) != c2.cell_size_at0(c2.cell_start0(w))) return false;
  }
  std::vector<std::uint8_t> mark(n, 0);
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t w = phi.image0(v);
    if (g1.degree0(v) != g2.degree0(w)) return false;
    for (std::uint32_t x : g2.neighbors0(w)) mark[x] = 1;
    bool ok = true;
    for (std::uint32_t u : g1.neighbors0(v)) {
      if (!mark[phi.image0(u)]) {
        ok = false;
        break;
      }
    }
    for (std::uint32_t x : g2.neighbors0(w)) mark[x] = 0;
    if (!ok) return false;
  }
  return true;
}

inline bool is_automorphism(const ColoredGraph& g, const Permutation& p) {
  return is_isomorphism(g, g, p);
}

}  // namespace mrcanon

#endif  // MRCANON_GRAPH_HPP_
