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

#ifndef MRCANON_REFINE_HPP_
#define MRCANON_REFINE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"

namespace mrcanon {

// New cell positions in the order the splits created them.
using RefinementTrace = std::vector<Position>;

enum class TraceComparison { Equal, FirstSmaller, SecondSmaller, FirstIsPrefix, SecondIsPrefix };

inline TraceComparison compare_traces(const RefinementTrace& t1, const RefinementTrace& t2) {
  const std::size_t k = std::min(t1.size(), t2.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (t1[i] < t2[i]) return TraceComparison::FirstSmaller;
    if (t1[i] > t2[i]) return TraceComparison::SecondSmaller;
  }
  if (t1.size() == t2.size()) return TraceComparison::Equal;
  return t1.size() < t2.size() ? TraceComparison::FirstIsPrefix : TraceComparison::SecondIsPrefix;
}

// Appends trace elements and compares them on the fly with a reference.
// Order is plain lexicographic, so a proper prefix is the smaller trace.
// Once the emerging trace is known to be larger, push() returns false.
class TraceRecorder {
 public:
  enum class Standing { Tied, Better, Worse };

  explicit TraceRecorder(RefinementTrace& out, const RefinementTrace* reference = nullptr)
      : out_(out), ref_(reference) {}

  bool push(Position p) {
    out_.push_back(p);
    if (ref_ == nullptr || standing_ != Standing::Tied) return standing_ != Standing::Worse;
    const std::size_t i = out_.size() - 1;
    if (i >= ref_->size() || p > (*ref_)[i]) {
      standing_ = Standing::Worse;
      abort_index_ = i;
      return false;
    }
    if (p < (*ref_)[i]) standing_ = Standing::Better;
    return true;
  }

  bool aborted() const noexcept { return standing_ == Standing::Worse; }
  std::size_t abort_index() const noexcept { return abort_index_; }

  // Final standing once no more elements will be pushed.
  Standing finish() const noexcept {
    if (ref_ != nullptr && standing_ == Standing::Tied && out_.size() < ref_->size()) {
      return Standing::Better;
    }
    return standing_;
  }

  RefinementTrace& trace() noexcept { return out_; }

 private:
  RefinementTrace& out_;
  const RefinementTrace* ref_;
  Standing standing_ = Standing::Tied;
  std::size_t abort_index_ = 0;
};

// Equitable refinement engine with reusable scratch space. One instance per
// thread; the graph must outlive it.
class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g)
      : g_(&g),
        count_(g.order(), 0),
        cell_touched_(g.order(), 0),
        in_queue_(g.order(), 0),
        moved_(g.order(), 0) {}

  const ColoredGraph& graph() const noexcept { return *g_; }

  // Refines with every current cell as an initial splitter. Returns false
  // if the recorder aborted; pi is then left in an unspecified state.
  bool refine(OrderedPartition& pi, TraceRecorder& rec) {
    seeds_.clear();
    for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) seeds_.push_back(s);
    return run(pi, rec);
  }

  // Refines after splitting cells; only the listed cell starts are seeded.
  bool refine_from(OrderedPartition& pi, std::span<const std::uint32_t> seeds,
                   TraceRecorder& rec) {
    seeds_.assign(seeds.begin(), seeds.end());
    return run(pi, rec);
  }

  // Individualizes v0 (0-based) in an equitable pi and refines.
  bool individualize_and_refine(OrderedPartition& pi, std::uint32_t v0, TraceRecorder& rec) {
    const std::uint32_t start = pi.individualize0(v0);
    if (!rec.push(start + 2)) return false;
    seeds_.assign(1, start);
    return run(pi, rec);
  }

  // Quotient encoding of an equitable partition as 32-bit words:
  // [cells, sizes..., (p, q, multiplicity) sorted by (p, q)].
  void encode(const OrderedPartition& pi, std::vector<std::uint32_t>& out) {
    out.clear();
    out.push_back(static_cast<std::uint32_t>(pi.cell_count()));
    for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) {
      out.push_back(pi.cell_size_at0(s));
    }
    for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) {
      const std::uint32_t v = pi.vertex_at0(s);
      const std::uint32_t size = pi.cell_size_at0(s);
      touched_cells_.clear();
      for (std::uint32_t u : g_->neighbors0(v)) {
        const std::uint32_t t = pi.cell_start0(u);
        if (t < s) continue;
        if (count_[t]++ == 0) touched_cells_.push_back(t);
      }
      std::sort(touched_cells_.begin(), touched_cells_.end());
      for (std::uint32_t t : touched_cells_) {
        const std::uint64_t mult =
            t == s ? std::uint64_t{size} * count_[t] / 2 : std::uint64_t{size} * count_[t];
        out.push_back(s + 1);
        out.push_back(t + 1);
        out.push_back(static_cast<std::uint32_t>(mult));
        count_[t] = 0;
      }
    }
  }

 private:
  bool run(OrderedPartition& pi, TraceRecorder& rec) {
    queue_.clear();
    for (std::uint32_t s : seeds_) {
      if (!in_queue_[s]) {
        in_queue_[s] = 1;
        queue_.push_back(s);
      }
    }
    std::size_t head = 0;
    bool ok = true;
    while (head < queue_.size()) {
      const std::uint32_t s = queue_[head++];
      in_queue_[s] = 0;
      if (!ok || pi.is_discrete()) continue;
      ok = split_by(pi, s, rec);
    }
    return ok;
  }

  bool split_by(OrderedPartition& pi, std::uint32_t s, TraceRecorder& rec) {
    splitter_.assign(pi.order0().begin() + s, pi.order0().begin() + pi.cell_end_at0(s));
    touched_verts_.clear();
    touched_cells_.clear();
    for (std::uint32_t v : splitter_) {
      for (std::uint32_t u : g_->neighbors0(v)) {
        const std::uint32_t c = pi.cell_start0(u);
        if (pi.cell_size_at0(c) == 1) continue;
        if (count_[u]++ == 0) {
          touched_verts_.push_back(u);
          if (cell_touched_[c]++ == 0) touched_cells_.push_back(c);
        }
      }
    }
    // Gather each touched cell's touched vertices at its tail.
    for (std::uint32_t u : touched_verts_) {
      const std::uint32_t c = pi.cell_start0(u);
      const std::uint32_t slot = pi.cell_end_at0(c) - 1 - moved_[c]++;
      pi.swap_slots0(pi.index_of0(u), slot);
    }
    std::sort(touched_cells_.begin(), touched_cells_.end());
    bool ok = true;
    for (std::uint32_t c : touched_cells_) {
      if (ok) ok = split_cell(pi, c, rec);
      cell_touched_[c] = 0;
      moved_[c] = 0;
    }
    for (std::uint32_t u : touched_verts_) count_[u] = 0;
    return ok;
  }

  bool split_cell(OrderedPartition& pi, std::uint32_t c, TraceRecorder& rec) {
    const std::uint32_t end = pi.cell_end_at0(c);
    const std::uint32_t touched = cell_touched_[c];
    const std::uint32_t tail = end - touched;
    const auto& lab = pi.order0();
    std::vector<std::uint32_t>& block = block_;
    block.assign(lab.begin() + tail, lab.begin() + end);
    std::sort(block.begin(), block.end(), [&](std::uint32_t a, std::uint32_t b) {
      return count_[a] != count_[b] ? count_[a] < count_[b] : a < b;
    });
    for (std::uint32_t i = 0; i < touched; ++i) {
      pi.swap_slots0(pi.index_of0(block[i]), tail + i);
    }
    bounds_.clear();
    if (tail > c) bounds_.push_back(tail);
    for (std::uint32_t i = 1; i < touched; ++i) {
      if (count_[block[i]] != count_[block[i - 1]]) bounds_.push_back(tail + i);
    }
    if (bounds_.empty()) return true;
    for (auto it = bounds_.rbegin(); it != bounds_.rend(); ++it) pi.split_cell0(c, *it);

    bool ok = true;
    for (std::uint32_t b : bounds_) {
      if (!rec.push(b + 1)) {
        ok = false;
        break;
      }
    }
    if (!ok) return false;

    if (in_queue_[c]) {
      for (std::uint32_t b : bounds_) enqueue(b);
      return true;
    }
    std::uint32_t largest = c;
    std::uint32_t largest_size = pi.cell_size_at0(c);
    for (std::uint32_t b : bounds_) {
      if (pi.cell_size_at0(b) > largest_size) {
        largest = b;
        largest_size = pi.cell_size_at0(b);
      }
    }
    if (largest != c) enqueue(c);
    for (std::uint32_t b : bounds_) {
      if (b != largest) enqueue(b);
    }
    return true;
  }

  void enqueue(std::uint32_t s) {
    if (!in_queue_[s]) {
      in_queue_[s] = 1;
      queue_.push_back(s);
    }
  }

  const ColoredGraph* g_;
  std::vector<std::uint32_t> count_;
  std::vector<std::uint32_t> cell_touched_;
  std::vector<std::uint8_t> in_queue_;
  std::vector<std::uint32_t> moved_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> seeds_;
  std::vector<std::uint32_t> splitter_;
  std::vector<std::uint32_t> touched_verts_;
  std::vector<std::uint32_t> touched_cells_;
  std::vector<std::uint32_t> block_;
  std::vector<std::uint32_t> bounds_;
};

struct RefineResult {
  ColoredGraph refined;
  RefinementTrace trace;
};

inline RefineResult refine(const ColoredGraph& g) {
  Refiner r(g);
  OrderedPartition pi = g.coloring();
  RefinementTrace trace;
  TraceRecorder rec(trace);
  r.refine(pi, rec);
  return {g.with_coloring(std::move(pi)), std::move(trace)};
}

struct BudgetedRefineResult {
  enum class Outcome { Completed, CompletedBetter, AbortedWorse };
  Outcome outcome = Outcome::Completed;
  ColoredGraph graph;  // meaningful unless aborted
  RefinementTrace trace;
  std::size_t abort_index = 0;  // 0-based trace index of the first larger element
};

inline BudgetedRefineResult refine_with_budget(const ColoredGraph& g,
                                               const RefinementTrace& reference) {
  Refiner r(g);
  OrderedPartition pi = g.coloring();
  BudgetedRefineResult out;
  TraceRecorder rec(out.trace, &reference);
  if (!r.refine(pi, rec)) {
    out.outcome = BudgetedRefineResult::Outcome::AbortedWorse;
    out.abort_index = rec.abort_index();
    return out;
  }
  out.outcome = rec.finish() == TraceRecorder::Standing::Better
                    ? BudgetedRefineResult::Outcome::CompletedBetter
                    : BudgetedRefineResult::Outcome::Completed;
  out.graph = g.with_coloring(std::move(pi));
  return out;
}

inline bool is_equitable(const ColoredGraph& g) {
  const OrderedPartition& pi = g.coloring();
  std::vector<std::uint32_t> profile;
  std::vector<std::uint32_t> first;
  for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) {
    for (std::uint32_t i = s; i < pi.cell_end_at0(s); ++i) {
      profile.clear();
      for (std::uint32_t u : g.neighbors0(pi.vertex_at0(i))) profile.push_back(pi.cell_start0(u));
      std::sort(profile.begin(), profile.end());
      if (i == s) {
        first = profile;
      } else if (profile != first) {
        return false;
      }
    }
  }
  return true;
}

struct QuotientEdge {
  Position p = 0;  // p <= q
  Position q = 0;
  std::uint64_t multiplicity = 0;
  friend bool operator==(const QuotientEdge&, const QuotientEdge&) = default;
};

struct QuotientGraph {
  std::vector<Position> vertices;        // ascending
  std::vector<std::size_t> cell_sizes;   // parallel to vertices
  std::vector<QuotientEdge> edges;       // sorted by (p, q)
  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;
};

inline QuotientGraph quotient(const ColoredGraph& g) {
  if (!is_equitable(g)) throw PreconditionError("quotient requires an equitable coloring");
  const OrderedPartition& pi = g.coloring();
  QuotientGraph q;
  for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) {
    q.vertices.push_back(s + 1);
    q.cell_sizes.push_back(pi.cell_size_at0(s));
  }
  std::vector<std::pair<Position, Position>> keys;
  keys.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) {
    Position a = pi.position(u);
    Position b = pi.position(v);
    if (a > b) std::swap(a, b);
    keys.emplace_back(a, b);
  }
  std::sort(keys.begin(), keys.end());
  for (const auto& k : keys) {
    if (!q.edges.empty() && q.edges.back().p == k.first && q.edges.back().q == k.second) {
      ++q.edges.back().multiplicity;
    } else {
      q.edges.push_back({k.first, k.second, 1});
    }
  }
  return q;
}

// 4-byte big-endian words: cell count, cell sizes, then (p, q, multiplicity)
// triples. Byte order makes lexicographic byte comparison agree with the
// comparison of the word sequences.
inline std::vector<std::uint8_t> encode_quotient(const QuotientGraph& q) {
  std::vector<std::uint8_t> out;
  auto put = [&out](std::uint64_t w) {
    if (w > 0xffffffffu) throw CapacityError("quotient value exceeds 32 bits");
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(w >> shift));
  };
  put(q.vertices.size());
  for (std::size_t s : q.cell_sizes) put(s);
  for (const QuotientEdge& e : q.edges) {
    put(e.p);
    put(e.q);
    put(e.multiplicity);
  }
  return out;
}

inline std::vector<std::uint8_t> words_to_bytes(std::span<const std::uint32_t> words) {
  std::vector<std::uint8_t> out;
  out.reserve(words.size() * 4);
  for (std::uint32_t w : words) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(w >> shift));
  }
  return out;
}

}  // namespace mrcanon

#endif  // MRCANON_REFINE_HPP_
