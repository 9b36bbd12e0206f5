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

#ifndef MRCANON_MULTI_REFINE_HPP_
#define MRCANON_MULTI_REFINE_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"
#include "mrcanon/perm_group.hpp"
#include "mrcanon/refine.hpp"

namespace mrcanon {

namespace detail {

inline std::uint64_t hash_words(std::span<const std::uint32_t> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ words.size();
  for (std::uint32_t w : words) {
    h ^= w;
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

// Vertex at position k of `from` goes to the vertex at position k of `to`.
inline Permutation leaf_map(const OrderedPartition& from, const OrderedPartition& to) {
  std::vector<std::uint32_t> img(from.size());
  for (std::uint32_t k = 0; k < from.size(); ++k) img[from.vertex_at0(k)] = to.vertex_at0(k);
  return Permutation::from_images0(std::move(img));
}

}  // namespace detail

// Multi-refinement engine bound to one graph and one automorphism group.
// The group is extended in place with every verified automorphism found
// between discrete children.
class MultiRefiner {
 public:
  struct Report {
    bool aborted = false;
    bool shortcut = false;
    // (cell start, cell count of a representative's child) for every
    // non-trivial cell of the final partition.
    std::vector<std::pair<std::uint32_t, std::size_t>> child_stats;
    std::vector<Permutation> new_automorphisms;
    std::size_t children = 0;
  };

  MultiRefiner(const ColoredGraph& g, PermutationGroup& group) : g_(&g), group_(&group), refiner_(g) {}

  Refiner& refiner() noexcept { return refiner_; }
  PermutationGroup& group() noexcept { return *group_; }

  // With orbits off every cell member is individualized.
  void set_use_orbits(bool on) noexcept { use_orbits_ = on; }
  double group_seconds() const noexcept { return group_seconds_; }

  // Multi-refines pi in place. `fixed` lists the individualized vertices
  // (0-based) whose pointwise stabilizer supplies the orbit filter. When
  // `refine_first` is false, pi must already be equitable.
  Report run(OrderedPartition& pi, std::span<const std::uint32_t> fixed, TraceRecorder& rec,
             bool refine_first = true) {
    Report report;
    if (refine_first && !refiner_.refine(pi, rec)) {
      report.aborted = true;
      return report;
    }
    for (;;) {
      if (pi.is_discrete()) return report;
      const std::vector<std::uint32_t> reps = orbit_reps(fixed);
      report.child_stats.clear();
      bool split = false;
      for (std::uint32_t s = 0; s < pi.size() && !split; s = pi.cell_end_at0(s)) {
        if (pi.cell_size_at0(s) < 2) continue;
        const Scan scan = scan_cell(pi, s, reps, report);
        if (scan.discrete) {
          take_shortcut(pi, report, rec);
          return report;
        }
        report.child_stats.emplace_back(s, scan.first_child_cells);
        if (scan.classes > 1) {
          if (!split_cell(pi, s, reps, rec)) {
            report.aborted = true;
            return report;
          }
          split = true;
        }
      }
      if (!split) return report;
    }
  }

 private:
  struct Child {
    std::uint32_t vertex = 0;
    std::uint32_t cls = 0;
    bool encoded = false;
    OrderedPartition partition;  // kept only for discrete children
    RefinementTrace trace;
  };

  struct Scan {
    bool discrete = false;
    std::size_t classes = 0;
    std::size_t first_child_cells = 0;
  };

  std::vector<std::uint32_t> orbit_reps(std::span<const std::uint32_t> fixed) {
    if (!use_orbits_) {
      std::vector<std::uint32_t> rep(g_->order());
      std::iota(rep.begin(), rep.end(), 0u);
      return rep;
    }
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = group_->stabilizer_orbit_reps0(fixed);
    group_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  Scan scan_cell(const OrderedPartition& pi, std::uint32_t s, const std::vector<std::uint32_t>& reps,
                 Report& report) {
    Scan scan;
    children_.clear();
    class_words_.clear();
    class_index_.clear();
    const std::uint32_t end = pi.cell_end_at0(s);
    std::size_t rep_count = 0;
    for (std::uint32_t i = s; i < end; ++i) rep_count += reps[pi.vertex_at0(i)] == pi.vertex_at0(i);
    members_.assign(pi.order0().begin() + s, pi.order0().begin() + end);
    std::sort(members_.begin(), members_.end());
    for (std::uint32_t w : members_) {
      if (reps[w] != w) continue;
      Child c;
      c.vertex = w;
      OrderedPartition child = pi;
      TraceRecorder local(c.trace);
      refiner_.individualize_and_refine(child, w, local);
      ++report.children;
      if (children_.empty()) scan.first_child_cells = child.cell_count();
      if (child.is_discrete()) scan.discrete = true;
      if (rep_count > 1) {
        refiner_.encode(child, words_);
        c.cls = class_of(words_);
        c.encoded = true;
      }
      if (child.is_discrete()) c.partition = std::move(child);
      children_.push_back(std::move(c));
    }
    scan.classes = rep_count > 1 ? class_words_.size() : 1;
    return scan;
  }

  std::uint32_t class_of(const std::vector<std::uint32_t>& words) {
    const std::uint64_t h = detail::hash_words(words);
    auto& bucket = class_index_[h];
    for (std::uint32_t c : bucket) {
      if (class_words_[c] == words) return c;
    }
    const auto c = static_cast<std::uint32_t>(class_words_.size());
    class_words_.push_back(words);
    bucket.push_back(c);
    return c;
  }

  void take_shortcut(OrderedPartition& pi, Report& report, TraceRecorder& rec) {
    report.shortcut = true;
    report.child_stats.clear();
    // Discrete children only; encode any that were skipped by the single
    // representative fast path.
    std::vector<Child*> leaves;
    for (Child& c : children_) {
      if (c.partition.size() == 0) continue;
      if (!c.encoded) {
        refiner_.encode(c.partition, words_);
        c.cls = class_of(words_);
      }
      leaves.push_back(&c);
    }
    Child* best = leaves.front();
    for (Child* c : leaves) {
      if (class_words_[c->cls] < class_words_[best->cls]) best = c;
    }
    std::vector<Child*> first_of_class(class_words_.size(), nullptr);
    for (Child* c : leaves) {
      Child*& first = first_of_class[c->cls];
      if (first == nullptr) {
        first = c;
        continue;
      }
      Permutation gamma = detail::leaf_map(first->partition, c->partition);
      if (!is_automorphism(*g_, gamma)) {
        throw IntegrityError("equal discrete quotients produced a non-automorphism");
      }
      const auto t0 = std::chrono::steady_clock::now();
      const bool added = group_->extend(gamma);
      group_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (added) report.new_automorphisms.push_back(std::move(gamma));
    }
    for (Position p : best->trace) {
      if (!rec.push(p)) {
        report.aborted = true;
        return;
      }
    }
    pi = std::move(best->partition);
  }

  bool split_cell(OrderedPartition& pi, std::uint32_t s, const std::vector<std::uint32_t>& reps,
                  TraceRecorder& rec) {
    // Rank classes by their quotient encoding.
    std::vector<std::uint32_t> by_words(class_words_.size());
    for (std::uint32_t c = 0; c < by_words.size(); ++c) by_words[c] = c;
    std::sort(by_words.begin(), by_words.end(),
              [&](std::uint32_t a, std::uint32_t b) { return class_words_[a] < class_words_[b]; });
    std::vector<std::uint32_t> rank(class_words_.size());
    for (std::uint32_t r = 0; r < by_words.size(); ++r) rank[by_words[r]] = r;
    std::unordered_map<std::uint32_t, std::uint32_t> rank_of_rep;
    for (const Child& c : children_) rank_of_rep[c.vertex] = rank[c.cls];

    const std::uint32_t end = pi.cell_end_at0(s);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> keyed;
    for (std::uint32_t i = s; i < end; ++i) {
      const std::uint32_t v = pi.vertex_at0(i);
      keyed.emplace_back(rank_of_rep.at(reps[v]), v);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::uint32_t i = 0; i < keyed.size(); ++i) {
      pi.swap_slots0(pi.index_of0(keyed[i].second), s + i);
    }
    std::vector<std::uint32_t> bounds;
    for (std::uint32_t i = 1; i < keyed.size(); ++i) {
      if (keyed[i].first != keyed[i - 1].first) bounds.push_back(s + i);
    }
    for (auto it = bounds.rbegin(); it != bounds.rend(); ++it) pi.split_cell0(s, *it);
    for (std::uint32_t b : bounds) {
      if (!rec.push(b + 1)) return false;
    }
    std::vector<std::uint32_t> seeds{s};
    seeds.insert(seeds.end(), bounds.begin(), bounds.end());
    return refiner_.refine_from(pi, seeds, rec);
  }

  const ColoredGraph* g_;
  PermutationGroup* group_;
  Refiner refiner_;
  std::vector<Child> children_;
  std::vector<std::vector<std::uint32_t>> class_words_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> class_index_;
  std::vector<std::uint32_t> members_;
  std::vector<std::uint32_t> words_;
  bool use_orbits_ = true;
  double group_seconds_ = 0;
};

struct DiscreteShortcut {
  OrderedPartition partition;
  std::vector<std::uint8_t> encoding;
};

struct MultiRefineResult {
  ColoredGraph graph;
  RefinementTrace trace;
  std::optional<Position> target_cell;
  std::vector<std::pair<Position, std::size_t>> child_stats;
  std::optional<DiscreteShortcut> discrete_shortcut;
  std::vector<Permutation> new_automorphisms;
};

// Leftmost non-trivial cell whose representative child has the most cells.
inline std::optional<Position> select_target_cell(const MultiRefineResult& result) {
  if (result.graph.coloring().is_discrete()) return std::nullopt;
  std::optional<Position> best;
  std::size_t best_cells = 0;
  for (const auto& [pos, cells] : result.child_stats) {
    if (!best || cells > best_cells) {
      best = pos;
      best_cells = cells;
    }
  }
  return best;
}

inline MultiRefineResult multi_refine(const ColoredGraph& g, PermutationGroup& group) {
  if (group.degree() != g.order()) throw DomainError("group degree does not match graph");
#ifndef NDEBUG
  for (const Permutation& p : group.generators()) {
    if (!is_automorphism(g, p)) throw IntegrityError("group generator is not an automorphism");
  }
#endif
  MultiRefiner engine(g, group);
  OrderedPartition pi = g.coloring();
  MultiRefineResult out;
  TraceRecorder rec(out.trace);
  auto report = engine.run(pi, {}, rec);
  for (const auto& [s, cells] : report.child_stats) out.child_stats.emplace_back(s + 1, cells);
  out.new_automorphisms = std::move(report.new_automorphisms);
  if (report.shortcut) {
    std::vector<std::uint32_t> words;
    engine.refiner().encode(pi, words);
    out.discrete_shortcut = DiscreteShortcut{pi, words_to_bytes(words)};
  }
  out.graph = g.with_coloring(std::move(pi));
  out.target_cell = select_target_cell(out);
  return out;
}

// Test oracle: every pair of cellmates has equal child quotients.
inline bool respects_individualizations(const ColoredGraph& g) {
  if (!is_equitable(g)) throw PreconditionError("respects_individualizations requires an equitable coloring");
  const OrderedPartition& pi = g.coloring();
  Refiner r(g);
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> words;
  for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s)) {
    if (pi.cell_size_at0(s) < 2) continue;
    for (std::uint32_t i = s; i < pi.cell_end_at0(s); ++i) {
      OrderedPartition child = pi;
      RefinementTrace t;
      TraceRecorder rec(t);
      r.individualize_and_refine(child, pi.vertex_at0(i), rec);
      r.encode(child, words);
      if (i == s) {
        first = words;
      } else if (words != first) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace mrcanon

#endif  // MRCANON_MULTI_REFINE_HPP_
