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

#ifndef MRCANON_SEARCH_HPP_
#define MRCANON_SEARCH_HPP_

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"
#include "mrcanon/multi_refine.hpp"
#include "mrcanon/perm_group.hpp"
#include "mrcanon/refine.hpp"

namespace mrcanon {

struct SearchOptions {
  bool prune = true;           // orbit filtering and automorphism pruning of nodes
  bool trace_shortcut = true;  // abort refinements whose trace is already worse
};

struct SearchStats {
  std::uint64_t multirefine_calls = 0;
  std::size_t max_depth = 0;
  std::size_t generators_found = 0;
  double group_time = 0;
  std::size_t residual_count = 0;
};

struct CanonicalCandidate {
  OrderedPartition discrete_partition;
  Permutation labeling;
  std::vector<std::uint8_t> encoding;
};

// Byte encoding of a relabeled graph: n, m, cell sizes, then its edges in
// sorted order, all as 32-bit big-endian words.
inline std::vector<std::uint8_t> canonical_encoding(const ColoredGraph& g) {
  std::vector<std::uint32_t> words;
  words.reserve(3 + g.coloring().cell_count() + 2 * g.edge_count());
  words.push_back(static_cast<std::uint32_t>(g.order()));
  words.push_back(static_cast<std::uint32_t>(g.edge_count()));
  words.push_back(static_cast<std::uint32_t>(g.coloring().cell_count()));
  for (std::size_t s : g.coloring().cell_sizes()) words.push_back(static_cast<std::uint32_t>(s));
  for (const auto& [u, v] : g.edges()) {
    words.push_back(u);
    words.push_back(v);
  }
  return words_to_bytes(words);
}

// 128-bit digest of an encoding as 32 hex digits.
inline std::string encoding_hash(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t a = 0xcbf29ce484222325ull;
  std::uint64_t b = 0x84222325cbf29ce4ull ^ bytes.size();
  for (std::uint8_t x : bytes) {
    a = (a ^ x) * 0x100000001b3ull;
    b = (b + x + 1) * 0x9e3779b97f4a7c15ull;
    b ^= b >> 31;
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(a),
                static_cast<unsigned long long>(b));
  return buf;
}

namespace detail {

struct SearchNode {
  std::vector<std::uint32_t> seq;  // individualized vertices, 0-based
  OrderedPartition pi;
  RefinementTrace trace;
  std::vector<std::uint32_t> quotient;
  std::uint32_t target = 0;  // start of the target cell
  bool alive = true;
};

// Everything a second search needs to follow the first one level by level.
struct SearchProfile {
  std::vector<RefinementTrace> level_trace;
  std::vector<std::vector<std::uint32_t>> level_quotient;
  std::size_t final_level = 0;
  bool procedure_a = false;
  std::vector<OrderedPartition> probes;
  std::vector<std::uint64_t> probe_hashes;
};

class Searcher {
 public:
  enum class Mode { Canonical, Automorphisms, Follow };

  Searcher(const ColoredGraph& g, SearchOptions opt, Mode mode, const SearchProfile* follow = nullptr)
      : g_(&g), opt_(opt), mode_(mode), follow_(follow), group_(g.order()), engine_(g, group_) {
    engine_.set_use_orbits(opt.prune);
  }

  void run() {
    SearchNode root;
    root.pi = g_->coloring();
    {
      ++stats_.multirefine_calls;
      TraceRecorder rec(root.trace);
      auto report = engine_.run(root.pi, {}, rec, true);
      absorb(report);
      finish_node(root, report);
    }
    record_level(root);
    if (mode_ == Mode::Follow && !matches_profile(root, 0)) return;
    current_.clear();
    current_.push_back(std::move(root));
    current_index_.clear();
    current_index_[current_.front().seq] = 0;
    expanding_ = 0;
    attempt_from(current_.front(), 0);
    rebase();

    std::size_t level = 0;
    for (;;) {
      if (mode_ == Mode::Follow && level == follow_->final_level) {
        follow_final(level);
        break;
      }
      if (first_alive() == nullptr || first_alive()->pi.is_discrete()) break;
      if (expand_level(level)) break;
      prune_siblings(next_, next_index_, 0);
      ++level;
      current_.clear();
      current_index_.clear();
      for (SearchNode& node : next_) {
        if (!node.alive) continue;
        current_index_[node.seq] = current_.size();
        current_.push_back(std::move(node));
      }
      next_.clear();
      next_index_.clear();
      if (current_.empty()) break;
      record_level(current_.front());
    }
    stats_.max_depth = std::max(stats_.max_depth, level);
    if (mode_ != Mode::Follow && !procedure_a_done_) {
      profile_.final_level = level;
      if (const SearchNode* leaf = first_alive()) add_probe(*leaf);
    }
    stats_.group_time = group_seconds_ + engine_.group_seconds();
  }

  const SearchNode* first_alive() const {
    for (const SearchNode& node : current_) {
      if (node.alive) return &node;
    }
    return nullptr;
  }

  PermutationGroup take_group() { return std::move(group_); }
  const SearchStats& stats() const noexcept { return stats_; }
  std::vector<Permutation>& residuals() noexcept { return residuals_; }
  SearchProfile& profile() noexcept { return profile_; }
  std::optional<Permutation>& witness() noexcept { return witness_; }

 private:
  using SeqIndex = std::map<std::vector<std::uint32_t>, std::size_t>;

  struct ReferencePath {
    bool valid = false;
    std::size_t start = 0;
    std::vector<std::uint32_t> seq;
    RefinementTrace trace;
    std::vector<std::size_t> trace_len;
    std::vector<std::uint64_t> qhash;
  };

  struct StoredLeaf {
    OrderedPartition pi;
  };

  // --- node construction --------------------------------------------------

  void finish_node(SearchNode& node, const MultiRefiner::Report& report) {
    if (!node.pi.is_discrete()) {
      std::size_t best_cells = 0;
      bool first = true;
      for (const auto& [s, cells] : report.child_stats) {
        if (first || cells > best_cells) {
          node.target = s;
          best_cells = cells;
          first = false;
        }
      }
    }
    engine_.refiner().encode(node.pi, node.quotient);
  }

  bool make_child(const SearchNode& parent, std::uint32_t v, const RefinementTrace* ref, SearchNode& out) {
    ++stats_.multirefine_calls;
    out.seq = parent.seq;
    out.seq.push_back(v);
    out.pi = parent.pi;
    out.trace = parent.trace;
    out.quotient.clear();
    out.alive = true;
    TraceRecorder rec(out.trace, ref);
    if (!engine_.refiner().individualize_and_refine(out.pi, v, rec)) return false;
    auto report = engine_.run(out.pi, out.seq, rec, false);
    absorb(report);
    if (report.aborted || rec.finish() == TraceRecorder::Standing::Worse) return false;
    finish_node(out, report);
    return true;
  }

  // Negative when a is the smaller invariant.
  static int compare_invariant(const RefinementTrace& ta, const std::vector<std::uint32_t>& qa,
                               const RefinementTrace& tb, const std::vector<std::uint32_t>& qb) {
    switch (compare_traces(ta, tb)) {
      case TraceComparison::FirstSmaller:
      case TraceComparison::FirstIsPrefix:
        return -1;
      case TraceComparison::SecondSmaller:
      case TraceComparison::SecondIsPrefix:
        return 1;
      case TraceComparison::Equal:
        break;
    }
    if (qa == qb) return 0;
    return qa < qb ? -1 : 1;
  }

  void add_probe(const SearchNode& leaf) {
    profile_.probes.push_back(leaf.pi);
    profile_.probe_hashes.push_back(hash_words(leaf.quotient));
  }

  void record_level(const SearchNode& node) {
    profile_.level_trace.push_back(node.trace);
    profile_.level_quotient.push_back(node.quotient);
  }

  bool matches_profile(const SearchNode& node, std::size_t level) const {
    return level < follow_->level_trace.size() && node.trace == follow_->level_trace[level] &&
           node.quotient == follow_->level_quotient[level];
  }

  // --- group bookkeeping --------------------------------------------------

  void absorb(MultiRefiner::Report& report) {
    for (const Permutation& gamma : report.new_automorphisms) {
      ++stats_.generators_found;
      ++group_version_;
      on_new_generator(gamma);
    }
  }

  bool add_automorphism(const Permutation& gamma) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool added = group_.extend(gamma);
    group_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!added) return false;
    ++stats_.generators_found;
    ++group_version_;
    on_new_generator(gamma);
    return true;
  }

  std::vector<std::uint32_t> orbit_reps(const std::vector<std::uint32_t>& fixed) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = group_.stabilizer_orbit_reps0(fixed);
    group_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  // Puts the first attempt's vertices at the front of the base so that
  // stabilizers of its images are read off exactly.
  void rebase() {
    if (!reference_.valid || reference_.start != 0) return;
    const auto t0 = std::chrono::steady_clock::now();
    PermutationGroup rebuilt(g_->order(), reference_.seq);
    for (const Permutation& p : group_.generators()) rebuilt.extend(p);
    group_ = std::move(rebuilt);
    ++group_version_;
    group_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  // Two nodes of one level related by gamma have isomorphic subtrees; one
  // of them goes.
  void on_new_generator(const Permutation& gamma) {
    if (!opt_.prune) return;
    prune_with(gamma, current_, current_index_, expanding_ + 1);
    prune_with(gamma, next_, next_index_, 0);
  }

  static void prune_with(const Permutation& gamma, std::vector<SearchNode>& nodes, SeqIndex& index,
                         std::size_t first_prunable) {
    std::vector<std::uint32_t> img;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].alive) continue;
      img.clear();
      for (std::uint32_t v : nodes[i].seq) img.push_back(gamma.image0(v));
      auto it = index.find(img);
      if (it == index.end() || it->second == i) continue;
      const std::size_t victim = std::max(i, it->second);
      if (victim < first_prunable) continue;
      nodes[victim].alive = false;
      index.erase(nodes[victim].seq);
    }
  }

  // Siblings in one orbit of their parent's stabilizer are equivalent; only
  // the first is kept.
  void prune_siblings(std::vector<SearchNode>& nodes, SeqIndex& index, std::size_t first_prunable) {
    if (!opt_.prune || group_.is_trivial()) return;
    std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> reps;
    std::set<std::pair<std::vector<std::uint32_t>, std::uint32_t>> seen;
    std::vector<std::uint32_t> prefix;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].alive || nodes[i].seq.empty()) continue;
      prefix.assign(nodes[i].seq.begin(), nodes[i].seq.end() - 1);
      auto it = reps.find(prefix);
      if (it == reps.end()) it = reps.emplace(prefix, orbit_reps(prefix)).first;
      auto key = std::make_pair(prefix, it->second[nodes[i].seq.back()]);
      if (seen.insert(std::move(key)).second || i < first_prunable) continue;
      nodes[i].alive = false;
      index.erase(nodes[i].seq);
    }
  }

  // Returns true when the leaf matched a stored one.
  bool process_leaf(const SearchNode& leaf) {
    const std::uint64_t h = hash_words(leaf.quotient);
    auto& bucket = leaves_[h];
    for (const StoredLeaf& s : bucket) {
      Permutation gamma = leaf_map(s.pi, leaf.pi);
      if (!is_automorphism(*g_, gamma)) continue;
      add_automorphism(gamma);
      return true;
    }
    bucket.push_back({leaf.pi});
    return false;
  }

  // --- attempts -----------------------------------------------------------

  std::vector<std::uint32_t> candidates(const SearchNode& node) {
    const std::uint32_t s = node.target;
    std::vector<std::uint32_t> out(node.pi.order0().begin() + s,
                                   node.pi.order0().begin() + node.pi.cell_end_at0(s));
    std::sort(out.begin(), out.end());
    std::mt19937_64 rng(hash_words(node.seq) ^ 0x5bd1e995u);
    std::shuffle(out.begin(), out.end(), rng);
    if (opt_.prune) {
      const auto rep = orbit_reps(node.seq);
      std::erase_if(out, [&](std::uint32_t v) { return rep[v] != v; });
    }
    return out;
  }

  bool on_reference(const SearchNode& node, std::size_t level) const {
    const ReferencePath& r = reference_;
    if (!r.valid || level < r.start || level - r.start >= r.trace_len.size()) return false;
    const std::size_t len = r.trace_len[level - r.start];
    return node.trace.size() == len && std::equal(node.trace.begin(), node.trace.end(), r.trace.begin()) &&
           hash_words(node.quotient) == r.qhash[level - r.start];
  }

  bool covered(const SearchNode& node, std::size_t level) const {
    const ReferencePath& r = reference_;
    return r.valid && r.start <= level && r.seq.size() >= node.seq.size() &&
           std::equal(node.seq.begin(), node.seq.end(), r.seq.begin());
  }

  // One path from `node` down to a leaf. It follows the reference path's
  // invariants while it can; a node off the reference path starts a new one.
  void attempt_from(const SearchNode& node, std::size_t level) {
    if (node.pi.is_discrete()) {
      process_leaf(node);
      return;
    }
    if (covered(node, level)) return;
    bool guided = on_reference(node, level);
    const bool fresh = !guided;
    ReferencePath path;
    if (fresh) {
      path.start = level;
      path.trace_len.push_back(node.trace.size());
      path.qhash.push_back(hash_words(node.quotient));
    }
    SearchNode cur = node;
    std::size_t lv = level;
    RefinementTrace ref;
    while (!cur.pi.is_discrete()) {
      const std::vector<std::uint32_t> cand = candidates(cur);
      SearchNode child;
      bool found = false;
      const std::size_t k = lv + 1 - reference_.start;
      if (guided && k < reference_.trace_len.size()) {
        ref.assign(reference_.trace.begin(), reference_.trace.begin() + reference_.trace_len[k]);
        for (std::uint32_t u : cand) {
          if (make_child(cur, u, opt_.trace_shortcut ? &ref : nullptr, child) && child.trace == ref &&
              hash_words(child.quotient) == reference_.qhash[k]) {
            found = true;
            break;
          }
        }
      }
      if (!found) {
        guided = false;
        make_child(cur, cand.front(), nullptr, child);
      }
      ++lv;
      if (fresh) {
        path.trace_len.push_back(child.trace.size());
        path.qhash.push_back(hash_words(child.quotient));
      }
      cur = std::move(child);
    }
    process_leaf(cur);
    if (fresh) {
      path.valid = true;
      path.seq = std::move(cur.seq);
      path.trace = std::move(cur.trace);
      reference_ = std::move(path);
    }
  }

  // --- levels -------------------------------------------------------------

  void offer(SearchNode&& child, std::size_t level) {
    int c = -1;
    if (have_best_) c = compare_invariant(child.trace, child.quotient, best_trace_, best_quotient_);
    if (c > 0) return;
    if (mode_ == Mode::Follow && c != 0) return;
    if (c < 0) {
      best_trace_ = child.trace;
      best_quotient_ = child.quotient;
      have_best_ = true;
      next_.clear();
      next_index_.clear();
    }
    const std::size_t k = next_.size();
    next_index_[child.seq] = k;
    next_.push_back(std::move(child));
    attempt_from(next_[k], level);
  }

  // Children of current_[i] in ascending vertex order after orbit filtering.
  // With `bounded`, refinements abort once worse than the level's best.
  template <typename Sink>
  void for_each_child(std::size_t i, bool bounded, Sink&& sink) {
    const SearchNode& parent = current_[i];
    const std::uint32_t s = parent.target;
    std::vector<std::uint32_t> members(parent.pi.order0().begin() + s,
                                       parent.pi.order0().begin() + parent.pi.cell_end_at0(s));
    std::sort(members.begin(), members.end());
    std::vector<std::uint32_t> rep;
    std::uint64_t rep_version = UINT64_MAX;
    for (std::uint32_t v : members) {
      if (opt_.prune) {
        if (rep_version != group_version_) {
          rep = orbit_reps(current_[i].seq);
          rep_version = group_version_;
        }
        if (rep[v] != v) continue;
      }
      const bool use_ref = bounded && have_best_ && opt_.trace_shortcut;
      SearchNode child;
      if (!make_child(current_[i], v, use_ref ? &best_trace_ : nullptr, child)) continue;
      sink(std::move(child));
    }
  }

  // Expands every surviving node of `level`. Returns true when the search
  // is complete (Procedure A ran).
  bool expand_level(std::size_t level) {
    next_.clear();
    next_index_.clear();
    have_best_ = false;
    if (mode_ == Mode::Follow) {
      best_trace_ = follow_->level_trace[level + 1];
      best_quotient_ = follow_->level_quotient[level + 1];
      have_best_ = true;
    }
    bool first = true;
    std::uint64_t pruned_at = group_version_;
    for (std::size_t i = 0; i < current_.size(); ++i) {
      expanding_ = i;
      if (pruned_at != group_version_) {
        prune_siblings(current_, current_index_, i);
        pruned_at = group_version_;
      }
      if (!current_[i].alive) continue;
      if (first && mode_ == Mode::Automorphisms) {
        first = false;
        // Children are held back while all of them are leaves; the first
        // non-leaf releases them to the ordinary level expansion.
        std::vector<SearchNode> children;
        bool all_discrete = true;
        for_each_child(i, false, [&](SearchNode&& c) {
          if (all_discrete && c.pi.is_discrete()) {
            children.push_back(std::move(c));
            return;
          }
          if (all_discrete) {
            all_discrete = false;
            for (SearchNode& held : children) offer(std::move(held), level + 1);
            children.clear();
          }
          offer(std::move(c), level + 1);
        });
        if (all_discrete) {
          procedure_a(i, children, level);
          return true;
        }
        continue;
      }
      first = false;
      for_each_child(i, true, [&](SearchNode&& c) { offer(std::move(c), level + 1); });
    }
    return false;
  }

  // Step 1 stores every leaf below the first survivor; step 2 probes the
  // other survivors with a single leaf each.
  void procedure_a(std::size_t first, std::vector<SearchNode>& children, std::size_t level) {
    procedure_a_done_ = true;
    profile_.procedure_a = true;
    profile_.final_level = level;
    stats_.max_depth = level + 1;
    for (const SearchNode& c : children) {
      add_probe(c);
      process_leaf(c);
    }
    for (std::size_t i = first + 1; i < current_.size(); ++i) {
      expanding_ = i;
      if (!current_[i].alive) continue;
      const SearchNode& node = current_[i];
      const std::uint32_t s = node.target;
      const std::uint32_t v = *std::min_element(node.pi.order0().begin() + s,
                                                node.pi.order0().begin() + node.pi.cell_end_at0(s));
      SearchNode child;
      if (!make_child(current_[i], v, nullptr, child) || !child.pi.is_discrete()) continue;
      if (!process_leaf(child)) {
        residuals_.push_back(Permutation::from_images0(child.pi.labeling0()));
        ++stats_.residual_count;
      }
    }
  }

  // Follow mode: probe the survivors of the profiled final level against
  // the stored leaves of the first graph.
  void follow_final(std::size_t level) {
    stats_.max_depth = level;
    std::unordered_map<std::uint64_t, std::vector<const OrderedPartition*>> probes;
    for (std::size_t k = 0; k < follow_->probes.size(); ++k) {
      probes[follow_->probe_hashes[k]].push_back(&follow_->probes[k]);
    }
    auto check = [&](const SearchNode& leaf) {
      auto it = probes.find(hash_words(leaf.quotient));
      if (it == probes.end()) return false;
      for (const OrderedPartition* p : it->second) {
        Permutation phi = leaf_map(*p, leaf.pi);
        if (is_isomorphism(*first_graph_, *g_, phi)) {
          witness_ = std::move(phi);
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = 0; i < current_.size(); ++i) {
      expanding_ = i;
      if (!current_[i].alive) continue;
      const SearchNode& node = current_[i];
      if (!follow_->procedure_a) {
        if (node.pi.is_discrete() && check(node)) return;
        continue;
      }
      if (node.pi.is_discrete()) continue;
      const std::uint32_t s = node.target;
      const std::uint32_t v = *std::min_element(node.pi.order0().begin() + s,
                                                node.pi.order0().begin() + node.pi.cell_end_at0(s));
      SearchNode child;
      if (!make_child(current_[i], v, nullptr, child) || !child.pi.is_discrete()) continue;
      if (check(child)) return;
    }
  }

 public:
  void set_first_graph(const ColoredGraph& g1) { first_graph_ = &g1; }

 private:
  const ColoredGraph* g_;
  const ColoredGraph* first_graph_ = nullptr;
  SearchOptions opt_;
  Mode mode_;
  const SearchProfile* follow_;
  PermutationGroup group_;
  MultiRefiner engine_;
  SearchStats stats_;
  double group_seconds_ = 0;
  std::uint64_t group_version_ = 0;

  std::vector<SearchNode> current_;
  std::vector<SearchNode> next_;
  SeqIndex current_index_;
  SeqIndex next_index_;
  std::size_t expanding_ = 0;
  bool have_best_ = false;
  RefinementTrace best_trace_;
  std::vector<std::uint32_t> best_quotient_;

  ReferencePath reference_;
  std::unordered_map<std::uint64_t, std::vector<StoredLeaf>> leaves_;
  std::vector<Permutation> residuals_;
  SearchProfile profile_;
  bool procedure_a_done_ = false;
  std::optional<Permutation> witness_;
};

}  // namespace detail

struct CanonicalFormResult {
  ColoredGraph canonical;
  Permutation labeling;  // vertex -> canonical position
  PermutationGroup group;
  SearchStats stats;
  CanonicalCandidate candidate;
};

inline CanonicalFormResult canonical_form(const ColoredGraph& g, SearchOptions opt = {}) {
  detail::Searcher s(g, opt, detail::Searcher::Mode::Canonical);
  s.run();
  const detail::SearchNode* leaf = s.first_alive();
  if (leaf == nullptr || !leaf->pi.is_discrete()) throw IntegrityError("search ended without a leaf");
  CanonicalFormResult out;
  std::vector<Vertex> images(g.order());
  for (std::uint32_t v = 0; v < g.order(); ++v) images[v] = leaf->pi.cell_start0(v) + 1;
  out.labeling = Permutation(images);
  out.canonical = apply_permutation(g, out.labeling);
  out.candidate = CanonicalCandidate{leaf->pi, out.labeling, canonical_encoding(out.canonical)};
  out.stats = s.stats();
  out.group = s.take_group();
  return out;
}

struct AutomorphismGroupResult {
  PermutationGroup group;
  std::vector<Permutation> residuals;  // leaf labelings, vertex -> position
  SearchStats stats;
};

inline AutomorphismGroupResult automorphism_group(const ColoredGraph& g, SearchOptions opt = {}) {
  detail::Searcher s(g, opt, detail::Searcher::Mode::Automorphisms);
  s.run();
  AutomorphismGroupResult out;
  out.stats = s.stats();
  out.residuals = std::move(s.residuals());
  out.group = s.take_group();
  return out;
}

// An isomorphism g1 -> g2 (vertex of g1 to vertex of g2), or nullopt.
inline std::optional<Permutation> are_isomorphic(const ColoredGraph& g1, const ColoredGraph& g2,
                                                 SearchOptions opt = {}) {
  if (g1.order() != g2.order() || g1.edge_count() != g2.edge_count()) return std::nullopt;
  if (g1.coloring().cell_sizes() != g2.coloring().cell_sizes()) return std::nullopt;
  detail::Searcher first(g1, opt, detail::Searcher::Mode::Automorphisms);
  first.run();
  detail::Searcher second(g2, opt, detail::Searcher::Mode::Follow, &first.profile());
  second.set_first_graph(g1);
  second.run();
  auto& w = second.witness();
  if (w && !is_isomorphism(g1, g2, *w)) throw IntegrityError("isomorphism witness failed verification");
  return w;
}

}  // namespace mrcanon

#endif  // MRCANON_SEARCH_HPP_
