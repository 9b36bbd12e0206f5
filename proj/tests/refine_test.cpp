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

#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mrcanon/graph.hpp"
#include "mrcanon/refine.hpp"
#include "oracle.hpp"

namespace mrcanon {
namespace {

OrderedPartition Pi(std::size_t n, std::vector<std::vector<Vertex>> cells) {
  return OrderedPartition(n, cells);
}

std::vector<ColoredGraph::Edge> FanEdges() {
  return {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 6}};
}

ColoredGraph Fan(std::vector<std::vector<Vertex>> cells) {
  return ColoredGraph(6, FanEdges(), Pi(6, std::move(cells)));
}

ColoredGraph Complete(std::size_t n) {
  std::vector<ColoredGraph::Edge> e;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return ColoredGraph(n, e);
}

// Ten-cycle with five chords, coloured as in the usual textbook picture of
// an equitable partition.
ColoredGraph DecagonWithChords() {
  std::vector<ColoredGraph::Edge> e;
  for (Vertex v = 1; v <= 10; ++v) e.emplace_back(v, v % 10 + 1);
  for (auto c : std::vector<ColoredGraph::Edge>{{2, 6}, {1, 8}, {3, 10}, {7, 10}, {5, 8}}) e.push_back(c);
  return ColoredGraph(10, e, Pi(10, {{9}, {4}, {1, 7}, {2, 6}, {3, 5}, {8, 10}}));
}

TEST(Refine, IndividualizedFan) {
  const auto r = refine(Fan({{4}, {5, 6}, {1, 2, 3}}));
  EXPECT_EQ(r.refined.coloring(), Pi(6, {{4}, {5, 6}, {2, 3}, {1}}));
  EXPECT_EQ(r.trace, (RefinementTrace{6}));
}

TEST(Refine, UnitFanIsDegreePartition) {
  const auto r = refine(ColoredGraph(6, FanEdges()));
  EXPECT_EQ(r.refined.coloring(), Pi(6, {{4, 5, 6}, {1, 2, 3}}));
  EXPECT_EQ(r.trace, (RefinementTrace{4}));
}

TEST(Refine, CompleteGraphUnchanged) {
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const auto r = refine(Complete(n));
    EXPECT_EQ(r.refined.coloring(), OrderedPartition::unit(n));
    EXPECT_TRUE(r.trace.empty());
  }
}

TEST(Refine, KeepsEdges) {
  const auto g = Fan({{4}, {5, 6}, {1, 2, 3}});
  EXPECT_EQ(refine(g).refined.edges(), g.edges());
}

TEST(IsEquitable, Examples) {
  EXPECT_TRUE(is_equitable(DecagonWithChords()));
  EXPECT_TRUE(is_equitable(Fan({{1}, {2}, {3}, {4}, {5}, {6}})));
  EXPECT_FALSE(is_equitable(Fan({{4, 5, 6}, {1, 2}, {3}})));
  EXPECT_FALSE(is_equitable(ColoredGraph(6, FanEdges())));
}

TEST(Quotient, FourCycleLoop) {
  const ColoredGraph c4(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  const auto q = quotient(c4);
  EXPECT_EQ(q.vertices, (std::vector<Position>{1}));
  EXPECT_EQ(q.cell_sizes, (std::vector<std::size_t>{4}));
  EXPECT_EQ(q.edges, (std::vector<QuotientEdge>{{1, 1, 4}}));
}

TEST(Quotient, IndividualizedFan) {
  const auto q = quotient(Fan({{4}, {5, 6}, {2, 3}, {1}}));
  EXPECT_EQ(q.vertices, (std::vector<Position>{1, 2, 4, 6}));
  EXPECT_EQ(q.edges, (std::vector<QuotientEdge>{{1, 6, 1}, {2, 4, 2}, {4, 4, 1}, {4, 6, 2}}));
}

TEST(Quotient, Decagon) {
  const auto q = quotient(DecagonWithChords());
  EXPECT_EQ(q.vertices, (std::vector<Position>{1, 2, 3, 5, 7, 9}));
  EXPECT_EQ(q.edges, (std::vector<QuotientEdge>{
                         {1, 9, 2}, {2, 7, 2}, {3, 5, 2}, {3, 9, 4}, {5, 5, 1}, {5, 7, 2}, {7, 9, 2}}));
}

TEST(Quotient, RejectsNonEquitable) {
  EXPECT_THROW(quotient(Fan({{4, 5, 6}, {1, 2}, {3}})), PreconditionError);
}

TEST(Quotient, DiscreteMatchesGraph) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 1 + rng() % 10;
    auto g = oracle::random_graph(n, 0.4, 1, rng);
    std::vector<std::vector<Vertex>> cells;
    const auto order = oracle::random_permutation(n, rng);
    for (std::uint32_t v : order.images0()) cells.push_back({v + 1});
    g = g.with_coloring(Pi(n, cells));
    const auto q = quotient(g);
    ASSERT_EQ(q.edges.size(), g.edge_count());
    for (const auto& e : q.edges) {
      EXPECT_LT(e.p, e.q);
      EXPECT_EQ(e.multiplicity, 1u);
    }
    std::set<std::pair<Vertex, Vertex>> mapped;
    for (const auto& [u, v] : g.edges()) {
      mapped.emplace(std::min(position(u, g.coloring()), position(v, g.coloring())),
                     std::max(position(u, g.coloring()), position(v, g.coloring())));
    }
    for (const auto& e : q.edges) EXPECT_TRUE(mapped.count({e.p, e.q}));
  }
}

TEST(EncodeQuotient, Layout) {
  const ColoredGraph c4(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
  const auto bytes = encode_quotient(quotient(c4));
  EXPECT_EQ(bytes, (std::vector<std::uint8_t>{0, 0, 0, 1, 0, 0, 0, 4, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 4}));
  QuotientGraph loop3{{1}, {4}, {{1, 1, 3}}};
  EXPECT_LT(encode_quotient(loop3), bytes);
  EXPECT_EQ(encode_quotient(quotient(c4)), bytes);
}

TEST(EncodeQuotient, SymmetricChildrenAgree) {
  // The fan is a triangle with one pendant per corner, so all three
  // pendants are equivalent.
  const auto g = refine(ColoredGraph(6, FanEdges())).refined;
  auto child = [&](Vertex v) {
    return encode_quotient(quotient(refine(g.with_coloring(individualize(g.coloring(), v))).refined));
  };
  EXPECT_EQ(child(5), child(6));
  EXPECT_EQ(child(4), child(5));
}

TEST(EncodeQuotient, InequivalentChildrenDiffer) {
  // Hexagon plus two triangles: 2-regular, so the unit partition is
  // equitable, but a hexagon vertex and a triangle vertex differ.
  std::vector<ColoredGraph::Edge> e;
  for (Vertex v = 1; v <= 6; ++v) e.emplace_back(v, v % 6 + 1);
  for (Vertex b : {7u, 10u}) {
    e.emplace_back(b, b + 1);
    e.emplace_back(b + 1, b + 2);
    e.emplace_back(b, b + 2);
  }
  const ColoredGraph g(12, e);
  ASSERT_TRUE(is_equitable(g));
  auto child = [&](Vertex v) {
    return encode_quotient(quotient(refine(g.with_coloring(individualize(g.coloring(), v))).refined));
  };
  EXPECT_NE(child(1), child(7));
  EXPECT_EQ(child(1), child(4));
  EXPECT_EQ(child(7), child(12));
}

TEST(EncodeQuotient, InternalWordsMatchBytes) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 1 + rng() % 14;
    const auto g = refine(oracle::random_graph(n, 0.35, 1 + rng() % 3, rng)).refined;
    Refiner r(g);
    std::vector<std::uint32_t> words;
    r.encode(g.coloring(), words);
    EXPECT_EQ(words_to_bytes(words), encode_quotient(quotient(g)));
  }
}

TEST(CompareTraces, Cases) {
  EXPECT_EQ(compare_traces({3, 5}, {3, 5}), TraceComparison::Equal);
  EXPECT_EQ(compare_traces({3, 5}, {3, 4}), TraceComparison::SecondSmaller);
  EXPECT_EQ(compare_traces({3, 4}, {3, 5}), TraceComparison::FirstSmaller);
  EXPECT_EQ(compare_traces({3}, {3, 5}), TraceComparison::FirstIsPrefix);
  EXPECT_EQ(compare_traces({3, 5}, {3}), TraceComparison::SecondIsPrefix);
  EXPECT_EQ(compare_traces({}, {}), TraceComparison::Equal);
}

TEST(RefineWithBudget, SelfReference) {
  const auto g = Fan({{4}, {5, 6}, {1, 2, 3}});
  const auto full = refine(g);
  const auto r = refine_with_budget(g, full.trace);
  EXPECT_EQ(r.outcome, BudgetedRefineResult::Outcome::Completed);
  EXPECT_EQ(r.trace, full.trace);
  EXPECT_EQ(r.graph.coloring(), full.refined.coloring());
}

TEST(RefineWithBudget, RelabeledCopyCompletes) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + rng() % 12;
    const auto g = oracle::random_graph(n, 0.3, 1 + rng() % 3, rng);
    const auto h = apply_permutation(g, oracle::random_permutation(n, rng));
    const auto r = refine_with_budget(h, refine(g).trace);
    EXPECT_EQ(r.outcome, BudgetedRefineResult::Outcome::Completed);
  }
}

TEST(RefineWithBudget, AbortsOrImprovesOnDifferentGraphs) {
  // Pairs of 8-vertex graphs with equal degree sequences whose refinements
  // diverge after the first split.
  std::mt19937_64 rng(29);
  int aborted = 0;
  int better = 0;
  for (int round = 0; round < 4000 && (aborted == 0 || better == 0); ++round) {
    const auto a = oracle::random_graph(8, 0.4, 1, rng);
    const auto b = oracle::random_graph(8, 0.4, 1, rng);
    std::vector<std::uint32_t> da, db;
    for (std::uint32_t v = 0; v < 8; ++v) {
      da.push_back(a.degree0(v));
      db.push_back(b.degree0(v));
    }
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) continue;
    const auto ta = refine(a).trace;
    const auto tb = refine(b).trace;
    if (ta.empty() || tb.empty() || ta[0] != tb[0] || ta == tb) continue;
    const auto r = refine_with_budget(b, ta);
    switch (compare_traces(tb, ta)) {
      case TraceComparison::SecondSmaller:
      case TraceComparison::SecondIsPrefix:
        ASSERT_EQ(r.outcome, BudgetedRefineResult::Outcome::AbortedWorse);
        EXPECT_LE(r.abort_index, std::min(ta.size(), tb.size()));
        EXPECT_EQ(r.trace.size(), r.abort_index + 1);
        ++aborted;
        break;
      default:
        ASSERT_EQ(r.outcome, BudgetedRefineResult::Outcome::CompletedBetter);
        EXPECT_EQ(r.trace, tb);
        ++better;
        break;
    }
  }
  EXPECT_GT(aborted, 0);
  EXPECT_GT(better, 0);
}

TEST(RefineProperties, EquitableIdempotentInvariant) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng() % 30;
    const auto g = oracle::random_graph(n, rng() % 2 ? 0.15 : 0.5, 1 + rng() % 4, rng);
    const auto r = refine(g);
    ASSERT_TRUE(is_equitable(r.refined));
    EXPECT_TRUE(is_finer(r.refined.coloring(), g.coloring()));
    const auto again = refine(r.refined);
    EXPECT_EQ(again.refined.coloring(), r.refined.coloring());
    EXPECT_TRUE(again.trace.empty());
    const auto sigma = oracle::random_permutation(n, rng);
    const auto rs = refine(apply_permutation(g, sigma));
    EXPECT_EQ(rs.trace, r.trace);
    EXPECT_EQ(rs.refined.coloring(), apply_permutation(r.refined, sigma).coloring());
    EXPECT_EQ(encode_quotient(quotient(rs.refined)), encode_quotient(quotient(r.refined)));
  }
}

TEST(RefineProperties, ChainTraceHasDistinctPositions) {
  std::mt19937_64 rng(37);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng() % 20;
    const auto g = oracle::random_graph(n, 0.3, 1 + rng() % 3, rng);
    Refiner r(g);
    OrderedPartition pi = g.coloring();
    const std::size_t initial_cells = pi.cell_count();
    RefinementTrace trace;
    TraceRecorder rec(trace);
    r.refine(pi, rec);
    while (!pi.is_discrete()) {
      std::uint32_t v = 0;
      while (pi.cell_size_at0(pi.cell_start0(v)) < 2) ++v;
      r.individualize_and_refine(pi, v, rec);
    }
    std::set<Position> seen(trace.begin(), trace.end());
    EXPECT_EQ(seen.size(), trace.size());
    EXPECT_LE(trace.size(), n - initial_cells);
    for (Position p : trace) {
      EXPECT_GE(p, 2u);
      EXPECT_LE(p, n);
    }
  }
}

}  // namespace
}  // namespace mrcanon
