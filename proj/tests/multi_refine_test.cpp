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
#include <vector>

#include <gtest/gtest.h>

#include "mrcanon/multi_refine.hpp"
#include "oracle.hpp"

namespace mrcanon {
namespace {

OrderedPartition Pi(std::size_t n, std::vector<std::vector<Vertex>> cells) {
  return OrderedPartition(n, cells);
}

ColoredGraph Fan() {
  return ColoredGraph(6, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 6}},
                      Pi(6, {{4, 5, 6}, {1, 2, 3}}));
}

ColoredGraph Complete(std::size_t n) {
  std::vector<ColoredGraph::Edge> e;
  for (Vertex u = 1; u <= n; ++u)
    for (Vertex v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  return ColoredGraph(n, e);
}

// Hexagon plus two triangles: equitable unit partition whose children
// differ between the two kinds of vertices.
ColoredGraph HexagonAndTriangles() {
  std::vector<ColoredGraph::Edge> e;
  for (Vertex v = 1; v <= 6; ++v) e.emplace_back(v, v % 6 + 1);
  for (Vertex b : {7u, 10u}) {
    e.emplace_back(b, b + 1);
    e.emplace_back(b + 1, b + 2);
    e.emplace_back(b, b + 2);
  }
  return ColoredGraph(12, e);
}

TEST(MultiRefine, FanHasNoSplit) {
  auto group = group_new(6);
  const auto r = multi_refine(Fan(), group);
  EXPECT_EQ(r.graph.coloring(), Pi(6, {{4, 5, 6}, {1, 2, 3}}));
  EXPECT_TRUE(r.trace.empty());
  EXPECT_FALSE(r.discrete_shortcut.has_value());
  EXPECT_EQ(r.target_cell, std::optional<Position>(1));
  EXPECT_TRUE(respects_individualizations(Fan()));
}

TEST(MultiRefine, SplitsByChildQuotient) {
  const auto g = HexagonAndTriangles();
  EXPECT_FALSE(respects_individualizations(g));
  auto group = group_new(12);
  const auto r = multi_refine(g, group);
  EXPECT_TRUE(is_equitable(r.graph));
  EXPECT_TRUE(respects_individualizations(r.graph));
  const auto cells = r.graph.coloring().cells();
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(r.trace.size(), 1u);
  const bool hexagon_first = cells[0].front() == 1;
  EXPECT_EQ(cells[hexagon_first ? 0 : 1], (std::vector<Vertex>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(r.trace[0], 7u);
}

TEST(MultiRefine, DiscreteInputUntouched) {
  const auto g = ColoredGraph(3, {{1, 2}, {2, 3}}, Pi(3, {{2}, {1}, {3}}));
  auto group = group_new(3);
  const auto r = multi_refine(g, group);
  EXPECT_EQ(r.graph.coloring(), g.coloring());
  EXPECT_TRUE(r.child_stats.empty());
  EXPECT_FALSE(r.target_cell.has_value());
  EXPECT_TRUE(r.trace.empty());
}

TEST(MultiRefine, PathShortcut) {
  // Individualizing an end of a path makes it discrete.
  const ColoredGraph path(4, {{1, 2}, {2, 3}, {3, 4}});
  auto group = group_new(4);
  const auto r = multi_refine(path, group);
  ASSERT_TRUE(r.discrete_shortcut.has_value());
  EXPECT_TRUE(r.graph.coloring().is_discrete());
  ASSERT_EQ(r.new_automorphisms.size(), 1u);
  EXPECT_EQ(r.new_automorphisms[0].to_cycle_string(), "(1 4)(2 3)");
  EXPECT_EQ(order(group), 2);
}

TEST(MultiRefine, CompleteGraph) {
  for (std::size_t n : {3u, 5u, 8u}) {
    const auto g = Complete(n);
    auto trivial = group_new(n);
    {
      MultiRefiner engine(g, trivial);
      OrderedPartition pi = g.coloring();
      RefinementTrace t;
      TraceRecorder rec(t);
      const auto report = engine.run(pi, {}, rec);
      EXPECT_FALSE(report.shortcut);
      EXPECT_EQ(report.children, n);
      EXPECT_EQ(pi, OrderedPartition::unit(n));
    }
    auto sym = group_new(n);
    std::vector<Vertex> cyc(n);
    for (Vertex v = 1; v <= n; ++v) cyc[v - 1] = v % n + 1;
    group_extend(sym, Permutation::parse_cycles("(1 2)", n));
    group_extend(sym, Permutation(cyc));
    MultiRefiner engine(g, sym);
    OrderedPartition pi = g.coloring();
    RefinementTrace t;
    TraceRecorder rec(t);
    const auto report = engine.run(pi, {}, rec);
    EXPECT_EQ(report.children, 1u);
  }
  auto g2 = group_new(2);
  const auto r2 = multi_refine(Complete(2), g2);
  EXPECT_TRUE(r2.discrete_shortcut.has_value());
  EXPECT_EQ(order(g2), 2);
}

TEST(SelectTargetCell, Rules) {
  MultiRefineResult r;
  r.graph = Fan();
  r.child_stats = {{1, 4}, {4, 4}};
  EXPECT_EQ(select_target_cell(r), std::optional<Position>(1));
  r.child_stats = {{1, 5}, {4, 7}};
  EXPECT_EQ(select_target_cell(r), std::optional<Position>(4));
  r.graph = Fan().with_coloring(Pi(6, {{1}, {2}, {3}, {4}, {5}, {6}}));
  EXPECT_EQ(select_target_cell(r), std::nullopt);
}

TEST(RespectsIndividualizations, Discrete) {
  EXPECT_TRUE(respects_individualizations(Fan().with_coloring(Pi(6, {{1}, {2}, {3}, {4}, {5}, {6}}))));
  EXPECT_THROW(respects_individualizations(Fan().with_coloring(OrderedPartition::unit(6))),
               PreconditionError);
}

TEST(MultiRefineProperties, RandomGraphs) {
  std::mt19937_64 rng(53);
  int non_shortcut = 0;
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 2 + rng() % 16;
    const auto g = oracle::random_graph(n, rng() % 2 ? 0.2 : 0.5, 1 + rng() % 3, rng);
    auto group = group_new(n);
    const auto r = multi_refine(g, group);
    ASSERT_TRUE(is_equitable(r.graph));
    EXPECT_TRUE(is_finer(r.graph.coloring(), g.coloring()));
    for (const auto& p : r.new_automorphisms) EXPECT_TRUE(is_automorphism(g, p));
    if (!r.discrete_shortcut) {
      ++non_shortcut;
      EXPECT_TRUE(respects_individualizations(r.graph));
    }
    const auto sigma = oracle::random_permutation(n, rng);
    auto group2 = group_new(n);
    const auto rs = multi_refine(apply_permutation(g, sigma), group2);
    EXPECT_EQ(rs.trace, r.trace);
    EXPECT_EQ(rs.target_cell, r.target_cell);
    EXPECT_EQ(rs.discrete_shortcut.has_value(), r.discrete_shortcut.has_value());
    if (r.discrete_shortcut) {
      EXPECT_EQ(rs.discrete_shortcut->encoding, r.discrete_shortcut->encoding);
    } else {
      EXPECT_EQ(rs.graph.coloring(), apply_permutation(r.graph, sigma).coloring());
    }
  }
  EXPECT_GT(non_shortcut, 50);
}

TEST(MultiRefineProperties, GroupDoesNotChangeResult) {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = 2 + rng() % 9;
    const auto g = oracle::random_graph(n, 0.4, 1 + rng() % 2, rng);
    auto trivial = group_new(n);
    const auto plain = multi_refine(g, trivial);
    // Full automorphism group from the exhaustive oracle's witnesses.
    auto full = group_new(n);
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    do {
      const auto p = Permutation::from_images0(img);
      if (is_automorphism(g, p)) group_extend(full, p);
    } while (std::next_permutation(img.begin(), img.end()));
    const auto pruned = multi_refine(g, full);
    EXPECT_EQ(pruned.trace, plain.trace);
    EXPECT_EQ(pruned.target_cell, plain.target_cell);
    if (!plain.discrete_shortcut) EXPECT_EQ(pruned.graph.coloring(), plain.graph.coloring());
  }
}

}  // namespace
}  // namespace mrcanon
