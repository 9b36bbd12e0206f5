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

#include <algorithm>

#include <gtest/gtest.h>

#include "mrcanon/generators.hpp"
#include "mrcanon/search.hpp"

namespace mrcanon {
namespace {

std::vector<std::uint32_t> Degrees(const ColoredGraph& g) {
  std::vector<std::uint32_t> d;
  for (std::uint32_t v = 0; v < g.order(); ++v) d.push_back(g.degree0(v));
  return d;
}

ColoredGraph Petersen() {
  return ColoredGraph(10, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}, {1, 6}, {2, 7}, {3, 8},
                           {4, 9}, {5, 10}, {6, 8}, {8, 10}, {10, 7}, {7, 9}, {9, 6}});
}

TEST(Generators, Complete) {
  const ColoredGraph g = complete_graph(4);
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(complete_graph(0).order(), 0u);
}

TEST(Generators, LatticeIsRookGraph) {
  const ColoredGraph g = lattice_graph(3);
  EXPECT_EQ(g.order(), 9u);
  EXPECT_EQ(g.edge_count(), 18u);
  for (std::uint32_t d : Degrees(g)) EXPECT_EQ(d, 4u);
  EXPECT_TRUE(g.adjacent(1, 3));
  EXPECT_TRUE(g.adjacent(1, 7));
  EXPECT_FALSE(g.adjacent(1, 5));
}

TEST(Generators, PaleyFiveIsPentagon) {
  const ColoredGraph g = paley_graph(5);
  EXPECT_EQ(g.edges(), (std::vector<ColoredGraph::Edge>{{1, 2}, {1, 5}, {2, 3}, {3, 4}, {4, 5}}));
  EXPECT_THROW(paley_graph(7), DomainError);
  EXPECT_THROW(paley_graph(9), DomainError);
}

TEST(Generators, PaleyIsSelfComplementaryRegular) {
  const ColoredGraph g = paley_graph(13);
  for (std::uint32_t d : Degrees(g)) EXPECT_EQ(d, 6u);
  EXPECT_EQ(g.edge_count(), 13u * 6u / 2u);
}

TEST(Generators, GridAndTorusCounts) {
  const ColoredGraph grid = grid_graph(2, 4);
  EXPECT_EQ(grid.order(), 16u);
  EXPECT_EQ(grid.edge_count(), 24u);
  const ColoredGraph torus = torus_graph(3, 4);
  EXPECT_EQ(torus.order(), 64u);
  for (std::uint32_t d : Degrees(torus)) EXPECT_EQ(d, 6u);
  EXPECT_EQ(grid_graph(1, 5).edges(), (std::vector<ColoredGraph::Edge>{{1, 2}, {2, 3}, {3, 4}, {4, 5}}));
  EXPECT_THROW(torus_graph(2, 2), DomainError);
}

TEST(Generators, SmallGroupOrders) {
  EXPECT_EQ(automorphism_group(grid_graph(2, 5)).group.order(), 8);
  EXPECT_EQ(automorphism_group(torus_graph(2, 5)).group.order(), 200);
  EXPECT_EQ(automorphism_group(lattice_graph(4)).group.order(), 2 * 24 * 24);
  EXPECT_EQ(automorphism_group(paley_graph(13)).group.order(), 13 * 6);
  EXPECT_EQ(automorphism_group(cycle_graph(7)).group.order(), 14);
}

TEST(Generators, CfiShape) {
  const ColoredGraph g = cfi_graph(complete_graph(4), false);
  EXPECT_EQ(g.order(), 40u);
  EXPECT_EQ(g.edge_count(), 4u * 12u + 6u * 2u);
  for (std::uint32_t d : Degrees(g)) EXPECT_EQ(d, 3u);
  EXPECT_EQ(g.coloring().cell_count(), 16u);
  EXPECT_THROW(cfi_graph(cycle_graph(5), false), DomainError);
  EXPECT_THROW(cfi_graph(ColoredGraph(8, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
                                          {5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}}),
                         false),
               DomainError);
}

TEST(Generators, CfiGroupOrderAndTwist) {
  // Gadget colors make |Aut| = 2^(edges - vertices + 1) of the base.
  const ColoredGraph plain = cfi_graph(Petersen(), false);
  const ColoredGraph twisted = cfi_graph(Petersen(), true);
  EXPECT_EQ(automorphism_group(plain).group.order(), 64);
  EXPECT_EQ(automorphism_group(twisted).group.order(), 64);
  EXPECT_FALSE(are_isomorphic(plain, twisted).has_value());
  EXPECT_NE(canonical_form(plain).candidate.encoding, canonical_form(twisted).candidate.encoding);
}

}  // namespace
}  // namespace mrcanon
