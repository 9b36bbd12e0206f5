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

#ifndef MRCANON_BRUTE_FORCE_HPP_
#define MRCANON_BRUTE_FORCE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"

namespace mrcanon {

inline constexpr std::size_t kBruteForceLimit = 9;

struct BruteForceResult {
  std::vector<std::uint8_t> encoding;
  std::uint64_t aut_order = 0;
};

// Tries every relabeling that keeps each color class and each vertex degree
// within the class in place. Automorphisms preserve both, so the minimum
// adjacency key is canonical and the number of relabelings reaching it is
// |Aut(g)|.
inline BruteForceResult brute_force_canonical(const ColoredGraph& g) {
  const std::size_t n = g.order();
  if (n > kBruteForceLimit) throw CapacityError("brute force is limited to 9 vertices");
  std::vector<std::vector<std::uint32_t>> blocks;
  for (const auto& cell : g.coloring().cells()) {
    std::vector<std::uint32_t> by_degree;
    for (Vertex v : cell) by_degree.push_back(v - 1);
    std::sort(by_degree.begin(), by_degree.end(), [&](std::uint32_t a, std::uint32_t b) {
      return g.degree0(a) != g.degree0(b) ? g.degree0(a) < g.degree0(b) : a < b;
    });
    for (std::size_t i = 0; i < by_degree.size();) {
      std::size_t j = i;
      while (j < by_degree.size() && g.degree0(by_degree[j]) == g.degree0(by_degree[i])) ++j;
      blocks.emplace_back(by_degree.begin() + i, by_degree.begin() + j);
      i = j;
    }
  }
  // Bit of the pair (a, b), a < b, in row-major order, first pair highest.
  std::vector<std::uint32_t> bit(n * n, 0);
  std::uint32_t next = 0;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) bit[a * n + b] = bit[b * n + a] = next++;
  }
  const auto edges = g.edges();
  std::vector<std::uint32_t> slot(n);
  std::uint64_t best = 0;
  std::uint64_t count = 0;
  bool first = true;
  for (;;) {
    std::uint32_t pos = 0;
    for (const auto& b : blocks) {
      for (std::uint32_t v : b) slot[v] = pos++;
    }
    std::uint64_t key = 0;
    for (const auto& [u, v] : edges) key |= std::uint64_t{1} << (next - 1 - bit[slot[u - 1] * n + slot[v - 1]]);
    if (first || key < best) {
      best = key;
      count = 1;
      first = false;
    } else if (key == best) {
      ++count;
    }
    std::size_t k = 0;
    while (k < blocks.size() && !std::next_permutation(blocks[k].begin(), blocks[k].end())) ++k;
    if (k == blocks.size()) break;
  }
  BruteForceResult out;
  out.aut_order = count;
  out.encoding.push_back(static_cast<std::uint8_t>(n));
  for (std::size_t s : g.coloring().cell_sizes()) out.encoding.push_back(static_cast<std::uint8_t>(s));
  for (int shift = 56; shift >= 0; shift -= 8) out.encoding.push_back(static_cast<std::uint8_t>(best >> shift));
  return out;
}

}  // namespace mrcanon

#endif  // MRCANON_BRUTE_FORCE_HPP_
