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

#ifndef MRCANON_GENERATORS_HPP_
#define MRCANON_GENERATORS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"

namespace mrcanon {

inline ColoredGraph complete_graph(std::size_t n) {
  std::vector<ColoredGraph::Edge> e;
  e.reserve(n * (n - (n > 0)) / 2);
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) e.emplace_back(u, v);
  }
  return ColoredGraph(n, e);
}

inline ColoredGraph cycle_graph(std::size_t n) {
  if (n < 3) throw DomainError("cycle needs at least 3 vertices");
  std::vector<ColoredGraph::Edge> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(1, static_cast<Vertex>(n));
  return ColoredGraph(n, e);
}

namespace detail {

inline ColoredGraph grid_like(std::size_t d, std::size_t n, bool wrap) {
  if (d < 1 || n < 2) throw DomainError("grid needs d >= 1 and n >= 2");
  if (wrap && n < 3) throw DomainError("torus needs n >= 3");
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total > (std::size_t{1} << 31) / n) throw DomainError("grid too large");
    total *= n;
  }
  std::vector<ColoredGraph::Edge> e;
  std::vector<std::size_t> x(d, 0);
  for (std::size_t id = 0; id < total; ++id) {
    std::size_t stride = 1;
    for (std::size_t k = 0; k < d; ++k) {
      if (x[k] + 1 < n) {
        e.emplace_back(id + 1, id + stride + 1);
      } else if (wrap) {
        e.emplace_back(id - x[k] * stride + 1, id + 1);
      }
      stride *= n;
    }
    for (std::size_t k = 0; k < d && ++x[k] == n; ++k) x[k] = 0;
  }
  return ColoredGraph(total, e);
}

}  // namespace detail

// d-dimensional n x ... x n grid, nearest neighbours, no wrap-around.
inline ColoredGraph grid_graph(std::size_t d, std::size_t n) { return detail::grid_like(d, n, false); }

inline ColoredGraph torus_graph(std::size_t d, std::size_t n) { return detail::grid_like(d, n, true); }

// Rook's graph: n x n cells, adjacent when sharing a row or a column.
inline ColoredGraph lattice_graph(std::size_t n) {
  if (n < 1) throw DomainError("lattice needs n >= 1");
  std::vector<ColoredGraph::Edge> e;
  auto id = [n](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * n + c + 1); };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t c2 = c + 1; c2 < n; ++c2) e.emplace_back(id(r, c), id(r, c2));
      for (std::size_t r2 = r + 1; r2 < n; ++r2) e.emplace_back(id(r, c), id(r2, c));
    }
  }
  return ColoredGraph(n * n, e);
}

// Quadratic-residue graph on GF(q), q prime with q = 1 mod 4.
inline ColoredGraph paley_graph(std::size_t q) {
  if (q < 5 || q % 4 != 1) throw DomainError("paley needs a prime q = 1 mod 4");
  for (std::size_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) throw DomainError("paley needs a prime q = 1 mod 4");
  }
  std::vector<char> residue(q, 0);
  for (std::size_t x = 1; x < q; ++x) residue[x * x % q] = 1;
  std::vector<ColoredGraph::Edge> e;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a + 1; b < q; ++b) {
      if (residue[b - a]) e.emplace_back(a + 1, b + 1);
    }
  }
  return ColoredGraph(q, e);
}

// Cai-Fuerer-Immerman graph over a connected 3-regular base. Base vertex v
// becomes 4 inner vertices (the even subsets of its three edge slots)
// followed by a pair of port vertices per slot; inner vertex S meets port
// bit 1 of slot i when i is in S and port bit 0 otherwise. Ports of an
// edge join bit to bit, except on the first base edge when twisted. Each
// gadget's inner vertices and each port pair form their own color class.
inline ColoredGraph cfi_graph(const ColoredGraph& base, bool twisted) {
  const std::size_t nb = base.order();
  if (nb == 0) throw DomainError("cfi base is empty");
  for (std::uint32_t v = 0; v < nb; ++v) {
    if (base.degree0(v) != 3) throw DomainError("cfi base must be 3-regular");
  }
  {
    std::vector<char> seen(nb, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t u : base.neighbors0(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    if (reached != nb) throw DomainError("cfi base must be connected");
  }
  constexpr std::uint32_t kPerVertex = 10;
  auto inner = [](std::uint32_t v, std::uint32_t k) { return v * kPerVertex + k + 1; };
  auto port = [](std::uint32_t v, std::uint32_t slot, std::uint32_t bit) {
    return v * kPerVertex + 4 + 2 * slot + bit + 1;
  };
  const std::uint32_t subsets[4] = {0b000, 0b011, 0b101, 0b110};
  std::vector<ColoredGraph::Edge> e;
  std::vector<std::vector<Vertex>> cells;
  for (std::uint32_t v = 0; v < nb; ++v) {
    cells.push_back({inner(v, 0), inner(v, 1), inner(v, 2), inner(v, 3)});
    for (std::uint32_t k = 0; k < 4; ++k) {
      for (std::uint32_t slot = 0; slot < 3; ++slot) {
        e.emplace_back(inner(v, k), port(v, slot, (subsets[k] >> slot) & 1u));
      }
    }
    for (std::uint32_t slot = 0; slot < 3; ++slot) cells.push_back({port(v, slot, 0), port(v, slot, 1)});
  }
  bool first = true;
  for (const auto& [a, b] : base.edges()) {
    const std::uint32_t u = a - 1;
    const std::uint32_t w = b - 1;
    const auto nu = base.neighbors0(u);
    const auto nw = base.neighbors0(w);
    const auto su = static_cast<std::uint32_t>(std::find(nu.begin(), nu.end(), w) - nu.begin());
    const auto sw = static_cast<std::uint32_t>(std::find(nw.begin(), nw.end(), u) - nw.begin());
    const std::uint32_t flip = twisted && first ? 1u : 0u;
    first = false;
    e.emplace_back(port(u, su, 0), port(w, sw, flip));
    e.emplace_back(port(u, su, 1), port(w, sw, 1u - flip));
  }
  return ColoredGraph(nb * kPerVertex, e, OrderedPartition(nb * kPerVertex, cells));
}

}  // namespace mrcanon

#endif  // MRCANON_GENERATORS_HPP_
