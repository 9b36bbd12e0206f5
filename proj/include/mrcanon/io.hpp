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

#ifndef MRCANON_IO_HPP_
#define MRCANON_IO_HPP_

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrcanon/errors.hpp"
#include "mrcanon/graph.hpp"

namespace mrcanon {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline std::uint64_t parse_number(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace detail

// DIMACS-style text: `c` comments, one `p edge <n> <m>` line, optional
// `n <v> <color>` lines, and `e <u> <v>` edge lines. Vertices sharing a
// color share a cell; cells are ordered by ascending color, uncolored
// vertices have color 0.
inline ColoredGraph parse_graph(std::string_view text) {
  std::size_t line_no = 0;
  bool have_problem = false;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> color;
  std::vector<bool> colored;
  std::vector<ColoredGraph::Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  std::size_t problem_line = 0;
  auto vertex = [&](std::string_view f) {
    const std::uint64_t v = detail::parse_number(f, line_no);
    if (v < 1 || v > n) {
      throw ParseError(line_no, "vertex " + std::string(f) + " out of range 1.." + std::to_string(n));
    }
    return static_cast<Vertex>(v);
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const auto f = detail::split_fields(line);
    if (f.empty() || f[0] == "c") continue;
    if (f[0] == "p") {
      if (have_problem) throw ParseError(line_no, "second problem line");
      if (f.size() != 4 || f[1] != "edge") throw ParseError(line_no, "expected 'p edge <n> <m>'");
      n = detail::parse_number(f[2], line_no);
      m = detail::parse_number(f[3], line_no);
      if (n > UINT32_MAX / 2) throw ParseError(line_no, "vertex count too large");
      have_problem = true;
      problem_line = line_no;
      color.assign(n, 0);
      colored.assign(n, false);
      continue;
    }
    if (!have_problem) throw ParseError(line_no, "line before the problem line");
    if (f[0] == "n") {
      if (f.size() != 3) throw ParseError(line_no, "expected 'n <v> <color>'");
      const Vertex v = vertex(f[1]);
      if (colored[v - 1]) throw ParseError(line_no, "vertex " + std::to_string(v) + " colored twice");
      colored[v - 1] = true;
      color[v - 1] = detail::parse_number(f[2], line_no);
    } else if (f[0] == "e") {
      if (f.size() != 3) throw ParseError(line_no, "expected 'e <u> <v>'");
      const Vertex u = vertex(f[1]);
      const Vertex v = vertex(f[2]);
      if (u == v) throw ParseError(line_no, "loop at vertex " + std::to_string(u));
      if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
        throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      }
      edges.emplace_back(u, v);
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(f[0]) + "'");
    }
  }
  if (!have_problem) throw ParseError(line_no, "missing problem line");
  if (edges.size() != m) {
    throw ParseError(problem_line, "declared " + std::to_string(m) + " edges, found " +
                                       std::to_string(edges.size()));
  }
  std::map<std::uint64_t, std::vector<Vertex>> by_color;
  for (Vertex v = 1; v <= n; ++v) by_color[color[v - 1]].push_back(v);
  std::vector<std::vector<Vertex>> cells;
  for (auto& [c, cell] : by_color) cells.push_back(std::move(cell));
  return ColoredGraph(n, edges, OrderedPartition(n, cells));
}

// Normalized text: problem line, color lines (cell index) unless the
// coloring is a single cell, then the sorted edges.
inline std::string write_graph(const ColoredGraph& g) {
  std::ostringstream out;
  out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  const OrderedPartition& pi = g.coloring();
  if (pi.cell_count() > 1) {
    std::vector<std::size_t> cell_index(pi.size());
    std::size_t k = 0;
    for (std::uint32_t s = 0; s < pi.size(); s = pi.cell_end_at0(s), ++k) {
      for (std::uint32_t i = s; i < pi.cell_end_at0(s); ++i) cell_index[pi.vertex_at0(i)] = k;
    }
    for (std::size_t v = 0; v < pi.size(); ++v) out << "n " << v + 1 << ' ' << cell_index[v] << '\n';
  }
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace mrcanon

#endif  // MRCANON_IO_HPP_
