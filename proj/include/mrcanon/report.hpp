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

#ifndef MRCANON_REPORT_HPP_
#define MRCANON_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrcanon/graph.hpp"
#include "mrcanon/perm_group.hpp"
#include "mrcanon/search.hpp"

namespace mrcanon {

struct RunReport {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string aut_order;  // full decimal
  std::size_t orbits = 0;
  std::vector<std::string> generators;
  std::optional<std::vector<Vertex>> labeling;
  double time_s = 0;
  SearchStats stats;
};

inline RunReport make_report(std::string name, const ColoredGraph& g, const PermutationGroup& group,
                             const SearchStats& stats, double time_s) {
  RunReport r;
  r.name = std::move(name);
  r.n = g.order();
  r.m = g.edge_count();
  r.aut_order = group.order().str();
  r.orbits = group.orbits().size();
  for (const Permutation& p : group.generators()) r.generators.push_back(p.to_cycle_string());
  r.time_s = time_s;
  r.stats = stats;
  return r;
}

// Fixed key set: name, n, m, aut_order, orbits, time_s, mref_calls, depth,
// generators, group_time_s, residuals. aut_order is a decimal string.
inline std::string to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["m"] = r.m;
  j["aut_order"] = r.aut_order;
  j["orbits"] = r.orbits;
  j["time_s"] = r.time_s;
  j["mref_calls"] = r.stats.multirefine_calls;
  j["depth"] = r.stats.max_depth;
  j["generators"] = r.generators;
  j["group_time_s"] = r.stats.group_time;
  j["residuals"] = r.stats.residual_count;
  return j.dump();
}

inline std::string to_text(const RunReport& r) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed;
  out << "graph: " << r.name << '\n'
      << "vertices: " << r.n << '\n'
      << "edges: " << r.m << '\n'
      << "order: " << r.aut_order << '\n'
      << "orbits: " << r.orbits << '\n'
      << "time_s: " << r.time_s << '\n'
      << "mref_calls: " << r.stats.multirefine_calls << '\n'
      << "depth: " << r.stats.max_depth << '\n'
      << "generators_found: " << r.stats.generators_found << '\n'
      << "group_time_s: " << r.stats.group_time << '\n'
      << "residuals: " << r.stats.residual_count << '\n';
  return out.str();
}

inline std::string table_header() {
  return "name                             n        m   time_s    mref  depth  gens   grp_s  rsd  aut_order\n";
}

inline std::string table_row(const RunReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-28s %7zu %8zu %8.3f %7llu %6zu %5zu %7.3f %4zu  ", r.name.c_str(), r.n, r.m,
                r.time_s, static_cast<unsigned long long>(r.stats.multirefine_calls), r.stats.max_depth,
                r.stats.generators_found, r.stats.group_time, r.stats.residual_count);
  return buf + r.aut_order + '\n';
}

}  // namespace mrcanon

#endif  // MRCANON_REPORT_HPP_
