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

// mrcanon: canonical labeling, automorphism groups and isomorphism tests
// for DIMACS-style graph files.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mrcanon/mrcanon.hpp"

namespace fs = std::filesystem;
using namespace mrcanon;

namespace {

enum Exit { kOk = 0, kNonIsomorphic = 1, kUsage = 2, kParse = 3, kCapacity = 4, kIntegrity = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  bool stats_json = false;
  bool no_prune = false;
  bool no_trace_shortcut = false;
  bool oracle = false;
  SearchOptions options() const { return {!no_prune, !no_trace_shortcut}; }
};

ColoredGraph load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_graph(text.str());
  } catch (const ParseError& e) {
    throw FileParseError(path + ": " + e.what());
  }
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string images(const Permutation& p) {
  std::string out;
  for (Vertex v : p.images()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

void require_oracle(const ColoredGraph& g) {
  if (g.order() > kBruteForceLimit) {
    throw CapacityError("--oracle needs at most " + std::to_string(kBruteForceLimit) + " vertices");
  }
}

void oracle_check(bool ok, const std::string& what) {
  if (!ok) throw IntegrityError("oracle disagrees: " + what);
  std::cout << "oracle: ok\n";
}

int run_canon(const std::string& path, const Flags& f) {
  const ColoredGraph g = load(path);
  if (f.oracle) require_oracle(g);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = canonical_form(g, f.options());
  const double t = seconds_since(t0);
  std::cout << "labeling: " << images(r.labeling) << '\n';
  std::cout << "hash: " << encoding_hash(r.candidate.encoding) << '\n';
  RunReport report = make_report(stem(path), g, r.group, r.stats, t);
  std::cout << (f.stats_json ? to_json(report) + '\n' : to_text(report));
  if (f.oracle) {
    const auto truth = brute_force_canonical(g);
    oracle_check(truth.aut_order == r.group.order() &&
                     brute_force_canonical(r.canonical).encoding == truth.encoding,
                 "canonical form or group order");
  }
  return kOk;
}

int run_aut(const std::string& path, const Flags& f) {
  const ColoredGraph g = load(path);
  if (f.oracle) require_oracle(g);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = automorphism_group(g, f.options());
  const double t = seconds_since(t0);
  const RunReport report = make_report(stem(path), g, r.group, r.stats, t);
  if (f.stats_json) {
    std::cout << to_json(report) << '\n';
  } else {
    std::cout << "generators:\n";
    for (const std::string& s : report.generators) std::cout << "  " << s << '\n';
    std::cout << to_text(report);
  }
  if (f.oracle) oracle_check(brute_force_canonical(g).aut_order == r.group.order(), "group order");
  return kOk;
}

int run_iso(const std::string& a, const std::string& b, const Flags& f) {
  const ColoredGraph g1 = load(a);
  const ColoredGraph g2 = load(b);
  if (f.oracle) {
    require_oracle(g1);
    require_oracle(g2);
  }
  const auto w = are_isomorphic(g1, g2, f.options());
  if (w) {
    std::cout << "witness: " << images(*w) << '\n';
  } else {
    std::cout << "non-isomorphic\n";
  }
  if (f.oracle) {
    const bool iso = g1.order() == g2.order() &&
                     brute_force_canonical(g1).encoding == brute_force_canonical(g2).encoding;
    oracle_check(iso == w.has_value(), "isomorphism verdict");
  }
  return w ? kOk : kNonIsomorphic;
}

std::size_t number(const std::vector<std::string>& args, std::size_t i, const std::string& family) {
  if (i >= args.size()) throw UsageError(family + ": missing parameter");
  std::size_t pos = 0;
  std::size_t v = 0;
  try {
    v = std::stoul(args[i], &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != args[i].size()) throw UsageError(family + ": bad parameter '" + args[i] + "'");
  return v;
}

int run_gen(const std::string& family, const std::vector<std::string>& args, const std::string& out,
            const std::optional<std::uint64_t>& seed) {
  ColoredGraph g;
  std::size_t want = 1;
  if (family == "complete") {
    g = complete_graph(number(args, 0, family));
  } else if (family == "cycle") {
    g = cycle_graph(number(args, 0, family));
  } else if (family == "grid" || family == "torus") {
    want = 2;
    const std::size_t d = number(args, 0, family);
    const std::size_t n = number(args, 1, family);
    g = family == "grid" ? grid_graph(d, n) : torus_graph(d, n);
  } else if (family == "lattice") {
    g = lattice_graph(number(args, 0, family));
  } else if (family == "paley") {
    g = paley_graph(number(args, 0, family));
  } else if (family == "cfi") {
    if (args.empty()) throw UsageError("cfi: missing base file");
    const bool twisted = args.size() > 1 && args[1] == "twisted";
    if (args.size() > 1 && !twisted) throw UsageError("cfi: expected 'twisted', got '" + args[1] + "'");
    want = args.size();
    g = cfi_graph(load(args[0]), twisted);
  } else {
    throw UsageError("unknown family '" + family + "'");
  }
  if (args.size() != want) throw UsageError(family + ": wrong number of parameters");
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::vector<std::uint32_t> img(g.order());
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    g = apply_permutation(g, Permutation::from_images0(std::move(img)));
  }
  const std::string text = write_graph(g);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file || !(file << text)) throw UsageError("cannot write " + out);
  }
  return kOk;
}

int run_bench(const std::string& dir, const Flags& f) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) throw UsageError("cannot list " + dir);
  std::sort(files.begin(), files.end());
  if (!f.stats_json) std::cout << table_header();
  for (const fs::path& p : files) {
    const ColoredGraph g = load(p.string());
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = automorphism_group(g, f.options());
    const RunReport report = make_report(p.stem().string(), g, r.group, r.stats, seconds_since(t0));
    std::cout << (f.stats_json ? to_json(report) + '\n' : table_row(report)) << std::flush;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical labeling and automorphism groups of colored graphs"};
  app.require_subcommand(1);
  Flags flags;
  auto add_search_flags = [&flags](CLI::App* sub) {
    sub->add_flag("--stats-json", flags.stats_json, "Print the run report as JSON");
    sub->add_flag("--no-prune", flags.no_prune, "Disable automorphism pruning");
    sub->add_flag("--no-trace-shortcut", flags.no_trace_shortcut, "Never abort refinements early");
    sub->add_flag("--oracle", flags.oracle, "Cross-check with brute force (n <= 9)");
  };

  std::string file;
  std::string file2;
  auto* canon = app.add_subcommand("canon", "Canonical labeling of a graph");
  canon->add_option("file", file, "Graph file")->required();
  add_search_flags(canon);

  auto* aut = app.add_subcommand("aut", "Automorphism group of a graph");
  aut->add_option("file", file, "Graph file")->required();
  add_search_flags(aut);

  auto* iso = app.add_subcommand("iso", "Isomorphism test; exit 0 iff isomorphic");
  iso->add_option("file1", file, "First graph")->required();
  iso->add_option("file2", file2, "Second graph")->required();
  add_search_flags(iso);

  std::string family;
  std::vector<std::string> params;
  std::string out;
  std::optional<std::uint64_t> seed;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark graph");
  gen->add_option("family", family, "complete|cycle|grid|torus|lattice|paley|cfi")->required();
  gen->add_option("params", params, "Family parameters");
  gen->add_option("-o,--output", out, "Output file (default stdout)");
  gen->add_option("--seed", seed, "Randomly relabel the result with this seed");

  std::string dir;
  auto* bench = app.add_subcommand("bench", "Report table for every file in a directory");
  bench->add_option("dir", dir, "Directory of graph files")->required();
  add_search_flags(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    if (*canon) return run_canon(file, flags);
    if (*aut) return run_aut(file, flags);
    if (*iso) return run_iso(file, file2, flags);
    if (*gen) return run_gen(family, params, out, seed);
    if (*bench) return run_bench(dir, flags);
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
