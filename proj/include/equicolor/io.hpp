#pragma once

// Line-based ASCII instance and coloring formats.
//
//   Equitable:   "p ec <n> <k>"  then "e <u> <v>" per edge
//   Number-list: "p nlc <n> <q>" then "e <u> <v>", "l <v> <c1> <c2> ...",
//                "h <c> <target>"
//   Multicolored clique: "p mc <n> <k>" then "v <vertex> <part>", "e <u> <v>"
//   Coloring:    "c <v> <color>" per vertex
//
// Blank lines and lines starting with '#' are ignored. Errors carry line
// numbers.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "equicolor/graph.hpp"

namespace equicolor {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct MCInstance {
  Graph graph;
  std::vector<int> part_of;  // index 1..n, parts 1..k
  int k = 0;

  std::vector<std::vector<Vertex>> parts() const {
    std::vector<std::vector<Vertex>> ps(static_cast<size_t>(k) + 1);
    for (Vertex v = 1; v <= graph.n(); ++v) ps[static_cast<size_t>(part_of[static_cast<size_t>(v)])].push_back(v);
    return ps;
  }
};

using AnyInstance = std::variant<EquitableInstance, NumberListInstance, MCInstance>;

namespace detail {

inline bool significant_line(std::string& line) {
  size_t i = line.find_first_not_of(" \t\r");
  if (i == std::string::npos) return false;
  if (line[i] == '#') return false;
  return true;
}

inline long long parse_int(std::istringstream& ss, int lineno, const char* what) {
  long long x;
  if (!(ss >> x)) throw ParseError(lineno, std::string("expected integer for ") + what);
  return x;
}

}  // namespace detail

inline AnyInstance parse_instance(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::string kind;
  int n = 0;
  long long second = 0;
  // locate header
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::significant_line(line)) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "p") throw ParseError(lineno, "expected header 'p <kind> <n> <param>'");
    ss >> kind;
    if (kind != "ec" && kind != "nlc" && kind != "mc")
      throw ParseError(lineno, "unknown instance kind '" + kind + "'");
    n = static_cast<int>(detail::parse_int(ss, lineno, "n"));
    second = detail::parse_int(ss, lineno, kind == "ec" ? "k" : (kind == "nlc" ? "q" : "k"));
    if (n < 0) throw ParseError(lineno, "negative vertex count");
    if (second < 1) throw ParseError(lineno, "parameter must be >= 1");
    break;
  }
  if (kind.empty()) throw ParseError(lineno, "missing 'p' header");

  Graph g(n);
  std::vector<std::vector<Color>> lists(static_cast<size_t>(n) + 1);
  std::vector<long long> targets(static_cast<size_t>(second) + 1, 0);
  std::vector<int> part_of(static_cast<size_t>(n) + 1, 0);

  auto check_v = [&](long long v) {
    if (v < 1 || v > n) throw ParseError(lineno, "vertex " + std::to_string(v) + " out of range");
    return static_cast<Vertex>(v);
  };
  auto check_c = [&](long long c) {
    if (c < 1 || c > second) throw ParseError(lineno, "color " + std::to_string(c) + " out of range");
    return static_cast<Color>(c);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::significant_line(line)) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "e") {
      Vertex u = check_v(detail::parse_int(ss, lineno, "edge endpoint"));
      Vertex v = check_v(detail::parse_int(ss, lineno, "edge endpoint"));
      if (u == v) throw ParseError(lineno, "self-loop");
      g.add_edge(u, v);
    } else if (tag == "l" && kind == "nlc") {
      Vertex v = check_v(detail::parse_int(ss, lineno, "list vertex"));
      std::vector<Color> lst;
      long long c;
      while (ss >> c) lst.push_back(check_c(c));
      if (lst.empty()) throw ParseError(lineno, "empty color list");
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      lists[static_cast<size_t>(v)] = std::move(lst);
    } else if (tag == "h" && kind == "nlc") {
      Color c = check_c(detail::parse_int(ss, lineno, "target color"));
      long long t = detail::parse_int(ss, lineno, "target value");
      if (t < 0) throw ParseError(lineno, "negative target");
      targets[static_cast<size_t>(c)] = t;
    } else if (tag == "v" && kind == "mc") {
      Vertex v = check_v(detail::parse_int(ss, lineno, "part vertex"));
      long long p = detail::parse_int(ss, lineno, "part id");
      if (p < 1 || p > second) throw ParseError(lineno, "part out of range");
      part_of[static_cast<size_t>(v)] = static_cast<int>(p);
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "' for kind '" + kind + "'");
    }
  }

  if (kind == "ec") return EquitableInstance{std::move(g), static_cast<int>(second)};
  if (kind == "nlc") {
    for (Vertex v = 1; v <= n; ++v)
      if (lists[static_cast<size_t>(v)].empty())
        throw ParseError(lineno, "vertex " + std::to_string(v) + " has no color list");
    return NumberListInstance{std::move(g), std::move(lists), std::move(targets)};
  }
  for (Vertex v = 1; v <= n; ++v)
    if (part_of[static_cast<size_t>(v)] == 0)
      throw ParseError(lineno, "vertex " + std::to_string(v) + " has no part");
  return MCInstance{std::move(g), std::move(part_of), static_cast<int>(second)};
}

inline Coloring parse_coloring(std::istream& in, int n) {
  Coloring phi(n);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!detail::significant_line(line)) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag != "c") throw ParseError(lineno, "expected 'c <v> <color>'");
    long long v = detail::parse_int(ss, lineno, "vertex");
    long long c = detail::parse_int(ss, lineno, "color");
    if (v < 1 || v > n) throw ParseError(lineno, "vertex out of range");
    if (c < 1) throw ParseError(lineno, "color must be >= 1");
    phi.set(static_cast<Vertex>(v), static_cast<Color>(c));
  }
  return phi;
}

inline void write_instance(std::ostream& out, const EquitableInstance& inst) {
  out << "p ec " << inst.graph.n() << ' ' << inst.k << '\n';
  for (auto [u, v] : inst.graph.edges()) out << "e " << u << ' ' << v << '\n';
}

inline void write_instance(std::ostream& out, const NumberListInstance& inst) {
  out << "p nlc " << inst.graph.n() << ' ' << inst.color_count() << '\n';
  for (auto [u, v] : inst.graph.edges()) out << "e " << u << ' ' << v << '\n';
  for (Vertex v = 1; v <= inst.graph.n(); ++v) {
    out << "l " << v;
    for (Color c : inst.list_of(v)) out << ' ' << c;
    out << '\n';
  }
  for (Color c = 1; c <= inst.color_count(); ++c)
    out << "h " << c << ' ' << inst.targets[static_cast<size_t>(c)] << '\n';
}

inline void write_instance(std::ostream& out, const MCInstance& inst) {
  out << "p mc " << inst.graph.n() << ' ' << inst.k << '\n';
  for (Vertex v = 1; v <= inst.graph.n(); ++v)
    out << "v " << v << ' ' << inst.part_of[static_cast<size_t>(v)] << '\n';
  for (auto [u, v] : inst.graph.edges()) out << "e " << u << ' ' << v << '\n';
}

inline void write_coloring(std::ostream& out, const Coloring& phi) {
  for (Vertex v = 1; v <= phi.n(); ++v)
    if (phi.colored(v)) out << "c " << v << ' ' << phi.at(v) << '\n';
}

}  // namespace equicolor
