// Command-line front end: solvers, oracle, verifier, kernelization, and
// instance generators behind one executable.
//
// Exit codes: 0 = YES (witness on stdout), 1 = NO, 2 = usage or parse error,
// 3 = resource guard tripped.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "equicolor/cluster_solver.hpp"
#include "equicolor/cocluster_solver.hpp"
#include "equicolor/generators.hpp"
#include "equicolor/graph.hpp"
#include "equicolor/io.hpp"
#include "equicolor/kernels.hpp"
#include "equicolor/oracle.hpp"
#include "equicolor/pathmod_solver.hpp"

namespace eq = equicolor;

namespace {

int oracle_cap() {
  if (const char* env = std::getenv("EQUICOLOR_MAX_ORACLE_N")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return eq::kDefaultOracleCap;
}

eq::AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw eq::ParseError(0, "cannot open '" + path + "'");
  return eq::parse_instance(in);
}

eq::EquitableInstance load_equitable(const std::string& path) {
  auto any = load_instance(path);
  if (auto* p = std::get_if<eq::EquitableInstance>(&any)) return std::move(*p);
  throw eq::ParseError(0, "expected a 'p ec' instance in '" + path + "'");
}

eq::NumberListInstance load_nlc(const std::string& path) {
  auto any = load_instance(path);
  if (auto* p = std::get_if<eq::NumberListInstance>(&any)) return std::move(*p);
  throw eq::ParseError(0, "expected a 'p nlc' instance in '" + path + "'");
}

eq::MCInstance load_mc(const std::string& path) {
  auto any = load_instance(path);
  if (auto* p = std::get_if<eq::MCInstance>(&any)) return std::move(*p);
  throw eq::ParseError(0, "expected a 'p mc' instance in '" + path + "'");
}

void emit_witness(const eq::Coloring& phi, std::ostream& out) { eq::write_coloring(out, phi); }

int answer_of(const std::optional<eq::Coloring>& phi) {
  if (!phi) return 1;
  emit_witness(*phi, std::cout);
  return 0;
}

// The auto sweep prefers the strongest applicable parameter: clique, then
// cluster, co-cluster, short paths, oracle fallback.
std::optional<eq::Coloring> solve_auto(const eq::Graph& g, int k, bool& decided, int& exit_code) {
  decided = true;
  exit_code = 0;
  constexpr int kBudget = 12;
  constexpr long long kNodeCap = 2'000'000;

  auto clique_mod = eq::clique_modulator_greedy(g);
  if (static_cast<int>(clique_mod.u.size()) <= kBudget) {
    auto outcome = eq::kernel_distance_to_clique(g, k);
    if (outcome.decided) return outcome.yes ? outcome.witness : std::nullopt;
  }
  try {
    long long nodes = kNodeCap;
    for (int b = 0; b <= kBudget; ++b)
      if (auto mod = eq::cluster_modulator(g, b, &nodes))
        return eq::solve_distance_to_cluster(g, k, *mod);
  } catch (const eq::GuardError&) {
  }
  try {
    long long nodes = kNodeCap;
    for (int b = 0; b <= kBudget; ++b)
      if (auto mod = eq::cocluster_modulator(g, b, &nodes))
        return eq::solve_distance_to_cocluster(g, k, *mod);
  } catch (const eq::GuardError&) {
  }
  for (int ell = 1; ell <= 8; ++ell) {
    try {
      long long nodes = kNodeCap;
      for (int b = 0; b <= kBudget; ++b)
        if (auto mod = eq::path_modulator(g, ell, b, &nodes))
          return eq::solve_path_modulator(g, k, ell, *mod);
    } catch (const eq::GuardError&) {
    }
  }
  if (g.n() <= oracle_cap()) return eq::brute_force_equitable(g, k, oracle_cap());
  decided = false;
  exit_code = 3;
  return std::nullopt;
}

eq::Graph named_host(const std::string& name) {
  auto cycle = [](int m) {
    eq::Graph g(m);
    for (int v = 1; v < m; ++v) g.add_edge(v, v + 1);
    g.add_edge(m, 1);
    return g;
  };
  auto path = [](int m) {
    eq::Graph g(m);
    for (int v = 1; v < m; ++v) g.add_edge(v, v + 1);
    return g;
  };
  auto star = [](int m) {
    eq::Graph g(m + 1);
    for (int v = 2; v <= m + 1; ++v) g.add_edge(1, v);
    return g;
  };
  if (name == "k4") {
    eq::Graph g(4);
    for (int u = 1; u <= 4; ++u)
      for (int v = u + 1; v <= 4; ++v) g.add_edge(u, v);
    return g;
  }
  if (name == "theta") {
    // two vertices joined by three paths of length two
    eq::Graph g(5);
    for (int mid = 3; mid <= 5; ++mid) {
      g.add_edge(1, mid);
      g.add_edge(mid, 2);
    }
    return g;
  }
  if (name.size() > 1 && name[0] == 'c') return cycle(std::stoi(name.substr(1)));
  if (name.size() > 1 && name[0] == 'p') return path(std::stoi(name.substr(1)));
  if (name.size() > 4 && name.rfind("star", 0) == 0) return star(std::stoi(name.substr(4)));
  throw std::invalid_argument("unknown host '" + name + "'");
}

std::vector<eq::Vertex> parse_vertex_list(const std::string& csv) {
  std::vector<eq::Vertex> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

int run_bench(const std::string& suite, uint64_t seed);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equitable coloring toolkit"};
  app.require_subcommand(1);

  std::string algo = "auto", instance_path, coloring_path, kind, out_path, lift_path;
  std::string model = "gnp", host_name = "k4", clique_csv, witness_out, suite = "solvers";
  int ell = 3, gen_n = 8, gen_d = 2, gen_k = 3, gen_class = 2, inst_index = 0, gen_colors = 3;
  long long gen_m = 2;
  double gen_p = 0.3;
  int sub_len = 9;
  uint64_t seed = 1;
  std::vector<std::string> mc_paths;

  auto* solve = app.add_subcommand("solve", "decide equitable colorability");
  solve->add_option("--algo", algo, "auto|dc|dcc|pathmod|oracle")->capture_default_str();
  solve->add_option("--ell", ell, "path length bound for pathmod")->capture_default_str();
  solve->add_option("instance", instance_path)->required();

  auto* solve_nlc_cmd = app.add_subcommand("solve-nlc", "number list coloring on disjoint paths");
  solve_nlc_cmd->add_option("instance", instance_path)->required();

  auto* verify = app.add_subcommand("verify", "check a coloring against an instance");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("coloring", coloring_path)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
  oracle_cmd->add_option("instance", instance_path)->required();

  auto* kernelize = app.add_subcommand("kernelize", "reduce an instance");
  kernelize->add_option("--kind", kind, "dclique|maxleaf")->required();
  kernelize->add_option("instance", instance_path)->required();
  kernelize->add_option("--out", out_path, "reduced instance file (default stdout)");
  kernelize->add_option("--lift-out", lift_path, "lift-data sidecar file");

  auto* generate = app.add_subcommand("generate", "emit instances");
  generate->add_option("--kind", kind, "nlc-hardness|cross-comp|ppt-chain|random")->required();
  generate->add_option("--out", out_path, "output file (default stdout)");
  generate->add_option("--mc", mc_paths, "multicolored clique instance file(s)");
  generate->add_option("--nlc", instance_path, "number-list instance file (ppt-chain)");
  generate->add_option("--clique", clique_csv, "planted clique vertices, comma separated");
  generate->add_option("--index", inst_index, "instance index holding the clique (cross-comp)");
  generate->add_option("--witness-out", witness_out, "write the constructive witness here");
  generate->add_option("--model", model, "gnp|cluster-plus|subdivision|mc-planted");
  generate->add_option("--n", gen_n)->capture_default_str();
  generate->add_option("--p", gen_p)->capture_default_str();
  generate->add_option("--d", gen_d)->capture_default_str();
  generate->add_option("--k", gen_k)->capture_default_str();
  generate->add_option("--colors", gen_colors, "k written into generated ec headers")
      ->capture_default_str();
  generate->add_option("--class-size", gen_class)->capture_default_str();
  generate->add_option("--m", gen_m, "edges per class pair (mc-planted)")->capture_default_str();
  generate->add_option("--host", host_name, "k4|theta|c<m>|p<m>|star<m>")->capture_default_str();
  generate->add_option("--len", sub_len, "internal path length (subdivision)")
      ->capture_default_str();
  generate->add_option("--seed", seed)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "randomized self-check sweeps");
  bench->add_option("--suite", suite, "solvers|kernels|nlc")->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) {
      auto inst = load_equitable(instance_path);
      std::optional<eq::Coloring> phi;
      if (algo == "dc") {
        phi = eq::solve_distance_to_cluster(inst.graph, inst.k);
      } else if (algo == "dcc") {
        phi = eq::solve_distance_to_cocluster(inst.graph, inst.k);
      } else if (algo == "pathmod") {
        phi = eq::solve_path_modulator(inst.graph, inst.k, ell);
      } else if (algo == "oracle") {
        phi = eq::brute_force_equitable(inst.graph, inst.k, oracle_cap());
      } else if (algo == "auto") {
        bool decided = false;
        int code = 0;
        phi = solve_auto(inst.graph, inst.k, decided, code);
        if (!decided) return code;
      } else {
        std::cerr << "unknown algorithm '" << algo << "'\n";
        return 2;
      }
      if (phi) {
        auto rep = eq::verify_coloring(inst, *phi);
        if (!rep.ok()) throw eq::ContractViolation("internal: witness failed verification");
      }
      return answer_of(phi);
    }

    if (solve_nlc_cmd->parsed()) {
      auto inst = load_nlc(instance_path);
      auto phi = eq::solve_nlc_paths(inst);
      if (phi) {
        auto rep = eq::verify_coloring(inst, *phi);
        if (!rep.ok()) throw eq::ContractViolation("internal: witness failed verification");
      }
      return answer_of(phi);
    }

    if (verify->parsed()) {
      auto any = load_instance(instance_path);
      std::ifstream cin_file(coloring_path);
      if (!cin_file) throw eq::ParseError(0, "cannot open '" + coloring_path + "'");
      int n = std::visit([](const auto& i) { return i.graph.n(); }, any);
      auto phi = eq::parse_coloring(cin_file, n);
      eq::VerificationReport rep;
      if (auto* p = std::get_if<eq::EquitableInstance>(&any))
        rep = eq::verify_coloring(*p, phi);
      else if (auto* p2 = std::get_if<eq::NumberListInstance>(&any))
        rep = eq::verify_coloring(*p2, phi);
      else
        throw eq::ParseError(0, "verify expects an ec or nlc instance");
      if (rep.ok()) {
        std::cout << "valid\n";
        return 0;
      }
      if (!rep.complete) std::cout << "invalid: coloring incomplete\n";
      if (!rep.proper && rep.violating_edge)
        std::cout << "invalid: monochromatic edge " << rep.violating_edge->first << " "
                  << rep.violating_edge->second << "\n";
      if (!rep.lists_ok && rep.violating_list_vertex)
        std::cout << "invalid: vertex " << *rep.violating_list_vertex << " off its list\n";
      if (!rep.sizes_ok && rep.violating_color)
        std::cout << "invalid: class size of color " << *rep.violating_color << "\n";
      return 1;
    }

    if (oracle_cmd->parsed()) {
      auto any = load_instance(instance_path);
      if (auto* p = std::get_if<eq::EquitableInstance>(&any))
        return answer_of(eq::brute_force_equitable(p->graph, p->k, oracle_cap()));
      if (auto* p2 = std::get_if<eq::NumberListInstance>(&any))
        return answer_of(eq::brute_force_nlc(*p2, oracle_cap()));
      throw eq::ParseError(0, "oracle expects an ec or nlc instance");
    }

    if (kernelize->parsed()) {
      auto inst = load_equitable(instance_path);
      eq::KernelOutcome outcome;
      if (kind == "dclique")
        outcome = eq::kernel_distance_to_clique(inst.graph, inst.k);
      else if (kind == "maxleaf")
        outcome = eq::kernel_max_leaf(inst.graph, inst.k);
      else {
        std::cerr << "unknown kernel kind '" << kind << "'\n";
        return 2;
      }
      if (outcome.decided) {
        std::ofstream file;
        auto& os = open_out(file, out_path);
        os << "# decided " << (outcome.yes ? "yes" : "no") << "\n";
        if (outcome.witness) emit_witness(*outcome.witness, os);
        return outcome.yes ? 0 : 1;
      }
      std::ofstream file;
      auto& os = open_out(file, out_path);
      eq::write_instance(os, *outcome.reduced);
      if (!lift_path.empty()) {
        std::ofstream lf(lift_path);
        if (!lf) throw std::runtime_error("cannot write '" + lift_path + "'");
        for (const auto& rp : outcome.lift->paths) {
          lf << "path " << rp.host_u << ' ' << rp.host_v;
          for (eq::Vertex v : rp.vertices) lf << ' ' << v;
          lf << '\n';
        }
        lf << "iso " << outcome.lift->iso_count << '\n';
      }
      return 0;
    }

    if (generate->parsed()) {
      std::ofstream file;
      if (kind == "nlc-hardness") {
        if (mc_paths.size() != 1) throw std::invalid_argument("nlc-hardness needs exactly one --mc");
        auto mc = eq::regularize_mc(load_mc(mc_paths[0]));
        auto hard = eq::gen_nlc_hardness(mc);
        auto& os = open_out(file, out_path);
        eq::write_instance(os, hard.nlc);
        if (!clique_csv.empty()) {
          auto phi = eq::witness_nlc(hard, mc, parse_vertex_list(clique_csv));
          auto rep = eq::verify_coloring(hard.nlc, phi);
          if (!rep.ok()) throw eq::ContractViolation("internal: hardness witness invalid");
          std::ofstream wf(witness_out.empty() ? "witness.col" : witness_out);
          emit_witness(phi, wf);
        }
        return 0;
      }
      if (kind == "cross-comp") {
        if (mc_paths.empty()) throw std::invalid_argument("cross-comp needs --mc files");
        std::vector<eq::MCInstance> insts;
        for (auto& p : mc_paths) insts.push_back(eq::regularize_mc(load_mc(p)));
        auto cx = eq::gen_cross_composition(insts);
        auto& os = open_out(file, out_path);
        eq::write_instance(os, cx.nlc);
        if (!clique_csv.empty()) {
          auto phi = eq::witness_cross(cx, inst_index, parse_vertex_list(clique_csv));
          auto rep = eq::verify_coloring(cx.nlc, phi);
          if (!rep.ok()) throw eq::ContractViolation("internal: composition witness invalid");
          std::ofstream wf(witness_out.empty() ? "witness.col" : witness_out);
          emit_witness(phi, wf);
        }
        return 0;
      }
      if (kind == "ppt-chain") {
        auto nlc = load_nlc(instance_path);
        auto lift = eq::lift_lists_to_equitable(nlc);
        auto& os = open_out(file, out_path);
        eq::write_instance(os, lift.inst);
        return 0;
      }
      if (kind == "random") {
        auto& os = open_out(file, out_path);
        if (model == "gnp") {
          eq::write_instance(os, eq::EquitableInstance{eq::gen_gnp(gen_n, gen_p, seed), gen_colors});
        } else if (model == "cluster-plus") {
          eq::write_instance(
              os, eq::EquitableInstance{eq::gen_cluster_plus(gen_n, gen_d, seed), gen_colors});
        } else if (model == "subdivision") {
          auto host = named_host(host_name);
          std::vector<int> lens(static_cast<size_t>(host.m()), sub_len);
          eq::write_instance(os, eq::EquitableInstance{eq::gen_subdivision(host, lens), gen_colors});
        } else if (model == "mc-planted") {
          auto [mc, clique] = eq::gen_mc_planted(gen_k, gen_class, gen_m, seed);
          os << "#";
          for (eq::Vertex v : clique) os << ' ' << v;
          os << '\n';
          eq::write_instance(os, mc);
        } else {
          std::cerr << "unknown model '" << model << "'\n";
          return 2;
        }
        return 0;
      }
      std::cerr << "unknown generator kind '" << kind << "'\n";
      return 2;
    }

    if (bench->parsed()) return run_bench(suite, seed);
  } catch (const eq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const eq::GuardError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

namespace {

int run_bench(const std::string& suite, uint64_t seed) {
  uint64_t st = seed;
  int checked = 0, failures = 0;
  if (suite == "solvers") {
    for (int round = 0; round < 60; ++round) {
      int n = 4 + static_cast<int>(eq::detail::rng_below(st, 4));
      eq::Graph g = eq::gen_gnp(n, 0.15 + 0.1 * static_cast<double>(eq::detail::rng_below(st, 6)),
                                eq::detail::rng_next(st));
      for (int k = 1; k <= n; ++k) {
        bool oracle = eq::brute_force_equitable(g, k).has_value();
        bool dc = eq::solve_distance_to_cluster(g, k).has_value();
        bool dcc = eq::solve_distance_to_cocluster(g, k).has_value();
        checked += 2;
        if (dc != oracle) ++failures;
        if (dcc != oracle) ++failures;
      }
    }
  } else if (suite == "kernels") {
    for (int round = 0; round < 150; ++round) {
      int n = 4 + static_cast<int>(eq::detail::rng_below(st, 7));
      eq::Graph g = eq::gen_gnp(n, 0.6, eq::detail::rng_next(st));
      int k = 1 + static_cast<int>(eq::detail::rng_below(st, static_cast<uint64_t>(n)));
      auto outcome = eq::kernel_distance_to_clique(g, k);
      bool oracle = eq::brute_force_equitable(g, k).has_value();
      bool got = outcome.decided
                     ? outcome.yes
                     : eq::brute_force_equitable(outcome.reduced->graph, k).has_value();
      ++checked;
      if (got != oracle) ++failures;
    }
  } else if (suite == "nlc") {
    for (int round = 0; round < 200; ++round) {
      int parts = 1 + static_cast<int>(eq::detail::rng_below(st, 3));
      std::vector<int> lens;
      int n = 0;
      for (int i = 0; i < parts; ++i) {
        lens.push_back(1 + static_cast<int>(eq::detail::rng_below(st, 4)));
        n += lens.back();
      }
      eq::NumberListInstance inst;
      inst.graph = eq::Graph(n);
      inst.lists.assign(static_cast<size_t>(n) + 1, {});
      int q = 3;
      eq::Vertex v = 1;
      for (int len : lens) {
        for (int i = 1; i < len; ++i) inst.graph.add_edge(v + i - 1, v + i);
        v += len;
      }
      for (eq::Vertex u = 1; u <= n; ++u) {
        std::vector<eq::Color> lst;
        for (eq::Color c = 1; c <= q; ++c)
          if (eq::detail::rng_chance(st, 0.7)) lst.push_back(c);
        if (lst.empty()) lst.push_back(1 + static_cast<eq::Color>(eq::detail::rng_below(st, 3)));
        inst.lists[static_cast<size_t>(u)] = lst;
      }
      inst.targets.assign(static_cast<size_t>(q) + 1, 0);
      int left = n;
      for (eq::Color c = 1; c < q; ++c) {
        long long t = static_cast<long long>(eq::detail::rng_below(st, static_cast<uint64_t>(left + 1)));
        inst.targets[static_cast<size_t>(c)] = t;
        left -= static_cast<int>(t);
      }
      inst.targets[static_cast<size_t>(q)] = left;
      bool fast = eq::solve_nlc_paths(inst).has_value();
      bool slow = eq::brute_force_nlc(inst).has_value();
      ++checked;
      if (fast != slow) ++failures;
    }
  } else {
    std::cerr << "unknown suite '" << suite << "'\n";
    return 2;
  }
  std::cout << "suite " << suite << ": " << checked << " checks, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace
