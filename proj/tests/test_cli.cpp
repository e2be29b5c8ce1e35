#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "equicolor/io.hpp"
#include "support.hpp"

namespace {

std::string cli() { return EQUICOLOR_CLI_PATH; }

int run(const std::string& args, std::string* out = nullptr) {
  std::string cmd = cli() + " " + args + " > /tmp/equicolor_cli_out.txt 2>/dev/null";
  int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream f("/tmp/equicolor_cli_out.txt");
    std::stringstream ss;
    ss << f.rdbuf();
    *out = ss.str();
  }
  return WEXITSTATUS(status);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
}

}  // namespace

TEST_CASE("solve answers with exit codes and verified witnesses") {
  // the worked 6-vertex instance from the extension-network tests
  write_file("/tmp/eq_worked.ec",
             "p ec 6 2\ne 1 2\ne 2 4\ne 4 3\ne 3 1\ne 1 5\ne 5 6\ne 6 2\n");
  std::string out;
  REQUIRE(run("solve --algo dc /tmp/eq_worked.ec", &out) == 0);
  // the witness parses back and re-verifies
  {
    std::stringstream ss(out);
    auto phi = equicolor::parse_coloring(ss, 6);
    auto inst = test_support::worked_extension_graph();
    REQUIRE(equicolor::verify_coloring(equicolor::EquitableInstance{inst, 2}, phi).ok());
  }
  REQUIRE(run("solve --algo dcc /tmp/eq_worked.ec") == 0);
  REQUIRE(run("solve --algo auto /tmp/eq_worked.ec") == 0);
  REQUIRE(run("oracle /tmp/eq_worked.ec") == 0);

  write_file("/tmp/eq_k4.ec", "p ec 4 3\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
  REQUIRE(run("oracle /tmp/eq_k4.ec") == 1);
  REQUIRE(run("solve --algo dc /tmp/eq_k4.ec") == 1);
  REQUIRE(run("solve --algo pathmod --ell 3 /tmp/eq_k4.ec") == 1);
}

TEST_CASE("verify reports violations and exits 1") {
  write_file("/tmp/eq_tri.ec", "p ec 3 2\ne 1 2\ne 2 3\ne 1 3\n");
  write_file("/tmp/eq_tri.col", "c 1 1\nc 2 2\nc 3 1\n");
  std::string out;
  REQUIRE(run("verify /tmp/eq_tri.ec /tmp/eq_tri.col", &out) == 1);
  REQUIRE(out.find("monochromatic edge 1 3") != std::string::npos);

  write_file("/tmp/eq_p3.ec", "p ec 3 2\ne 1 2\ne 2 3\n");
  write_file("/tmp/eq_p3.col", "c 1 1\nc 2 2\nc 3 1\n");
  REQUIRE(run("verify /tmp/eq_p3.ec /tmp/eq_p3.col", &out) == 0);
  REQUIRE(out.find("valid") != std::string::npos);
}

TEST_CASE("usage and parse problems exit 2") {
  REQUIRE(run("solve --algo bogus /tmp/eq_p3.ec") == 2);
  write_file("/tmp/eq_bad.ec", "p ec 3 2\ne 1 9\n");
  REQUIRE(run("solve --algo dc /tmp/eq_bad.ec") == 2);
  REQUIRE(run("nonsense") == 2);
}

TEST_CASE("the oracle guard trips exit code 3") {
  std::stringstream ss;
  ss << "p ec 20 2\n";
  for (int v = 1; v < 20; ++v) ss << "e " << v << ' ' << v + 1 << "\n";
  write_file("/tmp/eq_long_path.ec", ss.str());
  REQUIRE(run("solve --algo oracle /tmp/eq_long_path.ec") == 3);
  // but the structural solvers handle it fine
  REQUIRE(run("solve --algo pathmod --ell 5 /tmp/eq_long_path.ec") == 0);
}

TEST_CASE("generate, kernelize, and solve-nlc round trip through files") {
  std::string out;
  REQUIRE(run("generate --kind random --model mc-planted --k 3 --class-size 2 --m 2 --seed 5 "
              "--out /tmp/eq_mc.mc",
              &out) == 0);
  std::ifstream f("/tmp/eq_mc.mc");
  std::string first_line;
  std::getline(f, first_line);
  REQUIRE(first_line.rfind("#", 0) == 0);  // planted clique comment
  std::string clique_csv;
  {
    std::stringstream ss(first_line.substr(1));
    int v;
    while (ss >> v) {
      if (!clique_csv.empty()) clique_csv += ",";
      clique_csv += std::to_string(v);
    }
  }
  REQUIRE(run("generate --kind nlc-hardness --mc /tmp/eq_mc.mc --clique " + clique_csv +
              " --witness-out /tmp/eq_hard.col --out /tmp/eq_hard.nlc") == 0);
  REQUIRE(run("verify /tmp/eq_hard.nlc /tmp/eq_hard.col", &out) == 0);
  REQUIRE(out.find("valid") != std::string::npos);

  REQUIRE(run("generate --kind random --model subdivision --host c12 --len 0 --colors 3 "
              "--out /tmp/eq_c12.ec") == 0);
  REQUIRE(run("kernelize --kind maxleaf /tmp/eq_c12.ec --out /tmp/eq_c12_red.ec "
              "--lift-out /tmp/eq_c12.lift") == 0);
  REQUIRE(run("oracle /tmp/eq_c12_red.ec") == 0);

  write_file("/tmp/eq_tiny.nlc",
             "p nlc 3 2\ne 1 2\ne 2 3\nl 1 1 2\nl 2 1 2\nl 3 1 2\nh 1 2\nh 2 1\n");
  REQUIRE(run("solve-nlc /tmp/eq_tiny.nlc", &out) == 0);
  REQUIRE(run("generate --kind ppt-chain --nlc /tmp/eq_tiny.nlc --out /tmp/eq_tiny_eq.ec") == 0);
  REQUIRE(run("oracle /tmp/eq_tiny_eq.ec") == 0);
}

TEST_CASE("auto mode and the oracle agree on the bundled corpus") {
  const char* corpus[] = {"ring6.ec",      "twin-squares.ec", "k4-three-colors.ec",
                          "odd-ring.ec",   "cliques-2-3.ec",  "star5.ec",
                          "bipartite-33.ec", "paw-tail.ec",   "near-clique.ec",
                          "sparse8.ec",    "two-colors-no.ec"};
  for (const char* name : corpus) {
    std::string path = std::string(EQUICOLOR_CORPUS_DIR) + "/" + name;
    int via_auto = run("solve --algo auto " + path);
    int via_oracle = run("oracle " + path);
    INFO(name);
    REQUIRE(via_auto == via_oracle);
    REQUIRE((via_auto == 0 || via_auto == 1));
  }
  std::string nlc = std::string(EQUICOLOR_CORPUS_DIR) + "/tiny-list.nlc";
  REQUIRE(run("solve-nlc " + nlc) == run("oracle " + nlc));
}

TEST_CASE("the oracle cap is adjustable through the environment") {
  std::string cmd = "EQUICOLOR_MAX_ORACLE_N=25 " + cli() +
                    " solve --algo oracle /tmp/eq_long_path.ec > /dev/null 2>&1";
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}

TEST_CASE("solver output is byte-stable across runs") {
  std::string a, b;
  REQUIRE(run("solve --algo dc /tmp/eq_worked.ec", &a) == 0);
  REQUIRE(run("solve --algo dc /tmp/eq_worked.ec", &b) == 0);
  REQUIRE(a == b);
}

TEST_CASE("bench suites pass on their default seeds") {
  std::string out;
  REQUIRE(run("bench --suite nlc --seed 3", &out) == 0);
  REQUIRE(out.find("0 failures") != std::string::npos);
}
