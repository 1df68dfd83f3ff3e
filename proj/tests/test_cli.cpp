#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sdfem/report.hpp"

namespace {

std::string cli_path() {
  const char* p = std::getenv("SDFEM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SDFEM_CLI must point at the sdfem executable");
  return p;
}

int run_cli(const std::string& args, const std::string& tag) {
  const std::string cmd =
      cli_path() + " " + args + " > cli_" + tag + ".out 2> cli_" + tag + ".err";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  os << content;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("help exits cleanly and names the subcommands") {
  CHECK(run_cli("--help", "help") == 0);
  const std::string out = slurp("cli_help.out");
  CHECK(out.find("solve") != std::string::npos);
  CHECK(out.find("converge") != std::string::npos);
  CHECK(out.find("verify") != std::string::npos);
}

TEST_CASE("solve writes the solution and reports stats") {
  CHECK(run_cli("solve --N 8 --eps 1e-8 --out cli_sol.csv", "solve") == 0);
  const std::string sol = slurp("cli_sol.csv");
  CHECK(sol.rfind("node,x,y,value", 0) == 0);
  CHECK(count_lines(sol) == 82);  // header + 81 nodes
  const std::string stats = slurp("cli_solve.out");
  CHECK(stats.find("\"converged\": true") != std::string::npos);
  CHECK(stats.find("\"N\": 8") != std::string::npos);
}

TEST_CASE("solve can dump the assembled system") {
  CHECK(run_cli("solve --N 8 --eps 1e-8 --out cli_sol2.csv --dump-matrix cli_mat.mtx",
                "dump") == 0);
  const std::string mtx = slurp("cli_mat.mtx");
  CHECK(mtx.rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  // 49 interior unknowns at N=8.
  CHECK(mtx.find("49 49 ") != std::string::npos);
}

TEST_CASE("invalid arguments exit with code 2") {
  CHECK(run_cli("solve --N 7 --eps 1e-8", "odd") == 2);
  CHECK(run_cli("solve --N 8 --eps -1", "negeps") == 2);
  CHECK(run_cli("--not-a-flag", "badflag") == 2);
  CHECK(run_cli("converge --format yaml", "badfmt") == 2);
  CHECK(run_cli("frobnicate", "badcmd") == 2);
}

TEST_CASE("converge honors a config file and emits a parsable report") {
  write_file("cli_conv.json", R"({
    "problem": "sinexp",
    "N": [8, 16],
    "epsilon": [1e-8],
    "postprocess": true,
    "output": {"path": "cli_conv.csv", "format": "csv"}
  })");
  CHECK(run_cli("converge --config cli_conv.json", "conv") == 0);
  std::ifstream is("cli_conv.csv");
  const std::vector<sdfem::ParsedRow> rows = sdfem::parse_report_csv(is);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 8);
  CHECK(rows[1].n == 16);
  REQUIRE(rows[0].rate_ie.has_value());
  CHECK(*rows[0].rate_ie == doctest::Approx(0.74).epsilon(0.1));
  REQUIRE(rows[0].err_post_energy.has_value());
  CHECK_FALSE(rows[1].rate_ie.has_value());
}

TEST_CASE("command line overrides the config file") {
  write_file("cli_conv2.json", R"({
    "N": [8, 16],
    "epsilon": [1e-8],
    "output": {"path": "cli_conv2.csv"}
  })");
  CHECK(run_cli("converge --config cli_conv2.json --N 8 --eps 1e-6 --format markdown "
                "--out cli_conv2.md",
                "conv2") == 0);
  const std::string md = slurp("cli_conv2.md");
  CHECK(md.find("| N | epsilon |") != std::string::npos);
  CHECK(md.find("1e-06") != std::string::npos);
  CHECK(md.find("| 16 |") == std::string::npos);
}

TEST_CASE("verify suite passes on defaults and fails on absurd stabilization") {
  write_file("cli_verify.json", R"({
    "verify": {"N": [8], "epsilon": [1e-2], "random_fields": 20, "seed": 1}
  })");
  CHECK(run_cli("verify --config cli_verify.json", "verify") == 0);
  const std::string out = slurp("cli_verify.out");
  CHECK(out.find("[ok]") != std::string::npos);
  CHECK(out.find("[FAIL]") == std::string::npos);
  CHECK(out.find("coercivity") != std::string::npos);

  CHECK(run_cli("verify --config cli_verify.json --cstar 1e6", "verifybad") == 3);
  const std::string bad = slurp("cli_verifybad.out");
  CHECK(bad.find("[FAIL]") != std::string::npos);
}

TEST_CASE("all = converge + verify from one config") {
  write_file("cli_all.json", R"({
    "problem": "sinexp",
    "N": [8, 16],
    "epsilon": [1e-8],
    "postprocess": true,
    "output": {"path": "cli_all.csv"},
    "verify": {"N": [8], "epsilon": [1e-2], "random_fields": 10, "seed": 1}
  })");
  CHECK(run_cli("all --config cli_all.json", "all") == 0);
  std::ifstream is("cli_all.csv");
  CHECK(sdfem::parse_report_csv(is).size() == 2);
  const std::string out = slurp("cli_all.out");
  CHECK(out.find("[ok]") != std::string::npos);
}

TEST_CASE("config file must exist and parse") {
  CHECK(run_cli("converge --config does_not_exist.json", "noconf") == 2);
  write_file("cli_badjson.json", "{ not json");
  CHECK(run_cli("converge --config cli_badjson.json", "badjson") == 2);
}

} // TEST_SUITE
