#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#ifndef GUEDGE_CLI_PATH
#define GUEDGE_CLI_PATH "guedge"
#endif

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = "/tmp/guedge_cli_test_" + std::to_string(++counter);
  const std::string cmd = std::string(GUEDGE_CLI_PATH) + " " + args + " > " + base +
                          ".out 2> " + base + ".err";
  const int rc = std::system(cmd.c_str());
  auto slurp = [](const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  CliResult r{WEXITSTATUS(rc), slurp(base + ".out"), slurp(base + ".err")};
  std::remove((base + ".out").c_str());
  std::remove((base + ".err").c_str());
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("tw-table reports both routes equal at s=0") {
  const CliResult r = run_cli("tw-table --s-grid 0");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);  // header + one data row
  CHECK(rows[0][1] == "F2_det");
  const double det = std::stod(rows[1][1]);
  const double qint = std::stod(rows[1][2]);
  CHECK(std::abs(det - qint) < 1e-9);
}

TEST_CASE("tw-table far right prints exactly one") {
  const CliResult r = run_cli("tw-table --s-grid 8");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("1.00000000000000e+00") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("tw-table --s-grid \"\"").exit_code == 2);
  CHECK(run_cli("tw-table --s-grid -11").exit_code == 2);
  CHECK(run_cli("tw-table").exit_code == 2);
  CHECK(run_cli("verify --check no-such-check").exit_code == 2);
  CHECK(run_cli("mc --n 2 --t-grid 1 --num-samples 5").exit_code == 2);
}

TEST_CASE("edgeworth at the n=1 median") {
  // tau(s) = 0 at s = -2 for n=1, c=0
  const CliResult r = run_cli("edgeworth --n-list 1 --s-grid -2 --c 0");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(std::stod(rows[1][3]) - 0.5) < 1e-10);  // F_exact
  // c=0 makes order-0 and order-1 columns identical
  CHECK(rows[1][4] == rows[1][5]);
}

TEST_CASE("edgeworth emits a slopes block when n-list is long enough") {
  const CliResult r =
      run_cli("edgeworth --n-list 16,32,64,128 --s-grid 0 --c 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("slope_order0") != std::string::npos);
}

TEST_CASE("verify single check selection and exit codes") {
  const CliResult ok = run_cli("verify --check n1-median");
  CHECK(ok.exit_code == 0);
  const auto rows = csv_rows(ok.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "n1-median");
  CHECK(rows[1][2] == "1");  // pass column

  // tightening the tolerance far below double precision must fail with exit 1
  const CliResult tight = run_cli("verify --check n1-median --tol-scale 1e-9");
  CHECK(tight.exit_code == 1);
  const auto trows = csv_rows(tight.out);
  CHECK(trows[1][2] == "0");
}

TEST_CASE("csv output is byte-identical across runs") {
  const CliResult a = run_cli("tw-table --s-grid -2,0,2");
  const CliResult b = run_cli("tw-table --s-grid -2,0,2");
  CHECK(a.out == b.out);
  const CliResult m1 = run_cli("mc --n 2 --num-samples 500 --t-grid 1,2 --seed 7");
  const CliResult m2 = run_cli("mc --n 2 --num-samples 500 --t-grid 1,2 --seed 7");
  CHECK(m1.out == m2.out);
}

TEST_CASE("json output mirrors the csv fields") {
  const CliResult r = run_cli("tw-table --s-grid 0 --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "tw-table");
  CHECK(j["config"].contains("m"));
  CHECK(j["config"].contains("seed"));
  REQUIRE(j["columns"].size() == 6);
  REQUIRE(j["rows"].size() == 1);
  const double det = j["rows"][0][1].get<double>();
  const CliResult c = run_cli("tw-table --s-grid 0");
  CHECK(std::abs(det - std::stod(csv_rows(c.out)[1][1])) == 0.0);
}

TEST_CASE("verify json mirrors the csv fields") {
  const CliResult r = run_cli("verify --check n1-median --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "verify");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0][0] == "n1-median");
  CHECK(j["rows"][0][2] == 1);  // pass
  CHECK(j["summary"]["failures"] == "0");
}

TEST_CASE("mc emits the confidence-interval verdict per point") {
  const CliResult r =
      run_cli("mc --n 4 --num-samples 20000 --t-grid 2.0,2.8,3.6 --seed 42");
  REQUIRE(r.exit_code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][4] == "inside_CI");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK((rows[i][4] == "0" || rows[i][4] == "1"));
    CHECK(rows[i][4] == "1");  // honest sampler should sit inside at N=2e4
  }
}

TEST_CASE("output file writing") {
  const std::string path = "/tmp/guedge_cli_test_file.csv";
  const CliResult r = run_cli("tw-table --s-grid 0 -o " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string first;
  std::getline(f, first);
  CHECK(first == "# guedge tw-table");
  std::remove(path.c_str());
}

}  // TEST_SUITE
