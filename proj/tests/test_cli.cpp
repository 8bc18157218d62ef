#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kdelab/cli.hpp"

using kdelab::cli::deterministic_view;
using kdelab::cli::run;

namespace {
int count_data_rows(const std::string& csv) {
  int rows = -1;  // skip the header line
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    if (eol == std::string::npos) eol = csv.size();
    if (eol > pos && csv[pos] != '#') ++rows;
    pos = eol + 1;
  }
  return rows;
}
}  // namespace

TEST_CASE("schur-check runs green") {
  auto res = run({"schur-check", "--max-weight", "4", "--max-m", "3", "--trials", "2"});
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("FAIL") == std::string::npos);
  CHECK(count_data_rows(res.output) == 25);  // partitions of weight <= 4 into m <= 3 parts
}

TEST_CASE("tau-table runs green for each kernel family") {
  for (const char* k : {"tstudent:rho=1", "rq:sigma=2", "cauchy"}) {
    auto res = run({"tau-table", "--kernel", k, "--dmax", "4"});
    CHECK(res.exit_code == 0);
    CHECK(count_data_rows(res.output) == 4);
  }
  auto g = run({"tau-table", "--kernel", "gaussian:B=2", "--dmax", "3"});
  CHECK(g.exit_code == 0);
  // non-integer parameter routes through big-float
  auto bf = run({"tau-table", "--kernel", "tstudent:rho=3/2", "--dmax", "3"});
  CHECK(bf.exit_code == 0);
  CHECK(bf.output.find("exact") == std::string::npos);
}

TEST_CASE("reduction-demo: exact, budget and over-budget noise") {
  for (const char* k : {"tstudent:rho=1", "rq:sigma=1", "gaussian:B=1", "cauchy"}) {
    auto clean = run({"reduction-demo", "--kernel", k, "--n", "6", "--m", "3", "--noise", "none",
                      "--trials", "2", "--seed", "5"});
    CHECK(clean.exit_code == 0);
    CHECK(clean.output.find("MISMATCH") == std::string::npos);
    auto budget = run({"reduction-demo", "--kernel", k, "--n", "6", "--m", "3", "--noise", "budget",
                       "--trials", "2", "--seed", "5"});
    CHECK(budget.exit_code == 0);
  }
  // 3x the budget: failures are expected and reported, exit stays 0
  auto over = run({"reduction-demo", "--kernel", "tstudent:rho=1", "--n", "6", "--m", "3", "--noise",
                   "3x", "--trials", "2", "--seed", "5"});
  CHECK(over.exit_code == 0);
  CHECK((over.output.find("MISMATCH") != std::string::npos ||
         over.output.find("ambiguous") != std::string::npos));
}

TEST_CASE("kde-bench all solvers") {
  auto naive = run({"kde-bench", "--solver", "naive", "--kernel", "cauchy", "--n", "16", "--m", "2",
                    "--eps", "0.001", "--seed", "3"});
  CHECK(naive.exit_code == 0);
  auto sampling = run({"kde-bench", "--solver", "sampling", "--kernel", "cauchy", "--n", "16", "--m",
                       "2", "--eps", "0.25", "--seed", "3"});
  CHECK(sampling.exit_code == 0);
  auto poly = run({"kde-bench", "--solver", "poly", "--kernel", "gaussian:B=1", "--n", "16", "--m",
                   "2", "--eps", "0.001", "--seed", "3"});
  CHECK(poly.exit_code == 0);
  CHECK(poly.output.find("pass") != std::string::npos);
  // --B rescales the kernel through the domain-scaling map f_B(x) = f(Bx)
  auto scaled = run({"kde-bench", "--solver", "poly", "--kernel", "gaussian:B=1", "--B", "3", "--n",
                     "12", "--m", "2", "--eps", "0.001", "--seed", "3"});
  CHECK(scaled.exit_code == 0);
  CHECK(scaled.output.find("pass") != std::string::npos);
}

TEST_CASE("zov-demo") {
  auto res = run({"zov-demo", "--n", "6", "--m", "3", "--emax", "2", "--trials", "8", "--seed", "9"});
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("FAIL") == std::string::npos);
}

TEST_CASE("determinism: identical config reproduces identical data rows") {
  std::vector<std::vector<std::string>> configs = {
      {"schur-check", "--max-weight", "3", "--max-m", "2"},
      {"tau-table", "--kernel", "tstudent:rho=1", "--dmax", "3"},
      {"reduction-demo", "--kernel", "cauchy", "--n", "5", "--m", "3", "--noise", "budget", "--seed",
       "11"},
      {"kde-bench", "--solver", "sampling", "--kernel", "cauchy", "--n", "8", "--m", "2", "--eps",
       "0.3", "--seed", "2"},
      {"zov-demo", "--n", "4", "--m", "2", "--trials", "3", "--seed", "1"},
  };
  for (auto cfg : configs) {
    auto a = run(cfg);
    auto b = run(cfg);
    CHECK(a.exit_code == b.exit_code);
    CHECK(deterministic_view(a.output) == deterministic_view(b.output));
    // json format too
    cfg.push_back("--format");
    cfg.push_back("json");
    auto ja = run(cfg);
    auto jb = run(cfg);
    CHECK(deterministic_view(ja.output) == deterministic_view(jb.output));
    CHECK(nlohmann::json::parse(ja.output).contains("rows"));
  }
}

TEST_CASE("--out writes the same artifact to a file") {
  std::string path = "cli_out_test.csv";
  auto res = run({"tau-table", "--kernel", "cauchy", "--dmax", "2", "--out", path});
  CHECK(res.exit_code == 0);
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == res.output);
  std::remove(path.c_str());
  CHECK(run({"tau-table", "--kernel", "cauchy", "--dmax", "2", "--out",
             "/no/such/dir/x.csv"}).exit_code == 1);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"no-such-command"}).exit_code == 1);
  CHECK(run({"tau-table", "--kernel", "bogus", "--dmax", "2"}).exit_code == 1);
  CHECK(run({"kde-bench", "--solver", "warp"}).exit_code == 1);
  CHECK(run({}).exit_code == 1);
}
