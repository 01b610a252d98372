#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "padicg/cli.hpp"

using namespace padicg;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"count"}).code == 2);
  CHECK(run({"count", "--p", "5", "--d", "3", "--format", "xml"}).code == 2);
  CHECK(run({"count", "--p", "5", "--d", "3", "--lambda", "x"}).code == 2);
  CHECK(run({"count", "--p", "5", "--d", "3", "--lambda", "5"}).code == 2);
  CHECK(run({"count", "--p", "9", "--d", "5"}).code == 2);
  CHECK(run({"gfun", "--p", "5", "--a", "1/5", "--b", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("violated hypotheses are named") {
  const auto pd = run({"verify", "theorem", "--p", "7", "--d", "7"});
  CHECK(pd.code == 2);
  CHECK(pd.err.find("p != d") != std::string::npos);
  const auto q1 = run({"count", "--p", "7", "--d", "3", "--method", "brute"});
  CHECK(q1.code == 2);
  CHECK(q1.err.find("q != 1 (mod d)") != std::string::npos);
}

TEST_CASE("count subcommand") {
  const auto brute = run({"count", "--p", "5", "--d", "3", "--method", "brute"});
  REQUIRE(brute.code == 0);
  const auto j = json::parse(brute.out);
  REQUIRE(j.size() == 5);
  CHECK(j[0]["N_affine"] == 25);
  CHECK(j[0]["projective"] == 6);

  const auto conj = run({"count", "--p", "5", "--d", "3", "--lambda", "0", "--method",
                         "conjecture", "--precision", "3"});
  CHECK(json::parse(conj.out)[0]["conjecture_residue"] == "100");

  const auto csv = run({"count", "--p", "7", "--d", "5", "--lambda", "1", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("theorem_residue") != std::string::npos);
  CHECK(csv.out.find(",401") != std::string::npos);

  const auto budget =
      run({"count", "--p", "7", "--d", "5", "--method", "brute", "--budget", "100"});
  CHECK(budget.code == 2);
  CHECK(budget.err.find("budget") != std::string::npos);
  CHECK(run({"count", "--p", "3", "--r", "2", "--d", "5", "--method", "conjecture"}).code == 2);
}

TEST_CASE("gfun subcommand") {
  const auto r = run({"gfun", "--p", "5", "--a", "1/3,2/3", "--b", "0,0", "--t", "3"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["residue"] == "622");
  CHECK(j["spec"]["a"] == json::array({"1/3", "2/3"}));
  const auto text =
      run({"gfun", "--p", "3", "--r", "2", "--a", "1/2", "--b", "1/4", "--t", "5", "--format",
           "text"});
  CHECK(text.code == 0);
  CHECK(text.out.rfind("G = ", 0) == 0);
}

TEST_CASE("verify subcommands") {
  const auto thm = run({"verify", "theorem", "--p", "5", "--d", "3"});
  CHECK(thm.code == 0);
  for (const auto& rec : json::parse(thm.out)) {
    CHECK(rec["match_theorem"] == true);
    CHECK(rec["match_conjecture"] == false);
  }
  const auto cor = run({"verify", "corollary", "--p", "5", "--format", "text"});
  CHECK(cor.code == 0);
  CHECK(cor.out.find("skipped (requires lambda^3 != 1)") != std::string::npos);

  const auto ids = run({"verify", "identities", "--p", "5", "--d", "3", "--precision", "4"});
  CHECK(ids.code == 0);
  CHECK(json::parse(ids.out)["pass"] == true);
  const auto all = run({"verify", "identities", "--format", "csv", "--precision", "4"});
  CHECK(all.code == 0);
  CHECK(all.out.rfind("name,ranges,cases,failures,pass", 0) == 0);
}

TEST_CASE("cache directory") {
  std::random_device rd;
  const auto dir = std::filesystem::temp_directory_path() / ("padicg_cli_" + std::to_string(rd()));
  const std::vector<std::string> args{"verify", "theorem", "--p", "5", "--d", "3",
                                      "--cache-dir", dir.string()};
  const auto first = run(args);
  CHECK(first.code == 0);
  CHECK(std::filesystem::exists(dir / "gamma_p5_M6.json"));
  {
    std::ofstream out(dir / "gamma_p5_M6.json");
    out << "[]";
  }
  const auto second = run(args);
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("warning:") != std::string::npos);
  std::filesystem::remove_all(dir);
}
