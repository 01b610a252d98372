#include "doctest.h"

#include <algorithm>

#include "padicg/serialize.hpp"

using namespace padicg;

namespace {

long commas(const std::string& s) { return std::count(s.begin(), s.end(), ','); }

}  // namespace

TEST_CASE("fields and p-adic values") {
  const auto f = build_field(3, 2);
  const auto j = to_json(*f);
  CHECK(j["q"] == 9);
  CHECK(j["f"] == json::array({1, 0, 1}));
  CHECK(j["generator"] == 4);
  const auto x = to_json(PadicApprox::from_int(-1, 3, 38));
  CHECK(x["residue"].is_string());
  CHECK(x["residue"] == "1350851717672992088");
}

TEST_CASE("G specs round-trip") {
  const json doc = json::parse(R"({"a": ["1/3", "2/3"], "b": [0, "0"], "t": 3, "p": 5})");
  const GSpec spec = gspec_from_json(doc);
  CHECK(spec.a == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  CHECK(spec.b == std::vector<Rational>{Rational(0), Rational(0)});
  CHECK(spec.field->r() == 1);
  const GSpec back = gspec_from_json(to_json(spec));
  CHECK(back.a == spec.a);
  CHECK(back.t == spec.t);
  CHECK_THROWS(gspec_from_json(json::parse(R"({"a": ["1/5"], "b": [0], "t": 1, "p": 5})")));
  CHECK(parse_rational_list("1/2, -1/3,4") ==
        std::vector<Rational>{Rational(1, 2), Rational(-1, 3), Rational(4)});
  CHECK_THROWS(parse_rational_list("1/2,,3"));
}

TEST_CASE("count reports") {
  CountReport rep;
  rep.d = 3;
  rep.p = 5;
  rep.r = 3;
  rep.M = 7;
  rep.theorem_value = {5, 7, 126};
  rep.g_value = {5, 7, 0};
  rep.projective = 126;
  rep.n_affine = 125 * 124 + 126;
  rep.match_theorem = true;
  const auto j = to_json(rep);
  CHECK(j["conjecture_residue"].is_null());
  CHECK(j["match_conjecture"].is_null());
  CHECK(j["theorem_residue"] == "126");
  CHECK(csv_row(rep) == "3,5,3,0,7,15626,126,126,,0,true,");
  CHECK(commas(csv_header(rep)) == commas(csv_row(rep)));
  rep.conjecture_value = PadicApprox{5, 7, 3};
  rep.match_conjecture = false;
  CHECK(to_json(rep)["match_conjecture"] == false);
  CHECK(to_text(rep).find("conjecture 3 [no]") != std::string::npos);
}

TEST_CASE("identity reports") {
  IdentityReport rep{"gamma_product", "q=5", {"equation", "j"}, 8, {{1, 3}}};
  const auto j = to_json(rep);
  CHECK(j["pass"] == false);
  CHECK(j["failures"] == json::array({json::array({1, 3})}));
  CHECK(to_text(rep).find("first (equation, j) = 1 3") != std::string::npos);
  SuiteResult res;
  res.reports.push_back(rep);
  res.skipped.push_back({"gamma_product", "q=9, t=3", "requires p !| t"});
  CHECK(to_json(res)["pass"] == false);
  CHECK(to_json(res)["skipped"][0]["reason"] == "requires p !| t");
}

TEST_CASE("corollary reports") {
  CorollaryReport skipped;
  skipped.skipped = true;
  skipped.reason = "requires lambda != 0";
  CHECK(to_json(skipped)["reason"] == "requires lambda != 0");
  CHECK(!to_json(skipped).contains("lhs"));
  CHECK(commas(csv_header(skipped)) == commas(csv_row(skipped)));
}
