#include "doctest.h"

#include "flagtriad/cli.hpp"
#include "flagtriad/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using flagtriad::cli::run_command;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("roots: A1 has two roots") {
  const auto r = cli({"roots", "--family", "A", "--rank", "1"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["count"] == 2);
  CHECK(j["label"] == "A1");
}

TEST_CASE("intersect: the 5.1 example with partition (2,1)") {
  const auto r = cli({"intersect", "--pair", "su2n-so-sp", "--n", "3", "--x0", "1,1,-2", "--H",
                      "1/7,2/7,-3/7"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["kind"] == "discrete");
  CHECK(j["cardinality"] == 3);
}

TEST_CASE("intersect infers n from the coordinate count") {
  const auto r = cli({"intersect", "--pair", "su2n-so-sp", "--x0", "1,1,-2", "--H",
                      "1/7,2/7,-3/7"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["cardinality"] == 3);
}

TEST_CASE("regular: the pi/4 wall of the rank-one pair is singular") {
  const auto r = cli({"regular", "--pair", "su-n-so-rank1", "--H", "1/4"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["regular"] == false);
  CHECK(j["violations"].size() > 0);
  const auto r2 = cli({"regular", "--pair", "su-n-so-rank1", "--H", "1/3"});
  CHECK(json::parse(r2.out)["regular"] == true);
}

TEST_CASE("byte-identical output across runs") {
  const std::vector<std::string> args = {"intersect", "--pair", "su2n-so-sp", "--n", "3",
                                         "--x0",      "1,1,-2", "--H", "1/7,2/7,-3/7"};
  CHECK(cli(args).out == cli(args).out);
  const std::vector<std::string> oracle_args = {"oracle", "--pair", "su-n-so-rank1", "--n", "2",
                                                "--seed", "7", "--grid", "5"};
  CHECK(cli(oracle_args).out == cli(oracle_args).out);
}

TEST_CASE("triad --emit round-trips through --triad-file") {
  const auto emitted = cli({"triad", "--pair", "su2n-so-sp", "--n", "3", "--emit"});
  REQUIRE(emitted.code == 0);
  const std::string path = "/tmp/flagtriad_roundtrip.json";
  {
    std::ofstream f(path);
    f << emitted.out;
  }
  // identical axiom report and regularity answers on a small grid
  const auto direct_axioms = cli({"triad", "--pair", "su2n-so-sp", "--n", "3"});
  const auto file_axioms = cli({"triad", "--triad-file", path});
  const auto ja = json::parse(direct_axioms.out)["axioms"];
  const auto jb = json::parse(file_axioms.out)["axioms"];
  CHECK(ja == jb);
  for (const char* h : {"1/7,2/7,-3/7", "1/2,-1/4,-1/4", "0,0,0", "1/3,1/3,-2/3"}) {
    const auto a = cli({"regular", "--pair", "su2n-so-sp", "--n", "3", "--H", h});
    const auto b = cli({"regular", "--triad-file", path, "--H", h});
    CHECK(a.out == b.out);
  }
  std::remove(path.c_str());
}

TEST_CASE("gamma, cell, st-point, antipodal, tight") {
  const auto g0 = cli({"gamma", "--pair", "su-n-so-rank1", "--H", "0"});
  CHECK(json::parse(g0.out)["in_gamma"] == true);
  const auto g1 = cli({"gamma", "--pair", "su-n-so-rank1", "--H", "1/4"});
  const auto jg = json::parse(g1.out);
  CHECK(jg["in_gamma"] == false);
  CHECK(jg["in_gamma_via_sigma_only"] == false);

  const auto c = cli({"cell", "--pair", "su-n-so-rank1"});
  const auto jc = json::parse(c.out);
  CHECK(jc["alpha_tilde"] == json::array({"2"}));
  CHECK(jc["m"] == json::array({2}));

  const auto s = cli({"st-point", "--pair", "su-n-so-rank1", "--lattice-n", "3"});
  const auto js = json::parse(s.out);
  CHECK(js["H0_over_pi"] == json::array({"1/6"}));

  const auto a = cli({"antipodal", "--family", "A", "--rank", "3", "--x0", "1,1,-1,-1"});
  CHECK(json::parse(a.out)["cardinality"] == 6);

  const auto t = cli({"tight", "--pair", "su-n-so-rank1", "--n", "4", "--x0", "1"});
  const auto jt = json::parse(t.out);
  CHECK(jt["count"] == 2);
  CHECK(jt["sb_reference"] == 2);
}

TEST_CASE("table format renders the same data") {
  const auto r = cli({"roots", "--family", "G", "--rank", "2", "--format", "table"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("label: G2") != std::string::npos);
  CHECK(r.out.find("count: 12") != std::string::npos);
}

TEST_CASE("exit codes: usage errors and domain errors") {
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"roots", "--family", "A"}).code == 2);               // missing --rank
  CHECK(cli({"roots", "--family", "A", "--bogus", "1"}).code == 2);
  CHECK(cli({"roots", "--family", "H", "--rank", "3"}).code == 1);  // invalid family
  CHECK(cli({"st-point", "--pair", "su-n-so-rank1", "--lattice-n", "2"}).code == 1);
  const auto r = cli({"intersect", "--pair", "su2n-so-sp", "--n", "3", "--x0", "1,1,1", "--H",
                      "1/7,2/7,-3/7"});
  CHECK(r.code == 1);  // trace constraint violated
  CHECK(r.err.find("trace") != std::string::npos);
}

TEST_CASE("oracle verb certifies the rank-one pair") {
  const auto r = cli({"oracle", "--pair", "su-n-so-rank1", "--n", "3", "--seed", "11", "--grid",
                      "20"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["all_pass"] == true);
  CHECK(j["reports"].size() >= 4);
}
