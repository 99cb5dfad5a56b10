#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bollobas/cli.hpp"
#include "helpers.hpp"

using namespace bollobas;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string chain3() { return serialize_system(complement_chain(3)); }

}  // namespace

TEST(Cli, VerifyComplementChain) {
  auto r = run({"verify", "--kind", "skew"}, chain3());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["report"]["verdict"], true);
  EXPECT_EQ(r.json()["command"], "verify");
}

TEST(Cli, WeightYueIsTight) {
  auto r = run({"weight", "--functional", "yue"}, chain3());
  EXPECT_EQ(r.code, 0);
  auto v = r.json()["verdict"];
  EXPECT_EQ(v["value"], "1");
  EXPECT_EQ(v["bound"], "1");
  EXPECT_EQ(v["tight"], true);
}

TEST(Cli, TuzaArityMismatchIsUsageError) {
  auto r = run({"weight", "--functional", "tuza", "--p", "1/2,1/2"}, serialize_system(full_tuza_tuples(2, 3)));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("probability vector"), std::string::npos);
}

TEST(Cli, ProbabilityVectorMustSumToOne) {
  auto r = run({"weight", "--functional", "tuza", "--p", "1/2,1/3"}, serialize_system(full_tuza_tuples(2, 2)));
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, UnlicensedWeightReportsValue) {
  auto r = run({"weight", "--functional", "bollobas"}, serialize_system(complement_chain(2)));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["verdict"]["licensed"], false);
  EXPECT_EQ(r.json()["verdict"]["value"], "3");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  auto r = run({"verify", "--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({"verify"}, "{not json").code, 2);
  EXPECT_EQ(run({"verify", "--kind", "strong"}, chain3()).code, 2);
  EXPECT_EQ(run({"verify", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ReversedChainWitness) {
  auto r = run({"verify", fixture("reversed_chain_2.json")});
  EXPECT_EQ(r.code, 1);
  auto w = r.json()["report"]["witness"];
  EXPECT_EQ(w["i"], 1);
  EXPECT_EQ(w["j"], 2);
}

TEST(Cli, ExitStatusTracksVerdictsOnFixtures) {
  struct Row {
    const char* file;
    int skew, weak;
  };
  // frozen from the library verifier, cross-checked for set fixtures below
  const Row rows[] = {{"complement_chain_3.json", 0, 0}, {"reversed_chain_2.json", 1, 0},
                      {"partitioned_chain_4.json", 0, 0}, {"full_tuza_2_3.json", 0, 0},
                      {"embedded_chain_2.json", 0, 0},    {"weak_lines_q2.json", 1, 0},
                      {"twisted_pair_gf3.json", 0, 0},    {"single_empty_pair.json", 0, 0}};
  for (const auto& row : rows) {
    EXPECT_EQ(run({"verify", "--kind", "skew", fixture(row.file)}).code, row.skew) << row.file;
    EXPECT_EQ(run({"verify", "--kind", "weak", fixture(row.file)}).code, row.weak) << row.file;
    std::ifstream f(fixture(row.file));
    std::stringstream buf;
    buf << f.rdbuf();
    auto sys = parse_system(buf.str());
    if (auto* s = std::get_if<SetSystem>(&sys)) {
      auto fam = testing_helpers::to_oracle(*s);
      EXPECT_EQ(row.skew == 0, oracle::valid(fam, oracle::Cond::skew)) << row.file;
      EXPECT_EQ(row.weak == 0, oracle::valid(fam, oracle::Cond::weak)) << row.file;
    }
  }
}

TEST(Cli, VerifyWithBounds) {
  auto u = run({"verify", "--bound", "uniform"}, serialize_system(uniform_bollobas(2, 1)));
  EXPECT_EQ(u.code, 0);
  EXPECT_EQ(u.json()["certificate"]["checks"][0]["tight"], true);
  auto c = run({"verify", "--bound", "cardinality", fixture("embedded_chain_2.json")});
  EXPECT_EQ(c.code, 0);
  auto a = run({"verify", "--bound", "alon", fixture("partitioned_chain_4.json")});
  EXPECT_EQ(a.code, 2);  // not uniform per block
  auto l = run({"verify", "--bound", "cardinality", fixture("weak_lines_q2.json")});
  EXPECT_EQ(l.code, 1);
  EXPECT_EQ(l.json()["licensed"], false);
}

TEST(Cli, SaturateAndCertify) {
  auto s = run({"saturate", "--trace", fixture("single_empty_pair.json")});
  EXPECT_EQ(s.code, 0);
  auto j = s.json();
  EXPECT_EQ(j["trace"]["step_count"], 1);
  EXPECT_EQ(j["trace"]["steps"].size(), 1u);
  EXPECT_EQ(j["trace"]["final_system"]["tuples"].size(), 2u);

  auto quiet = run({"saturate", fixture("single_empty_pair.json")});
  EXPECT_FALSE(quiet.json()["trace"].contains("steps"));

  auto c = run({"certify", "--saturate", "--p", "1/3,2/3", fixture("single_empty_pair.json")});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.json()["certificate"]["omega"], "1");

  auto p = run({"certify", "--saturate", "--flavor", "pair", fixture("twisted_pair_gf3.json")});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.json()["certificate"]["field_caveat"], true);

  auto not_full = run({"certify", fixture("single_empty_pair.json")});
  EXPECT_EQ(not_full.code, 2);

  auto weak = run({"saturate", fixture("weak_lines_q2.json")});
  EXPECT_EQ(weak.code, 1);
}

TEST(Cli, Search) {
  auto r = run({"search", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["result"]["best_value"], "4");
  auto u = run({"search", "--n", "2", "--uniform", "1,1", "--no-prune"});
  EXPECT_EQ(u.json()["result"]["best_value"], "2");
  auto c = run({"search", "--n", "2", "--field", "GF(2)", "--kind", "weak", "--objective", "counterexample",
                "--functional", "tuza"});
  EXPECT_EQ(c.code, 1);
  EXPECT_EQ(c.json()["result"]["exceeds_bound"], true);
  EXPECT_EQ(run({"search", "--n", "9"}).code, 2);
}

TEST(Cli, BudgetOverrideFromEnvironment) {
  ::setenv(cli::kBudgetEnv, "5", 1);
  auto r = run({"search", "--n", "3"});
  ::unsetenv(cli::kBudgetEnv);
  EXPECT_EQ(r.json()["budget"], 5);
  EXPECT_EQ(r.json()["result"]["exhaustive"], false);
  auto flag = run({"search", "--n", "2", "--budget", "1000000"});
  EXPECT_EQ(flag.json()["budget"], 1000000);
}

TEST(Cli, ConstructEmbedRandom) {
  auto c = run({"construct", "--family", "complement-chain", "--params", "2"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(parse_system(c.out), AnySystem(complement_chain(2)));

  auto e = run({"embed"}, c.out);
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(parse_system(e.out), AnySystem(embed(complement_chain(2))));
  EXPECT_EQ(run({"embed"}, e.out).code, 2);

  auto a = run({"random", "--seed", "7", "--m", "5", "--n", "4"});
  auto b = run({"random", "--seed", "7", "--m", "5", "--n", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({"verify"}, a.out).code, 0);
  auto q = run({"random", "--seed", "3", "--ground", "rationals", "--blocks", "2", "--n", "3"});
  EXPECT_EQ(run({"verify"}, q.out).code, 0);

  EXPECT_EQ(run({"construct", "--family", "complement-chain", "--params", "40"}).code, 2);
  EXPECT_EQ(run({"construct", "--family", "partitioned-complement-chain", "--params", "2", "--blocks", "1;1,2"}).code, 2);
}
