#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bollobas;
using namespace testing_helpers;

namespace {

std::string where_of(std::string_view text) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "<parsed>";
}

bool has_float(const Json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& v : j)
      if (has_float(v)) return true;
  return false;
}

}  // namespace

TEST(Parse, MinimalSetDocument) {
  auto s = parse_system(R"j({"kind":"set","n":2,"d":2,"tuples":[[[1],[2]]]})j");
  ASSERT_TRUE(std::holds_alternative<SetSystem>(s));
  EXPECT_EQ(std::get<SetSystem>(s), pairs(2, {{{1}, {2}}}));
}

TEST(Parse, SubspaceRowsAreCanonicalized) {
  auto text = R"j({"kind":"subspace","n":2,"d":2,"field":"rationals",
                 "tuples":[[[["2","4"],[1,2]],[["0","3/2"],["1","1"]]]]})j";
  auto s = std::get<RationalSubspaceSystem>(parse_system(text));
  EXPECT_EQ(s[0][0], qspan(2, {{1, 2}}));
  EXPECT_EQ(s[0][1].dim(), 2u);
  const std::string canonical = serialize_system(s);
  EXPECT_NE(canonical.find("\"2\""), std::string::npos);
  EXPECT_EQ(serialize_system(parse_system(canonical)), canonical);
  EXPECT_EQ(std::get<RationalSubspaceSystem>(parse_system(canonical)), s);
}

TEST(Parse, PrimeFieldDocument) {
  auto text = R"j({"kind":"subspace","n":2,"d":2,"field":"GF(3)","tuples":[[[["2","1"]],[]]],
                 "decomposition":[[["1","1"]],[["1","2"]]]})j";
  auto s = std::get<PrimeSubspaceSystem>(parse_system(text));
  EXPECT_EQ(s[0][0].rows()[0][1].residue(), 2u);
  EXPECT_TRUE(is_decomposition_compatible(s));
  EXPECT_EQ(std::get<PrimeSubspaceSystem>(parse_system(serialize_system(s))), s);
}

TEST(Parse, SemanticErrors) {
  try {
    parse_system(R"j({"kind":"set","n":2,"d":2,"tuples":[],"partition":[[1],[1,2]]})j");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("blocks overlap"), std::string::npos);
    EXPECT_EQ(e.where(), "/partition");
  }
  EXPECT_EQ(where_of(R"j({"kind":"set","n":2,"d":2,"tuples":[[[1],[3]]]})j"), "/tuples/0/1/0");
  EXPECT_EQ(where_of(R"j({"kind":"set","n":2,"d":2,"tuples":[[[1]]]})j"), "/tuples/0");
  EXPECT_EQ(where_of(R"j({"kind":"set","n":2,"d":2,"tuples":[[[1],[1]]]})j"), "<parsed>");  // checked by verify
  EXPECT_EQ(where_of(R"j({"kind":"subspace","n":2,"d":2,"field":"GF(4)","tuples":[]})j"), "/field");
  EXPECT_EQ(where_of(R"j({"kind":"subspace","n":2,"d":1,"field":"rationals","tuples":[[[["1"]]]]})j"),
            "/tuples/0/0/0");
  EXPECT_EQ(where_of(R"j({"kind":"subspace","n":1,"d":1,"field":"rationals","tuples":[[[["x"]]]]})j"),
            "/tuples/0/0/0/0");
  EXPECT_EQ(where_of(R"j({"kind":"subspace","n":2,"d":1,"field":"rationals","tuples":[],
                        "decomposition":[[["1","0"]],[["2","0"]]]})j"),
            "/decomposition");
  EXPECT_EQ(where_of(R"j({"kind":"graph","n":2,"d":2,"tuples":[]})j"), "/kind");
  EXPECT_EQ(where_of(R"j({"kind":"set","d":2,"tuples":[]})j"), "");
}

TEST(Parse, SyntaxErrorsCarryByteOffset) {
  auto w = where_of(R"j({"kind":"set","n":2,)j");
  EXPECT_EQ(w.rfind("byte ", 0), 0u);
  EXPECT_EQ(where_of("[1,2]"), "");
}

TEST(Serialize, RoundTripsEveryKind) {
  std::vector<AnySystem> systems;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomSystemSpec spec{1 + seed % 5, 2 + seed % 2, Condition::skew, 5, seed, seed % 2, 64};
    systems.push_back(random_set_system(spec));
    systems.push_back(random_subspace_system(spec));
  }
  systems.push_back(partitioned_complement_chain(4, {{1, 2}, {3, 4}}));
  systems.push_back(full_tuza_tuples(2, 3));
  auto gf = subspace_candidates(2, FieldTag::gf(3), 2);
  systems.push_back(PrimeSubspaceSystem(2, FieldTag::gf(3), 2, gf));
  for (const auto& s : systems) {
    const std::string text = serialize_system(s);
    EXPECT_EQ(parse_system(text), s);
    EXPECT_EQ(serialize_system(parse_system(text)), text);
  }
}

TEST(Reports, OneBasedIndicesAndExactNumbers) {
  auto rev = pairs(2, {{{}, {1, 2}}, {{2}, {1}}, {{1}, {2}}, {{1, 2}, {}}});
  auto j = to_json(verify(rev, Condition::skew));
  EXPECT_EQ(j["verdict"], false);
  EXPECT_EQ(j["witness"]["i"], 1);
  EXPECT_EQ(j["witness"]["j"], 2);

  auto v = to_json(evaluate_inequality(complement_chain(2), Functional::hegedus_frankl_sum));
  EXPECT_EQ(v["value"], "3");
  EXPECT_EQ(v["bound"], "3");
  EXPECT_EQ(v["tight"], true);

  auto t = saturate(pairs(2, {{{1}, {}}}), Flavor::set);
  auto tj = to_json(t, true);
  EXPECT_EQ(tj["steps"][0]["index"], 1);
  EXPECT_EQ(tj["steps"][0]["x"], 2);
  EXPECT_EQ(tj["steps"][0]["omega_before"][0], "1/2");
  EXPECT_FALSE(has_float(tj));

  auto c = to_json(certify_full_system(full_tuza_tuples(3, 3), Flavor::set));
  EXPECT_EQ(c["omega"], "1");
  EXPECT_FALSE(has_float(c));

  SearchProblem p;
  p.ground = Ground{2, std::nullopt};
  auto r = to_json(search_max(p));
  EXPECT_EQ(r["best_value"], "4");
  EXPECT_EQ(r["witness"]["kind"], "set");
  EXPECT_FALSE(has_float(r));
}
