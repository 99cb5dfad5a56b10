#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bollobas;
using namespace testing_helpers;

namespace {

const FieldTag Q = FieldTag::rationals();

RationalSubspaceSystem single_pair(std::size_t n = 2) {
  return RationalSubspaceSystem(n, Q, 2, {{e(n, {1}), qzero(n)}}, Decomposition<BigRational>::trivial(n, Q));
}

FunctionalKind half() { return FunctionalKind::tuza(ProbabilityVector::uniform(2)); }

}  // namespace

TEST(FillUpSet, Example) {
  auto s = pairs(2, {{{1}, {}}});
  auto r = fill_up_set_tuple(s, 0, 2);
  EXPECT_EQ(r, pairs(2, {{{1, 2}, {}}, {{1}, {2}}}));
  EXPECT_EQ(omega(s, half()), q(1, 2));
  EXPECT_EQ(omega(r, half()), q(1, 2));
  EXPECT_EQ(phi(s, Flavor::set), 1);
  EXPECT_EQ(phi(r, Flavor::set), 4);  // (d-1)s + d with s = 1
}

TEST(FillUpSet, InsertsInPlace) {
  auto s = pairs(3, {{{1, 2, 3}, {}}, {{1}, {2}}, {{}, {1, 2, 3}}});
  ASSERT_TRUE(verify(s, Condition::weak).verdict);
  auto r = fill_up_set_tuple(s, 1, 3);
  EXPECT_EQ(r, pairs(3, {{{1, 2, 3}, {}}, {{1, 3}, {2}}, {{1}, {2, 3}}, {{}, {1, 2, 3}}}));
}

TEST(FillUpSet, Errors) {
  auto s = pairs(1, {{{1}, {}}});
  try {
    fill_up_set_tuple(s, 0, 1);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("already covered"), std::string::npos);
  }
  EXPECT_THROW(fill_up_set_tuple(pairs(2, {{{1}, {}}}), 0, 3), PreconditionError);
  EXPECT_THROW(fill_up_set_tuple(pairs(2, {{{}, {}}, {{}, {}}}), 0, 1), LicenseError);
}

TEST(FillUpPair, Example) {
  auto s = single_pair();
  auto r = fill_up_subspace_pair(s, 0, 0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0][0], e(2, {1, 2}));
  EXPECT_TRUE(r[0][1].is_zero());
  EXPECT_EQ(r[1][0], e(2, {1}));
  EXPECT_EQ(r[1][1], e(2, {2}));
  EXPECT_EQ(omega(s, Functional::yue_sum), q(1, 2));
  EXPECT_EQ(omega(r, Functional::yue_sum), q(1, 2));
  EXPECT_EQ(phi(s, Flavor::pair), 2);
  EXPECT_EQ(phi(r, Flavor::pair), 8);
}

TEST(FillUpPair, FullPairIsAnError) {
  RationalSubspaceSystem full(2, Q, 2, {{e(2, {1}), e(2, {2})}}, Decomposition<BigRational>::trivial(2, Q));
  EXPECT_THROW(fill_up_subspace_pair(full, 0, 0), PreconditionError);
}

TEST(FillUpPair, ReversedOrderBreaksSkewness) {
  auto s = single_pair();
  auto raw = replace_pair(s, 0, 0, ReplacementOrder::extend_b_first);
  auto r = verify(raw, Condition::skew);
  EXPECT_FALSE(r.verdict);
  EXPECT_EQ(r.first_violation->i, 0u);
  EXPECT_EQ(r.first_violation->j, 1u);
  EXPECT_THROW(fill_up_subspace_pair(s, 0, 0, ReplacementOrder::extend_b_first), InvariantError);
}

TEST(FillUpPair, NeedsCompatibleSkewSystem) {
  auto dec = Decomposition<BigRational>::coordinate(2, Q, {{1}, {2}});
  RationalSubspaceSystem twisted(2, Q, 2, {{qspan(2, {{1, 1}}), qzero(2)}}, dec);
  EXPECT_THROW(fill_up_subspace_pair(twisted, 0, 0), PreconditionError);
  EXPECT_THROW(fill_up_subspace_pair(single_pair().with_decomposition(std::nullopt), 0, 0), ShapeError);
}

TEST(FillUpTuple, Example) {
  RationalSubspaceSystem s(2, Q, 2, {{e(2, {1}), qzero(2)}});
  auto p = FunctionalKind::tuza(parse_probability_vector("1/3,2/3"));
  auto r = fill_up_subspace_tuple(s, 0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(omega(s, p), q(1, 3));
  EXPECT_EQ(omega(r, p), q(1, 3));
  EXPECT_EQ(phi(s, Flavor::tuple), 1);
  EXPECT_EQ(phi(r, Flavor::tuple), 4);
  RationalSubspaceSystem full(2, Q, 2, {{e(2, {1}), e(2, {2})}});
  EXPECT_THROW(fill_up_subspace_tuple(full, 0), PreconditionError);
}

TEST(Saturate, SingleEmptyPair) {
  SaturationOptions opts;
  opts.tracked = {FunctionalKind(Functional::yue_sum), half()};
  auto t = saturate(pairs(1, {{{}, {}}}), Flavor::set, opts);
  EXPECT_EQ(t.final_system, pairs(1, {{{1}, {}}, {{}, {1}}}));
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.omega_initial, (std::vector<BigRational>{q(1), q(1)}));
  EXPECT_EQ(t.steps[0].omega_after, t.omega_initial);
}

TEST(Saturate, FullSystemIsFixed) {
  auto full = pairs(2, {{{1, 2}, {}}, {{1}, {2}}, {{2}, {1}}, {{}, {1, 2}}});
  auto t = saturate(full, Flavor::set);
  EXPECT_TRUE(t.steps.empty());
  EXPECT_EQ(t.final_system, full);
}

TEST(Saturate, SubspacePairExample) {
  SaturationOptions opts;
  opts.tracked = {FunctionalKind(Functional::yue_sum), FunctionalKind(Functional::partitioned_yue_sum)};
  auto t = saturate(single_pair(), Flavor::pair, opts);
  ASSERT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.final_system.size(), 2u);
  EXPECT_EQ(t.omega_initial[0], q(1, 2));
  EXPECT_EQ(t.steps[0].omega_after[0], q(1, 2));
  EXPECT_EQ(t.steps[0].phi_after - t.steps[0].phi_before, 6);
}

TEST(Saturate, RefusesWeakSubspaceSystems) {
  RationalSubspaceSystem w(2, Q, 2, {{e(2, {1}), e(2, {2})}, {e(2, {2}), qzero(2)}});
  EXPECT_THROW(saturate(w, Flavor::tuple), LicenseError);
}

TEST(Certify, ComplementChainBothFlavors) {
  auto chain = pairs(2, {{{1, 2}, {}}, {{1}, {2}}, {{2}, {1}}, {{}, {1, 2}}});
  auto c = certify_full_system(chain, Flavor::set);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.omega, q(1));
  ASSERT_EQ(c.classes.size(), 3u);
  for (const auto& tc : c.classes) EXPECT_EQ(BigInt(static_cast<unsigned long>(tc.members.size())), tc.bound);

  auto emb = embed(chain).with_decomposition(Decomposition<BigRational>::trivial(2, Q));
  auto p = certify_full_system(emb, Flavor::pair);
  EXPECT_TRUE(p.holds);
  EXPECT_EQ(p.omega, q(1));
  EXPECT_EQ(p.class_bound_sum, q(1));
  ASSERT_EQ(p.classes.size(), 3u);
  EXPECT_EQ(p.classes[0].type, (std::vector<std::size_t>{0}));
  EXPECT_EQ(p.classes[1].bound, 2);
}

TEST(Certify, FullTuzaTuplesClassesAreExact) {
  auto s = full_tuza_tuples(3, 3);
  auto c = certify_full_system(s, Flavor::set, parse_probability_vector("1/2,1/4,1/4"));
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.omega, q(1));
  EXPECT_EQ(c.classes.size(), 10u);
  for (const auto& tc : c.classes) {
    std::vector<unsigned> parts(tc.type.begin(), tc.type.end());
    EXPECT_EQ(tc.bound, oracle::multinomial(parts));
    EXPECT_EQ(BigInt(static_cast<unsigned long>(tc.members.size())), tc.bound);
  }
}

TEST(Certify, SingleFullPair) {
  RationalSubspaceSystem s(2, Q, 2, {{e(2, {1, 2}), qzero(2)}}, Decomposition<BigRational>::trivial(2, Q));
  auto c = certify_full_system(s, Flavor::pair);
  EXPECT_EQ(c.classes.size(), 1u);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.omega, q(1, 3));
}

TEST(Certify, RejectsNonFullSystems) {
  EXPECT_THROW(certify_full_system(pairs(2, {{{1}, {}}}), Flavor::set), PreconditionError);
}

TEST(Properties, SaturationOnRandomSkewTuples) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t d = 2 + seed % 2;
    RandomSystemSpec spec{1 + seed % 3, d, Condition::skew, 2 + seed % 4, seed, 0, 32};
    auto s = random_subspace_system(spec);
    SaturationOptions opts;
    opts.verify_each_step = true;
    auto t = saturate(s, Flavor::tuple, opts);
    EXPECT_EQ(omega(t.final_system, FunctionalKind::tuza(ProbabilityVector::uniform(d))), t.omega_initial[0]);
    auto c = certify_full_system(t.final_system, Flavor::tuple);
    EXPECT_TRUE(c.holds);
    EXPECT_TRUE(check_cardinality_lemmas(t.final_system).holds);
  }
}

TEST(Properties, SaturationOnRandomWeakSetTuples) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t d = 2 + seed % 3;
    RandomSystemSpec spec{1 + seed % 4, d, Condition::weak, 2 + seed % 6, seed, 0, 64};
    auto s = random_set_system(spec);
    SaturationOptions opts;
    opts.verify_each_step = true;
    auto t = saturate(s, Flavor::set, opts);
    for (const auto& step : t.steps) {
      long after = 0;
      for (const auto& r : step.replacements)
        for (auto part : r) after += static_cast<long>(part.size());
      const long before = after / static_cast<long>(d) - 1;
      EXPECT_EQ(step.phi_after - step.phi_before, after - before);
      if (before == 0) {
        EXPECT_EQ(step.phi_after - step.phi_before, static_cast<long>(d));
      }
    }
    EXPECT_TRUE(certify_full_system(t.final_system, Flavor::set).holds);
  }
}
