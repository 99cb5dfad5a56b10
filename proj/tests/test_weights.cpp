#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace bollobas;
using namespace testing_helpers;

namespace {

SetSystem chain2() { return pairs(2, {{{1, 2}, {}}, {{1}, {2}}, {{2}, {1}}, {{}, {1, 2}}}); }

FunctionalKind tuza(const char* p) { return FunctionalKind::tuza(parse_probability_vector(p)); }

}  // namespace

TEST(Omega, Examples) {
  EXPECT_EQ(omega(pairs(0, {{{}, {}}}), Functional::yue_sum), q(1));
  EXPECT_EQ(omega(chain2(), Functional::yue_sum), q(1));
  // frozen from the closed form Σ_S 1/((n+1) C(n,|S|)) = 1
  EXPECT_EQ(oracle::yue(to_oracle(chain2())), mpq_class(1));
  auto part = chain2().with_partition(std::vector<Subset>{Subset::of({1}), Subset::of({2})});
  EXPECT_EQ(omega(part, Functional::partitioned_yue_sum), q(1));
  EXPECT_EQ(omega(pairs(1, {{{1}, {}}, {{}, {1}}}), tuza("1/2,1/2")), q(1));
  EXPECT_EQ(omega(pairs(2, {{{1}, {2}}, {{2}, {1}}}), Functional::bollobas_sum), q(1));
  EXPECT_EQ(omega(SetSystem(3, 2, {}), Functional::yue_sum), q(0));
}

TEST(Omega, PerTupleTerms) {
  auto s = pairs(3, {{{1}, {2, 3}}});
  EXPECT_EQ(omega(s, Functional::bollobas_sum), q(1, 3));
  EXPECT_EQ(omega(s, Functional::hegedus_frankl_sum), q(1, 3));
  EXPECT_EQ(omega(s, Functional::yue_sum), q(1, 12));
  EXPECT_EQ(omega(s, tuza("1/3,2/3")), q(4, 27));
  auto p = s.with_partition(std::vector<Subset>{Subset::of({1, 2}), Subset::of({3})});
  // block 1: a=1,b=1 -> 1/(2*3); block 2: a=0,b=1 -> 1/(1*2)
  EXPECT_EQ(omega(p, Functional::partitioned_yue_sum), q(1, 12));
  EXPECT_EQ(omega(p, Functional::block_product_sum), q(1, 2));
}

TEST(Omega, ShapeErrors) {
  SetSystem triples(3, 3, {});
  EXPECT_THROW(omega(triples, Functional::yue_sum), ShapeError);
  EXPECT_THROW(omega(chain2(), Functional::partitioned_yue_sum), ShapeError);
  EXPECT_THROW(omega(triples, tuza("1/2,1/2")), ShapeError);
  EXPECT_THROW(omega(pairs(2, {{{1}, {2}}, {{}, {1}}}), Functional::scott_wilmer_sum), PreconditionError);
}

TEST(Inequality, TightVerdicts) {
  auto v = evaluate_inequality(chain2(), Functional::yue_sum);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.tight);
  EXPECT_EQ(v.licensing.condition, Condition::skew);

  auto h = evaluate_inequality(chain2(), Functional::hegedus_frankl_sum);
  EXPECT_EQ(h.value, q(3));
  EXPECT_EQ(h.bound, q(3));
  EXPECT_TRUE(h.tight);

  std::vector<SetTuple> full;
  for (const auto& t : oracle::all_tuples(3, 3))
    if (t[0].size() + t[1].size() + t[2].size() == 3) full.push_back(to_set_tuple(t));
  SetSystem s(3, 3, full);
  ASSERT_EQ(s.size(), 27u);
  auto t = evaluate_inequality(s, tuza("1/2,1/4,1/4"));
  EXPECT_EQ(t.value, q(1));
  EXPECT_TRUE(t.tight);
  EXPECT_EQ(t.licensing.condition, Condition::weak);
}

TEST(Inequality, RefusesUnlicensedBounds) {
  // skew but neither Bollobás nor monotone: Σ 1/C(a+b,a) = 3 here
  EXPECT_EQ(omega(chain2(), Functional::bollobas_sum), q(3));
  EXPECT_THROW(evaluate_inequality(chain2(), Functional::bollobas_sum), LicenseError);
  // not skew
  auto rev = pairs(2, {{{}, {1, 2}}, {{1, 2}, {}}});
  EXPECT_THROW(evaluate_inequality(rev, Functional::yue_sum), LicenseError);
  // weak subspace tuples are not licensed for tuza
  RationalSubspaceSystem w(2, FieldTag::rationals(), 2, {{e(2, {1}), e(2, {2})}, {e(2, {2}), qzero(2)}});
  EXPECT_THROW(evaluate_inequality(w, tuza("1/2,1/2")), LicenseError);
  // a partition the system is not compatible with
  auto dec = Decomposition<BigRational>::coordinate(2, FieldTag::rationals(), {{1}, {2}});
  RationalSubspaceSystem twisted(2, FieldTag::rationals(), 2, {{qspan(2, {{1, 1}}), qzero(2)}}, dec);
  EXPECT_THROW(evaluate_inequality(twisted, Functional::partitioned_yue_sum), LicenseError);
}

TEST(Inequality, MonotoneSkewLicensesBollobasSum) {
  auto s = pairs(3, {{{1}, {2, 3}}, {{2}, {1, 3}}, {{3}, {1, 2}}});
  auto v = evaluate_inequality(s, Functional::scott_wilmer_sum);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.tight);
  EXPECT_TRUE(v.licensing.monotone);
}

TEST(Inequality, BlockProductBound) {
  auto p = chain2().with_partition(std::vector<Subset>{Subset::of({1}), Subset::of({2})});
  auto v = evaluate_inequality(p, Functional::block_product_sum);
  EXPECT_EQ(v.bound, q(4));
  EXPECT_EQ(v.value, q(4));
  EXPECT_TRUE(v.tight);
}

TEST(Inequality, EmptySystemHoldsVacuously) {
  auto v = evaluate_inequality(SetSystem(2, 2, {}), Functional::yue_sum);
  EXPECT_EQ(v.value, q(0));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.tight);
}

TEST(Potential, Examples) {
  EXPECT_EQ(phi(pairs(2, {{{1}, {}}}), Flavor::set), 1);
  auto triv = Decomposition<BigRational>::trivial(2, FieldTag::rationals());
  RationalSubspaceSystem one(2, FieldTag::rationals(), 2, {{e(2, {1}), qzero(2)}}, triv);
  EXPECT_EQ(phi(one, Flavor::pair), 2);
  RationalSubspaceSystem full(2, FieldTag::rationals(), 2, {{e(2, {1}), e(2, {2})}}, triv);
  EXPECT_EQ(phi(full, Flavor::pair), 4);
  EXPECT_EQ(phi(one, Flavor::tuple), 1);
  EXPECT_THROW(phi(one.with_decomposition(std::nullopt), Flavor::pair), ShapeError);
  EXPECT_THROW(phi(one, Flavor::set), ShapeError);
}

TEST(Potential, Ceilings) {
  RationalSubspaceSystem p3(3, FieldTag::rationals(), 2, {}, Decomposition<BigRational>::trivial(3, FieldTag::rationals()));
  EXPECT_EQ(phi_upper_bound(p3, Flavor::pair), 64);
  EXPECT_EQ(phi_upper_bound(SetSystem(2, 2, {}), Flavor::set), 18);
  EXPECT_EQ(phi_upper_bound(RationalSubspaceSystem(2, FieldTag::rationals(), 3, {}), Flavor::tuple), 18);
}

TEST(Properties, LicensedInequalitiesOnRandomSystems) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    RandomSystemSpec spec{1 + seed % 5, 2, Condition::skew, 2 + seed % 7, seed, seed % 3 ? 0 : 1 + seed % 2, 64};
    if (spec.blocks > spec.n) spec.blocks = spec.n;
    auto s = random_set_system(spec);
    ASSERT_TRUE(verify(s, Condition::skew).verdict);
    EXPECT_EQ(omega(s, Functional::yue_sum), BigRational(oracle::yue(to_oracle(s))));
    EXPECT_TRUE(evaluate_inequality(s, Functional::yue_sum).holds);
    EXPECT_TRUE(evaluate_inequality(s, Functional::hegedus_frankl_sum).holds);
    EXPECT_EQ(omega(s, Functional::hegedus_frankl_sum), omega(s, Functional::bollobas_sum));
    auto one_block = s.with_partition(std::vector<Subset>{Subset::ground(s.ground_size())});
    EXPECT_EQ(omega(one_block, Functional::partitioned_yue_sum), omega(s, Functional::yue_sum));
    EXPECT_EQ(omega(one_block, Functional::block_product_sum), omega(s, Functional::bollobas_sum));
    if (s.has_context()) {
      EXPECT_TRUE(evaluate_inequality(s, Functional::partitioned_yue_sum).holds);
      EXPECT_TRUE(evaluate_inequality(s, Functional::block_product_sum).holds);
    }
  }
}

TEST(Properties, TuzaOnRandomWeakSetTuples) {
  const std::vector<const char*> vectors{"1/2,1/2", "1/3,2/3", "1/2,1/4,1/4", "1/6,1/3,1/2", "1/4,1/4,1/4,1/4"};
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    auto p = parse_probability_vector(vectors[seed % vectors.size()]);
    RandomSystemSpec spec{1 + seed % 4, p.size(), Condition::weak, 3 + seed % 9, seed, 0, 64};
    auto s = random_set_system(spec);
    ASSERT_TRUE(verify(s, Condition::weak).verdict);
    auto v = evaluate_inequality(s, FunctionalKind::tuza(p));
    EXPECT_TRUE(v.holds) << to_string(v.value);
  }
}

TEST(Properties, TuzaOnRandomSkewRationalSubspaceTuples) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t d = 2 + seed % 2;
    RandomSystemSpec spec{1 + seed % 3, d, Condition::skew, 3 + seed % 5, seed, 0, 32};
    auto s = random_subspace_system(spec);
    ASSERT_TRUE(verify(s, Condition::skew).verdict);
    auto v = evaluate_inequality(s, FunctionalKind::tuza(ProbabilityVector::uniform(d)));
    EXPECT_TRUE(v.holds);
    EXPECT_TRUE(evaluate_inequality(s, FunctionalKind::tuza(d == 2 ? parse_probability_vector("1/3,2/3")
                                                                   : parse_probability_vector("1/2,1/3,1/6")))
                    .holds);
  }
}
