#pragma once

#include <initializer_list>
#include <vector>

#include "bollobas/bollobas.hpp"
#include "oracles.hpp"

namespace testing_helpers {

using namespace bollobas;

inline BigRational q(long num, long den = 1) { return make_rational(num, den); }

/// Subspace of Q^n spanned by integer rows.
inline Subspace<BigRational> qspan(std::size_t n, std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<BigRational> m;
  for (auto r : rows) {
    Vector<BigRational> v;
    for (long x : r) v.push_back(BigRational(x));
    v.resize(n, BigRational(0));
    m.push_back(v);
  }
  return Subspace<BigRational>::span(n, FieldTag::rationals(), m);
}

inline Subspace<BigRational> e(std::size_t n, std::initializer_list<std::size_t> positions) {
  return Subspace<BigRational>::coordinate(n, FieldTag::rationals(), positions);
}

inline Subspace<BigRational> qzero(std::size_t n) { return Subspace<BigRational>::zero(n, FieldTag::rationals()); }

/// Subspace of GF(2)^n spanned by bitmask rows (bit p-1 = coordinate p).
inline Subspace<PrimeFieldScalar> gf2(std::size_t n, const std::vector<std::uint32_t>& rows) {
  const FieldTag f = FieldTag::gf(2);
  Matrix<PrimeFieldScalar> m;
  for (auto r : rows) {
    Vector<PrimeFieldScalar> v;
    for (std::size_t p = 0; p < n; ++p) v.push_back(PrimeFieldScalar::from_residue((r >> p) & 1u, 2));
    m.push_back(v);
  }
  return Subspace<PrimeFieldScalar>::span(n, f, m);
}

/// The vector set of a GF(2) subspace, for comparison with the oracle.
inline oracle::Vecs gf2_vectors(const Subspace<PrimeFieldScalar>& u) {
  std::vector<std::uint32_t> gens;
  for (const auto& row : u.rows()) {
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < row.size(); ++p)
      if (row[p].residue()) mask |= 1u << p;
    gens.push_back(mask);
  }
  return oracle::span(gens);
}

inline SetTuple to_set_tuple(const oracle::Tuple& t) {
  SetTuple out;
  for (const auto& s : t) out.push_back(Subset::from_elements(std::vector<int>(s.begin(), s.end())));
  return out;
}

inline oracle::Tuple to_oracle(const SetTuple& t) {
  oracle::Tuple out;
  for (auto s : t) {
    oracle::Set set;
    for (auto x : s.elements()) set.insert(static_cast<int>(x));
    out.push_back(set);
  }
  return out;
}

inline std::vector<oracle::Tuple> to_oracle(const SetSystem& s) {
  std::vector<oracle::Tuple> out;
  for (const auto& t : s.tuples()) out.push_back(to_oracle(t));
  return out;
}

inline oracle::Cond to_oracle(Condition c) {
  switch (c) {
    case Condition::bollobas: return oracle::Cond::bollobas;
    case Condition::skew: return oracle::Cond::skew;
    case Condition::weak: return oracle::Cond::weak;
  }
  return oracle::Cond::skew;
}

inline SetSystem pairs(std::size_t n, std::initializer_list<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> ps) {
  std::vector<SetTuple> tuples;
  for (const auto& [a, b] : ps) tuples.push_back({Subset::from_elements(a), Subset::from_elements(b)});
  return SetSystem(n, 2, tuples);
}

}  // namespace testing_helpers
