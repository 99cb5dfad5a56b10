#pragma once

// Decision procedures for the Bollobás, skew and weak conditions on set and
// subspace systems, and certificates for the uniform counting bounds.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/systems.hpp"

namespace bollobas {

enum class Condition { bollobas, skew, weak };
enum class Domain { set, subspace };

inline std::string to_string(Condition c) {
  switch (c) {
    case Condition::bollobas: return "bollobas";
    case Condition::skew: return "skew";
    case Condition::weak: return "weak";
  }
  return "?";
}

inline Condition parse_condition(std::string_view s) {
  if (s == "bollobas") return Condition::bollobas;
  if (s == "skew") return Condition::skew;
  if (s == "weak") return Condition::weak;
  throw PreconditionError("unknown condition '" + std::string(s) + "' (expected bollobas, skew or weak)");
}

inline std::string to_string(Domain d) { return d == Domain::set ? "set" : "subspace"; }

/// Condition requested of a system. `monotone` adds the requirement
/// a_1 <= ... <= a_m and b_1 >= ... >= b_m (pairs only).
struct ConditionKind {
  Condition condition = Condition::skew;
  std::size_t arity = 2;
  bool monotone = false;
  friend bool operator==(const ConditionKind&, const ConditionKind&) = default;
};

enum class Clause {
  disjointness,        ///< components of one tuple disjoint / independent
  cross_intersection,  ///< the intersection requirement between two tuples
  monotonicity,        ///< size ordering required by the monotone flag
};

inline std::string to_string(Clause c) {
  switch (c) {
    case Clause::disjointness: return "disjointness";
    case Clause::cross_intersection: return "cross-intersection";
    case Clause::monotonicity: return "monotonicity";
  }
  return "?";
}

/// Indices are 0-based; reports print them 1-based. For a disjointness
/// failure i == j.
struct Violation {
  std::size_t i = 0;
  std::size_t j = 0;
  Clause clause = Clause::disjointness;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerificationReport {
  bool verdict = true;
  std::optional<Violation> first_violation;
  ConditionKind condition;
  Domain domain = Domain::set;
  /// Set for GF(p) systems: the theorems are about real spaces.
  bool field_caveat = false;
  bool has_duplicates = false;
};

namespace detail {

inline bool meets(Subset a, Subset b) { return a.intersects(b); }

template <ExactScalar S>
bool meets(const Subspace<S>& a, const Subspace<S>& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return !is_direct_sum({a, b});
}

inline bool independent(const SetTuple& t) {
  Subset seen;
  for (auto s : t) {
    if (s.intersects(seen)) return false;
    seen = seen | s;
  }
  return true;
}

template <ExactScalar S>
bool independent(const SubspaceTuple<S>& t) {
  return is_direct_sum(std::span<const Subspace<S>>(t));
}

inline std::size_t measure(Subset s) { return s.size(); }
template <ExactScalar S>
std::size_t measure(const Subspace<S>& u) { return u.dim(); }

template <class System>
constexpr Domain domain_of() {
  return is_set_system_v<System> ? Domain::set : Domain::subspace;
}

template <class System>
bool field_caveat_of(const System& system) {
  if constexpr (is_set_system_v<System>) return false;
  else return !system.field().is_rational();
}

}  // namespace detail

/// Clause (i): the components of a tuple are pairwise disjoint (sets) or
/// span a direct sum (subspaces).
template <class Tuple>
bool tuple_is_independent(const Tuple& t) {
  return detail::independent(t);
}

/// Clause (ii) between the tuple at position i and the later tuple at
/// position j (for the Bollobás condition the orientation is A_i vs B_j).
template <class Tuple>
bool cross_clause_holds(Condition condition, const Tuple& earlier, const Tuple& later) {
  const std::size_t d = earlier.size();
  switch (condition) {
    case Condition::bollobas:
      return detail::meets(earlier[0], later[1]);
    case Condition::skew:
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q)
          if (detail::meets(earlier[p], later[q])) return true;
      return false;
    case Condition::weak:
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q)
          if (detail::meets(earlier[p], later[q]) || detail::meets(earlier[q], later[p])) return true;
      return false;
  }
  return false;
}

template <class System>
void check_kind(const System& system, const ConditionKind& kind) {
  if (kind.arity != system.arity())
    throw ShapeError("condition arity " + std::to_string(kind.arity) + " does not match system arity " +
                     std::to_string(system.arity()));
  if (kind.condition == Condition::bollobas && kind.arity != 2)
    throw ShapeError("the Bollobás condition is only defined for pairs");
  if (kind.monotone && kind.arity != 2) throw ShapeError("the monotone flag only applies to pairs");
}

/// Decide `kind` on `system`. The witness is the first failing clause in
/// the order: disjointness by i, then cross clauses by (i, j)
/// lexicographically, then monotonicity.
template <class System>
VerificationReport verify(const System& system, const ConditionKind& kind) {
  check_kind(system, kind);
  VerificationReport report;
  report.condition = kind;
  report.domain = detail::domain_of<System>();
  report.field_caveat = detail::field_caveat_of(system);
  const auto& tuples = system.tuples();
  const std::size_t m = tuples.size();

  for (std::size_t i = 0; i < m && !report.has_duplicates; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (tuples[i] == tuples[j]) {
        report.has_duplicates = true;
        break;
      }

  auto fail = [&](std::size_t i, std::size_t j, Clause c) {
    report.verdict = false;
    report.first_violation = Violation{i, j, c};
    return report;
  };

  for (std::size_t i = 0; i < m; ++i)
    if (!tuple_is_independent(tuples[i])) return fail(i, i, Clause::disjointness);

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (j < i && kind.condition != Condition::bollobas) continue;
      if (!cross_clause_holds(kind.condition, tuples[i], tuples[j])) return fail(i, j, Clause::cross_intersection);
    }

  if (kind.monotone)
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (detail::measure(tuples[i][0]) > detail::measure(tuples[i + 1][0]) ||
          detail::measure(tuples[i][1]) < detail::measure(tuples[i + 1][1]))
        return fail(i, i + 1, Clause::monotonicity);
    }
  return report;
}

template <class System>
VerificationReport verify(const System& system, Condition condition, bool monotone = false) {
  return verify(system, ConditionKind{condition, system.arity(), monotone});
}

/// Re-check a single reported violation in isolation: true iff the clause
/// it names indeed fails for its indices.
template <class System>
bool violation_is_genuine(const System& system, const ConditionKind& kind, const Violation& v) {
  const auto& t = system.tuples();
  if (v.i >= t.size() || v.j >= t.size()) return false;
  switch (v.clause) {
    case Clause::disjointness: return v.i == v.j && !tuple_is_independent(t[v.i]);
    case Clause::cross_intersection: return v.i != v.j && !cross_clause_holds(kind.condition, t[v.i], t[v.j]);
    case Clause::monotonicity:
      return v.j == v.i + 1 && (detail::measure(t[v.i][0]) > detail::measure(t[v.j][0]) ||
                                detail::measure(t[v.i][1]) < detail::measure(t[v.j][1]));
  }
  return false;
}

/// verify(skew) implies verify(weak); always true, used as a property.
template <class System>
bool is_skew_implies_weak_check(const System& system) {
  return !verify(system, Condition::skew).verdict || verify(system, Condition::weak).verdict;
}

/// One bound assertion value <= bound.
struct BoundCheck {
  std::string label;
  BigRational value;
  BigRational bound;
  bool holds = true;
  bool tight = false;
};

inline BoundCheck make_bound_check(std::string label, const BigRational& value, const BigRational& bound) {
  return BoundCheck{std::move(label), value, bound, value <= bound, value == bound};
}

struct Certificate {
  std::string statement;
  bool holds = true;
  bool field_caveat = false;
  std::vector<BoundCheck> checks;
};

namespace detail {

template <class System>
void require_verified(const System& system, Condition condition, const std::string& what) {
  auto report = verify(system, condition);
  if (!report.verdict) {
    const auto& v = *report.first_violation;
    throw LicenseError(what + " requires a verified " + to_string(condition) + " system; " + to_string(v.clause) +
                       " fails at (" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + ")");
  }
}

inline Certificate finish(Certificate c) {
  for (const auto& check : c.checks) c.holds = c.holds && check.holds;
  return c;
}

/// Common per-block profile of every tuple, or an error if it varies.
template <class System>
TypeVector uniform_profile(const System& system, const std::string& what) {
  if (system.empty()) throw PreconditionError(what + ": an empty system has no uniform profile");
  TypeVector first = profile(system, 0);
  for (std::size_t i = 1; i < system.size(); ++i)
    if (!(profile(system, i) == first))
      throw PreconditionError(what + ": sizes are not uniform (tuple " + std::to_string(i + 1) + " differs)");
  return first;
}

inline BigInt block_binomial_product(const TypeVector& t) {
  BigInt bound = 1;
  for (const auto& row : t.blocks) bound *= binomial(row[0] + row[1], static_cast<long>(row[0]));
  return bound;
}

}  // namespace detail

/// Skew pairs with |A_i| = a and |B_i| = b for all i: m <= C(a+b, a).
template <class System>
Certificate check_uniform_pair_bound(const System& system) {
  if (system.arity() != 2) throw ShapeError("uniform pair bound needs pairs");
  detail::require_verified(system, Condition::skew, "uniform pair bound");
  if (system.empty()) throw PreconditionError("uniform pair bound: an empty system has no uniform profile");
  const auto sizes = profile(system, 0).totals();
  for (std::size_t i = 1; i < system.size(); ++i)
    if (profile(system, i).totals() != sizes)
      throw PreconditionError("uniform pair bound: sizes are not uniform (tuple " + std::to_string(i + 1) + " differs)");
  Certificate c;
  c.statement = "skew uniform pairs: m <= C(a+b, a)";
  c.field_caveat = detail::field_caveat_of(system);
  const std::size_t a = sizes[0], b = sizes[1];
  c.checks.push_back(make_bound_check("m <= C(" + std::to_string(a + b) + "," + std::to_string(a) + ")",
                                      BigRational(static_cast<unsigned long>(system.size())),
                                      BigRational(binomial(a + b, static_cast<long>(a)))));
  return detail::finish(std::move(c));
}

/// Alon: skew set pairs with uniform per-block sizes a_k, b_k over a
/// partition satisfy m <= prod_k C(a_k + b_k, a_k).
inline Certificate check_alon_bound(const SetSystem& system) {
  if (system.arity() != 2) throw ShapeError("block-uniform bound needs pairs");
  if (!system.partition()) throw PreconditionError("block-uniform bound needs a partition");
  detail::require_verified(system, Condition::skew, "block-uniform bound");
  TypeVector t = detail::uniform_profile(system, "block-uniform bound");
  Certificate c;
  c.statement = "skew pairs, uniform per block: m <= prod_k C(a_k+b_k, a_k)";
  c.checks.push_back(make_bound_check("m <= prod_k C(a_k+b_k, a_k)",
                                      BigRational(static_cast<unsigned long>(system.size())),
                                      BigRational(detail::block_binomial_product(t))));
  return detail::finish(std::move(c));
}

/// Subspace analogue of the block-uniform bound: needs a decomposition the
/// system is compatible with.
template <ExactScalar S>
Certificate check_block_uniform_bound(const SubspaceSystem<S>& system) {
  if (system.arity() != 2) throw ShapeError("block-uniform bound needs pairs");
  if (!system.decomposition()) throw PreconditionError("block-uniform bound needs a decomposition");
  if (!is_decomposition_compatible(system))
    throw PreconditionError("block-uniform bound needs a decomposition-compatible system");
  detail::require_verified(system, Condition::skew, "block-uniform bound");
  TypeVector t = detail::uniform_profile(system, "block-uniform bound");
  Certificate c;
  c.statement = "skew subspace pairs, uniform per component: m <= prod_k C(a_k+b_k, a_k)";
  c.field_caveat = !system.field().is_rational();
  c.checks.push_back(make_bound_check("m <= prod_k C(a_k+b_k, a_k)",
                                      BigRational(static_cast<unsigned long>(system.size())),
                                      BigRational(detail::block_binomial_product(t))));
  return detail::finish(std::move(c));
}

/// Counting bounds licensed by the verified condition:
///  - weak set d-tuples: m <= (d+1)^n, and for uniform pairs
///    m <= (a+b)^(a+b) / (a^a b^b);
///  - skew subspace pairs: m <= 2^n; skew subspace d-tuples: m <= d^n.
/// GF(p) certificates carry the caveat flag and report violations as
/// findings (holds == false) instead of throwing.
template <class System>
Certificate check_cardinality_lemmas(const System& system) {
  const auto m = BigRational(static_cast<unsigned long>(system.size()));
  const std::size_t d = system.arity();
  Certificate c;
  if constexpr (is_set_system_v<System>) {
    const std::size_t n = system.ground_size();
    detail::require_verified(system, Condition::weak, "cardinality bounds for set systems");
    c.statement = "weak set d-tuples";
    c.checks.push_back(make_bound_check("m <= (d+1)^n", m, BigRational(power(BigInt(static_cast<unsigned long>(d + 1)), n))));
    if (d == 2 && !system.empty()) {
      bool uniform = true;
      for (std::size_t i = 1; i < system.size(); ++i)
        uniform = uniform && system[i][0].size() == system[0][0].size() && system[i][1].size() == system[0][1].size();
      if (uniform) {
        const unsigned long a = system[0][0].size(), b = system[0][1].size();
        BigRational bound(power(BigInt(a + b), a + b), power(BigInt(a), a) * power(BigInt(b), b));
        bound.canonicalize();
        c.checks.push_back(make_bound_check("m <= (a+b)^(a+b)/(a^a b^b)", m, bound));
      }
    }
  } else {
    const std::size_t n = system.ambient_dim();
    c.field_caveat = !system.field().is_rational();
    if (!verify(system, Condition::skew).verdict)
      throw LicenseError("no counting bound is available for subspace systems that are not skew");
    if (d == 2) {
      c.statement = "skew subspace pairs";
      c.checks.push_back(make_bound_check("m <= 2^n", m, BigRational(power(BigInt(2), n))));
    } else {
      c.statement = "skew subspace d-tuples";
      c.checks.push_back(make_bound_check("m <= d^n", m, BigRational(power(BigInt(static_cast<unsigned long>(d)), n))));
    }
  }
  return detail::finish(std::move(c));
}

}  // namespace bollobas
