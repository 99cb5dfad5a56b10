#pragma once

// Weights ω and potentials φ as exact values, and inequality verdicts that
// are only issued when the condition licensing the bound is verified.

#include <optional>
#include <string>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/systems.hpp"
#include "bollobas/verifiers.hpp"

namespace bollobas {

enum class Functional {
  bollobas_sum,         ///< Σ 1/C(a+b, a)
  yue_sum,              ///< Σ 1/((1+a+b) C(a+b, a))
  partitioned_yue_sum,  ///< Σ ∏_k 1/((1+a_k+b_k) C(a_k+b_k, a_k))
  block_product_sum,    ///< Σ ∏_k 1/C(a_k+b_k, a_k), bounded by ∏(1+n_k)
  tuza_sum,             ///< Σ ∏_l p_l^{|A^(l)|}
  scott_wilmer_sum,     ///< Σ 1/C(a+b, a) under the monotone precondition
  hegedus_frankl_sum,   ///< Σ 1/C(a+b, b), bounded by n+1
};

struct FunctionalKind {
  Functional functional = Functional::yue_sum;
  std::optional<ProbabilityVector> p;  ///< only for tuza_sum

  static FunctionalKind tuza(ProbabilityVector p) { return {Functional::tuza_sum, std::move(p)}; }
  FunctionalKind() = default;
  FunctionalKind(Functional f, std::optional<ProbabilityVector> probs = std::nullopt) : functional(f), p(std::move(probs)) {
    if (f == Functional::tuza_sum && !p) throw PreconditionError("tuza_sum needs a probability vector");
  }
};

inline std::string to_string(Functional f) {
  switch (f) {
    case Functional::bollobas_sum: return "bollobas";
    case Functional::yue_sum: return "yue";
    case Functional::partitioned_yue_sum: return "partitioned-yue";
    case Functional::block_product_sum: return "block-product";
    case Functional::tuza_sum: return "tuza";
    case Functional::scott_wilmer_sum: return "scott-wilmer";
    case Functional::hegedus_frankl_sum: return "hegedus-frankl";
  }
  return "?";
}

inline Functional parse_functional(std::string_view s) {
  for (auto f : {Functional::bollobas_sum, Functional::yue_sum, Functional::partitioned_yue_sum,
                 Functional::block_product_sum, Functional::tuza_sum, Functional::scott_wilmer_sum,
                 Functional::hegedus_frankl_sum})
    if (s == to_string(f)) return f;
  throw PreconditionError("unknown functional '" + std::string(s) + "'");
}

inline bool is_pair_functional(Functional f) { return f != Functional::tuza_sum; }
inline bool is_partitioned_functional(Functional f) {
  return f == Functional::partitioned_yue_sum || f == Functional::block_product_sum;
}

/// Term of a single tuple with the given profile.
inline BigRational weight_term(const FunctionalKind& kind, const TypeVector& t) {
  auto pair_totals = [&] {
    auto s = t.totals();
    return std::pair<std::size_t, std::size_t>{s[0], s[1]};
  };
  switch (kind.functional) {
    case Functional::bollobas_sum:
    case Functional::scott_wilmer_sum: {
      auto [a, b] = pair_totals();
      return BigRational(1, binomial(a + b, static_cast<long>(a)));
    }
    case Functional::hegedus_frankl_sum: {
      auto [a, b] = pair_totals();
      return BigRational(1, binomial(a + b, static_cast<long>(b)));
    }
    case Functional::yue_sum: {
      auto [a, b] = pair_totals();
      return BigRational(1, binomial(a + b, static_cast<long>(a)) * static_cast<unsigned long>(1 + a + b));
    }
    case Functional::partitioned_yue_sum: {
      BigInt denom = 1;
      for (const auto& row : t.blocks)
        denom *= binomial(row[0] + row[1], static_cast<long>(row[0])) * static_cast<unsigned long>(1 + row[0] + row[1]);
      return BigRational(1, denom);
    }
    case Functional::block_product_sum: {
      BigInt denom = 1;
      for (const auto& row : t.blocks) denom *= binomial(row[0] + row[1], static_cast<long>(row[0]));
      return BigRational(1, denom);
    }
    case Functional::tuza_sum: {
      auto sizes = t.totals();
      BigRational term = 1;
      for (std::size_t l = 0; l < sizes.size(); ++l) term *= rational_power((*kind.p)[l], sizes[l]);
      return term;
    }
  }
  return 0;
}

namespace detail {

template <class System>
void check_functional_shape(const System& system, const FunctionalKind& kind) {
  const Functional f = kind.functional;
  if (is_pair_functional(f) && system.arity() != 2)
    throw ShapeError(to_string(f) + " is defined for pairs, system has arity " + std::to_string(system.arity()));
  if (is_partitioned_functional(f) && !system.has_context())
    throw ShapeError(to_string(f) + " needs a partition or decomposition");
  if (f == Functional::tuza_sum && kind.p->size() != system.arity())
    throw ShapeError("probability vector has " + std::to_string(kind.p->size()) + " entries, system arity is " +
                     std::to_string(system.arity()));
}

template <class System>
System without_context(const System& system) {
  if constexpr (is_set_system_v<System>) return system.with_partition(std::nullopt);
  else return system.with_decomposition(std::nullopt);
}

template <class System>
std::vector<TypeVector> profiles_for(const System& system, const FunctionalKind& kind) {
  // Non-partitioned functionals only need total sizes; skip the block split.
  if (!is_partitioned_functional(kind.functional) && system.has_context()) return profiles(without_context(system));
  return profiles(system);
}

template <class System>
bool is_monotone(const System& system) {
  for (std::size_t i = 0; i + 1 < system.size(); ++i)
    if (measure(system[i][0]) > measure(system[i + 1][0]) || measure(system[i][1]) < measure(system[i + 1][1]))
      return false;
  return true;
}

}  // namespace detail

/// Per-tuple terms of ω, in system order.
template <class System>
std::vector<BigRational> omega_terms(const System& system, const FunctionalKind& kind) {
  detail::check_functional_shape(system, kind);
  if (kind.functional == Functional::scott_wilmer_sum && !detail::is_monotone(system))
    throw PreconditionError("scott-wilmer needs a_1 <= ... <= a_m and b_1 >= ... >= b_m");
  std::vector<BigRational> terms;
  for (const auto& t : detail::profiles_for(system, kind)) terms.push_back(weight_term(kind, t));
  return terms;
}

/// Exact weight; 0 for the empty system.
template <class System>
BigRational omega(const System& system, const FunctionalKind& kind) {
  BigRational total = 0;
  for (const auto& term : omega_terms(system, kind)) total += term;
  return total;
}

struct InequalityVerdict {
  BigRational value;
  BigRational bound;
  bool holds = true;
  bool tight = false;
  ConditionKind licensing;
  bool field_caveat = false;
};

namespace detail {

template <class System>
bool context_is_compatible(const System& system) {
  if constexpr (is_set_system_v<System>) return system.has_context();
  else return system.has_context() && is_decomposition_compatible(system);
}

template <class System>
ConditionKind license_or_throw(const System& system, const FunctionalKind& kind) {
  const Functional f = kind.functional;
  auto require = [&](ConditionKind k) {
    auto report = verify(system, k);
    if (!report.verdict) {
      const auto& v = *report.first_violation;
      throw LicenseError("the bound for " + to_string(f) + " needs a verified " + to_string(k.condition) +
                         (k.monotone ? " (monotone)" : "") + " system; " + to_string(v.clause) + " fails at (" +
                         std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + ")");
    }
    return k;
  };
  const std::size_t d = system.arity();
  switch (f) {
    case Functional::bollobas_sum:
      if constexpr (is_set_system_v<System>)
        if (verify(system, ConditionKind{Condition::bollobas, 2, false}).verdict)
          return ConditionKind{Condition::bollobas, 2, false};
      return require(ConditionKind{Condition::skew, 2, true});
    case Functional::scott_wilmer_sum:
      return require(ConditionKind{Condition::skew, 2, true});
    case Functional::yue_sum:
    case Functional::hegedus_frankl_sum:
      return require(ConditionKind{Condition::skew, 2, false});
    case Functional::partitioned_yue_sum:
    case Functional::block_product_sum:
      if (!context_is_compatible(system))
        throw LicenseError("the bound for " + to_string(f) + " needs a decomposition-compatible system");
      return require(ConditionKind{Condition::skew, 2, false});
    case Functional::tuza_sum:
      if constexpr (is_set_system_v<System>) return require(ConditionKind{Condition::weak, d, false});
      else return require(ConditionKind{Condition::skew, d, false});
  }
  throw LicenseError("unknown functional");
}

template <class System>
std::size_t ground_of(const System& system) {
  if constexpr (is_set_system_v<System>) return system.ground_size();
  else return system.ambient_dim();
}

}  // namespace detail

/// The bound each functional is compared against: 1, n+1, or ∏(1+n_k).
template <class System>
BigRational inequality_bound(const System& system, const FunctionalKind& kind) {
  switch (kind.functional) {
    case Functional::hegedus_frankl_sum:
      return BigRational(static_cast<unsigned long>(detail::ground_of(system) + 1));
    case Functional::block_product_sum: {
      BigInt b = 1;
      for (auto nk : system.block_sizes()) b *= static_cast<unsigned long>(1 + nk);
      return BigRational(b);
    }
    default:
      return BigRational(1);
  }
}

/// ω together with its licensed bound. Throws LicenseError when the
/// condition granting the bound does not hold; bollobas_sum <= 1 in
/// particular is false for general skew systems.
template <class System>
InequalityVerdict evaluate_inequality(const System& system, const FunctionalKind& kind) {
  detail::check_functional_shape(system, kind);
  InequalityVerdict v;
  v.licensing = detail::license_or_throw(system, kind);
  v.value = omega(system, kind);
  v.bound = inequality_bound(system, kind);
  v.holds = v.value <= v.bound;
  v.tight = v.value == v.bound;
  if constexpr (!is_set_system_v<System>) v.field_caveat = !system.field().is_rational();
  return v;
}

/// Which potential: set d-tuples (Σ |A^(l)|), decomposed subspace pairs
/// (Σ_i ∏_k 2^{n_k - d_ik}) or subspace d-tuples (Σ dims).
enum class Flavor { set, pair, tuple };

inline std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::set: return "set";
    case Flavor::pair: return "pair";
    case Flavor::tuple: return "tuple";
  }
  return "?";
}

inline Flavor parse_flavor(std::string_view s) {
  if (s == "set") return Flavor::set;
  if (s == "pair") return Flavor::pair;
  if (s == "tuple") return Flavor::tuple;
  throw PreconditionError("unknown flavor '" + std::string(s) + "' (expected set, pair or tuple)");
}

template <class System>
void check_flavor(const System& system, Flavor flavor) {
  if constexpr (is_set_system_v<System>) {
    if (flavor != Flavor::set) throw ShapeError("set systems only have the set flavor");
  } else {
    if (flavor == Flavor::set) throw ShapeError("the set flavor needs a set system");
    if (flavor == Flavor::pair) {
      if (system.arity() != 2) throw ShapeError("the pair flavor needs pairs");
      if (!system.decomposition()) throw ShapeError("the pair flavor needs a decomposition");
    }
  }
}

/// d_ik = n_k - dim((A_i ∩ V_k) ⊕ (B_i ∩ V_k)) for each block k.
template <ExactScalar S>
std::vector<std::size_t> deficits(const SubspaceSystem<S>& system, std::size_t i) {
  check_flavor(system, Flavor::pair);
  std::vector<std::size_t> out;
  for (const auto& block : system.decomposition()->blocks()) {
    auto filled = sum(component(system[i][0], block), component(system[i][1], block));
    out.push_back(block.dim() - filled.dim());
  }
  return out;
}

/// ∏_k 2^{n_k - d_ik}, the contribution of pair i to the pair potential.
template <ExactScalar S>
BigInt pair_potential_term(const SubspaceSystem<S>& system, std::size_t i) {
  auto def = deficits(system, i);
  const auto dims = system.decomposition()->block_dims();
  unsigned long exponent = 0;
  for (std::size_t k = 0; k < def.size(); ++k) exponent += dims[k] - def[k];
  return power(BigInt(2), exponent);
}

template <class System>
BigInt phi(const System& system, Flavor flavor) {
  check_flavor(system, flavor);
  BigInt total = 0;
  if constexpr (is_set_system_v<System>) {
    for (const auto& t : system.tuples())
      for (auto s : t) total += static_cast<unsigned long>(s.size());
  } else if (flavor == Flavor::pair) {
    for (std::size_t i = 0; i < system.size(); ++i) total += pair_potential_term(system, i);
  } else {
    for (const auto& t : system.tuples())
      for (const auto& u : t) total += static_cast<unsigned long>(u.dim());
  }
  return total;
}

/// Termination ceiling: n(d+1)^n for sets, 4^n for pairs, n d^n for tuples.
template <class System>
BigInt phi_upper_bound(const System& system, Flavor flavor) {
  check_flavor(system, flavor);
  const unsigned long n = detail::ground_of(system);
  const unsigned long d = system.arity();
  switch (flavor) {
    case Flavor::set: return BigInt(n) * power(BigInt(d + 1), n);
    case Flavor::pair: return power(BigInt(4), n);
    case Flavor::tuple: return BigInt(n) * power(BigInt(d), n);
  }
  return 0;
}

}  // namespace bollobas
