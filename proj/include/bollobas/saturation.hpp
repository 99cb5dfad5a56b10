#pragma once

// Weight-preserving fill-up operations, saturation to a system of full
// tuples, and certification of a full system by type classes.
//
// A fill-up replaces a non-full tuple by d (or 2) tuples that each absorb a
// new element/vector x in one coordinate. The weight of the system is
// unchanged and the potential grows by a fixed positive amount, so repeated
// fill-ups terminate; a full system is then bounded class by class.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/subspace.hpp"
#include "bollobas/systems.hpp"
#include "bollobas/verifiers.hpp"
#include "bollobas/weights.hpp"

namespace bollobas {

/// Where x goes first when a decomposed pair is filled up. Only
/// extend_a_first keeps the system skew: the earlier pair (A+<x>, B) then
/// meets the later pair (A, B+<x>) in <x>.
enum class ReplacementOrder { extend_a_first, extend_b_first };

template <class System>
struct SystemTraits;

template <>
struct SystemTraits<SetSystem> {
  using Tuple = SetTuple;
  using Element = std::size_t;  ///< ground element, 1-based
};

template <ExactScalar S>
struct SystemTraits<SubspaceSystem<S>> {
  using Tuple = SubspaceTuple<S>;
  using Element = Vector<S>;
};

template <class System>
struct FillUpStep {
  using Tuple = typename SystemTraits<System>::Tuple;
  using Element = typename SystemTraits<System>::Element;

  std::size_t index = 0;             ///< position of the replaced tuple (0-based)
  std::optional<std::size_t> block;  ///< block k for decomposed pairs (0-based)
  Element x{};
  std::vector<Tuple> replacements;   ///< inserted at `index`, in this order
  std::vector<BigRational> omega_before, omega_after;
  BigInt phi_before, phi_after;
};

template <class System>
struct SaturationTrace {
  Flavor flavor = Flavor::set;
  std::vector<FunctionalKind> tracked;
  std::vector<FillUpStep<System>> steps;
  BigInt phi_bound;
  std::vector<BigRational> omega_initial;
  BigInt phi_initial;
  System final_system;
};

struct SaturationOptions {
  /// Functionals whose invariance is checked at every step. Empty selects
  /// the default for the flavor: tuza with the uniform vector for set and
  /// tuple flavors, partitioned-yue for pairs.
  std::vector<FunctionalKind> tracked;
  /// Re-verify the licensing condition after every step.
  bool verify_each_step = false;
};

namespace detail {

template <class Tuple>
std::vector<Tuple> splice_tuples(const std::vector<Tuple>& tuples, std::size_t i, const std::vector<Tuple>& replacements) {
  std::vector<Tuple> out;
  out.reserve(tuples.size() + replacements.size());
  out.insert(out.end(), tuples.begin(), tuples.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), replacements.begin(), replacements.end());
  out.insert(out.end(), tuples.begin() + static_cast<std::ptrdiff_t>(i) + 1, tuples.end());
  return out;
}

inline Subset covered(const SetTuple& t) {
  Subset u;
  for (auto s : t) u = u | s;
  return u;
}

template <ExactScalar S>
Subspace<S> covered(const SubspaceTuple<S>& t, std::size_t n, const FieldTag& f) {
  Matrix<S> rows;
  for (const auto& u : t) rows.insert(rows.end(), u.rows().begin(), u.rows().end());
  return Subspace<S>::span(n, f, std::move(rows));
}

inline std::vector<SetTuple> set_replacements(const SetTuple& t, std::size_t x) {
  std::vector<SetTuple> out;
  for (std::size_t l = 0; l < t.size(); ++l) {
    SetTuple r = t;
    r[l] = r[l].with(x);
    out.push_back(std::move(r));
  }
  return out;
}

template <ExactScalar S>
std::vector<SubspaceTuple<S>> subspace_replacements(const SubspaceTuple<S>& t, const Vector<S>& x) {
  std::vector<SubspaceTuple<S>> out;
  for (std::size_t l = 0; l < t.size(); ++l) {
    SubspaceTuple<S> r = t;
    r[l] = extend(r[l], x);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string index_text(std::size_t i) { return std::to_string(i + 1); }

template <ExactScalar S>
Subspace<S> filled_part(const SubspaceSystem<S>& system, std::size_t i, std::size_t k) {
  const auto& block = (*system.decomposition())[k];
  return sum(component(system[i][0], block), component(system[i][1], block));
}

}  // namespace detail

/// Replace set tuple i by the d tuples that add x to coordinate l = 1..d.
/// Requires a weak (or skew) system and x outside the tuple's union.
inline SetSystem fill_up_set_tuple(const SetSystem& system, std::size_t i, std::size_t x) {
  if (i >= system.size()) throw PreconditionError("tuple index out of range");
  if (x < 1 || x > system.ground_size()) throw PreconditionError("x is not a ground element");
  if (detail::covered(system[i]).contains(x))
    throw PreconditionError("x already covered by tuple " + detail::index_text(i));
  detail::require_verified(system, Condition::weak, "set fill-up");
  auto replacements = detail::set_replacements(system[i], x);
  for (const auto& r : replacements)
    for (const auto& t : system.tuples())
      if (r == t) throw InvariantError("fill-up produced a tuple already in the system");
  return system.with_tuples(detail::splice_tuples(system.tuples(), i, replacements));
}

/// The two replacements of decomposed pair i spliced in at position i, with
/// no verification. x is the first basis row of V_k outside
/// (A ∩ V_k) ⊕ (B ∩ V_k).
template <ExactScalar S>
SubspaceSystem<S> replace_pair(const SubspaceSystem<S>& system, std::size_t i, std::size_t k,
                               ReplacementOrder order = ReplacementOrder::extend_a_first) {
  check_flavor(system, Flavor::pair);
  if (i >= system.size()) throw PreconditionError("pair index out of range");
  if (k >= system.decomposition()->size()) throw PreconditionError("block index out of range");
  auto x = extension_vector((*system.decomposition())[k], detail::filled_part(system, i, k));
  if (!x) throw PreconditionError("pair " + detail::index_text(i) + " is already full in block " + detail::index_text(k));
  auto replacements = detail::subspace_replacements(system[i], *x);
  if (order == ReplacementOrder::extend_b_first) std::swap(replacements[0], replacements[1]);
  return system.with_tuples(detail::splice_tuples(system.tuples(), i, replacements));
}

/// Replace decomposed pair i by (A ⊕ <x>, B) then (A, B ⊕ <x>). Requires a
/// skew, decomposition-compatible system. Throws InvariantError if the
/// result is not skew, which is what extend_b_first produces.
template <ExactScalar S>
SubspaceSystem<S> fill_up_subspace_pair(const SubspaceSystem<S>& system, std::size_t i, std::size_t k,
                                        ReplacementOrder order = ReplacementOrder::extend_a_first) {
  check_flavor(system, Flavor::pair);
  if (!is_decomposition_compatible(system)) throw PreconditionError("system is not decomposition-compatible");
  detail::require_verified(system, Condition::skew, "pair fill-up");
  auto result = replace_pair(system, i, k, order);
  auto report = verify(result, Condition::skew);
  if (!report.verdict) {
    const auto& v = *report.first_violation;
    throw InvariantError("pair fill-up broke skewness: " + to_string(v.clause) + " fails at (" +
                         detail::index_text(v.i) + "," + detail::index_text(v.j) + ")");
  }
  return result;
}

/// Replace subspace tuple i by the d tuples adding <x> to coordinate
/// l = 1..d, x the first standard basis vector outside A^(1) ⊕ ... ⊕ A^(d).
template <ExactScalar S>
SubspaceSystem<S> fill_up_subspace_tuple(const SubspaceSystem<S>& system, std::size_t i) {
  if (i >= system.size()) throw PreconditionError("tuple index out of range");
  detail::require_verified(system, Condition::skew, "tuple fill-up");
  const auto full = Subspace<S>::full(system.ambient_dim(), system.field());
  auto x = extension_vector(full, detail::covered(system[i], system.ambient_dim(), system.field()));
  if (!x) throw PreconditionError("tuple " + detail::index_text(i) + " is already full");
  auto replacements = detail::subspace_replacements(system[i], *x);
  return system.with_tuples(detail::splice_tuples(system.tuples(), i, replacements));
}

namespace detail {

template <class System>
std::vector<FunctionalKind> default_tracked(const System& system, Flavor flavor) {
  if (flavor == Flavor::pair) return {FunctionalKind(Functional::partitioned_yue_sum)};
  return {FunctionalKind::tuza(ProbabilityVector::uniform(system.arity()))};
}

template <class System>
std::vector<BigRational> omegas(const System& system, const std::vector<FunctionalKind>& kinds) {
  std::vector<BigRational> out;
  for (const auto& k : kinds) out.push_back(omega(system, k));
  return out;
}

/// Condition that saturation of the flavor preserves and relies on.
template <class System>
void require_flavor_condition(const System& system, Flavor flavor) {
  check_flavor(system, flavor);
  if constexpr (is_set_system_v<System>) {
    require_verified(system, Condition::weak, "set saturation");
  } else {
    if (flavor == Flavor::pair && !is_decomposition_compatible(system))
      throw PreconditionError("pair saturation needs a decomposition-compatible system");
    // Weak subspace systems are refused: no counting bound certifies them.
    require_verified(system, Condition::skew, flavor == Flavor::pair ? "pair saturation" : "tuple saturation");
  }
}

template <class System>
Condition flavor_condition() {
  return is_set_system_v<System> ? Condition::weak : Condition::skew;
}

/// First non-full position: (tuple index, block) or nothing.
inline std::optional<std::pair<std::size_t, std::optional<std::size_t>>> first_open(const SetSystem& system) {
  const Subset ground = Subset::ground(system.ground_size());
  for (std::size_t i = 0; i < system.size(); ++i)
    if (!(covered(system[i]) == ground)) return std::pair{i, std::optional<std::size_t>{}};
  return std::nullopt;
}

template <ExactScalar S>
std::optional<std::pair<std::size_t, std::optional<std::size_t>>> first_open(const SubspaceSystem<S>& system,
                                                                              Flavor flavor) {
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (flavor == Flavor::pair) {
      auto def = deficits(system, i);
      for (std::size_t k = 0; k < def.size(); ++k)
        if (def[k] > 0) return std::pair{i, std::optional<std::size_t>{k}};
    } else {
      std::size_t total = 0;
      for (const auto& u : system[i]) total += u.dim();
      if (total < system.ambient_dim()) return std::pair{i, std::optional<std::size_t>{}};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// φ(after) - φ(before) for a set or tuple fill-up of a tuple whose parts
/// have total size `s`: d copies of size s + 1 replace one of size s.
/// This is d only when the tuple is empty.
inline BigInt fill_up_increment(std::size_t d, std::size_t s) {
  return BigInt(static_cast<unsigned long>((d - 1) * s + d));
}

/// Fill up until every tuple is full: deterministic scan of the lowest
/// non-full tuple, then the lowest open block, then the first extension
/// element. Every step checks exact weight invariance, the exact potential
/// increment (fill_up_increment, or 3 ∏_j 2^{n_j - d_ij} for pairs) and the potential
/// ceiling; a failure throws InvariantError.
template <class System>
SaturationTrace<System> saturate(const System& system, Flavor flavor, const SaturationOptions& options = {}) {
  detail::require_flavor_condition(system, flavor);
  SaturationTrace<System> trace{flavor,
                                options.tracked.empty() ? detail::default_tracked(system, flavor) : options.tracked,
                                {},
                                phi_upper_bound(system, flavor),
                                {},
                                phi(system, flavor),
                                system};
  trace.omega_initial = detail::omegas(system, trace.tracked);
  System current = system;
  std::vector<BigRational> omega_now = trace.omega_initial;
  BigInt phi_now = trace.phi_initial;

  while (true) {
    std::optional<std::pair<std::size_t, std::optional<std::size_t>>> open;
    if constexpr (is_set_system_v<System>) open = detail::first_open(current);
    else open = detail::first_open(current, flavor);
    if (!open) break;

    FillUpStep<System> step;
    step.index = open->first;
    step.block = open->second;
    step.omega_before = omega_now;
    step.phi_before = phi_now;
    BigInt expected_increment;
    const std::size_t i = step.index;

    if constexpr (is_set_system_v<System>) {
      const Subset open_elems = Subset::ground(current.ground_size()) & Subset(~detail::covered(current[i]).bits());
      step.x = open_elems.elements().front();
      step.replacements = detail::set_replacements(current[i], step.x);
      for (const auto& r : step.replacements)
        for (const auto& t : current.tuples())
          if (r == t) throw InvariantError("fill-up produced a tuple already in the system");
      expected_increment = fill_up_increment(current.arity(), detail::covered(current[i]).size());
    } else if (flavor == Flavor::pair) {
      const std::size_t k = *step.block;
      step.x = *extension_vector((*current.decomposition())[k], detail::filled_part(current, i, k));
      step.replacements = detail::subspace_replacements(current[i], step.x);
      expected_increment = 3 * pair_potential_term(current, i);
    } else {
      using Scalar = typename System::Scalar;
      step.x = *extension_vector(Subspace<Scalar>::full(current.ambient_dim(), current.field()),
                                 detail::covered(current[i], current.ambient_dim(), current.field()));
      step.replacements = detail::subspace_replacements(current[i], step.x);
      expected_increment = fill_up_increment(
          current.arity(), detail::covered(current[i], current.ambient_dim(), current.field()).dim());
    }

    current = current.with_tuples(detail::splice_tuples(current.tuples(), i, step.replacements));
    step.omega_after = detail::omegas(current, trace.tracked);
    step.phi_after = phi(current, flavor);

    for (std::size_t f = 0; f < trace.tracked.size(); ++f)
      if (step.omega_after[f] != step.omega_before[f])
        throw InvariantError("weight " + to_string(trace.tracked[f].functional) + " changed from " +
                             to_string(step.omega_before[f]) + " to " + to_string(step.omega_after[f]) +
                             " at step " + std::to_string(trace.steps.size() + 1));
    if (step.phi_after - step.phi_before != expected_increment)
      throw InvariantError("potential increment " + to_string(BigInt(step.phi_after - step.phi_before)) +
                           " differs from the expected " + to_string(expected_increment));
    if (step.phi_after > trace.phi_bound) throw InvariantError("potential exceeds its ceiling");
    if (options.verify_each_step) {
      auto report = verify(current, detail::flavor_condition<System>());
      if (!report.verdict) throw InvariantError("fill-up broke the verified condition at step " +
                                                std::to_string(trace.steps.size() + 1));
    }

    omega_now = step.omega_after;
    phi_now = step.phi_after;
    trace.steps.push_back(std::move(step));
    if (BigInt(static_cast<unsigned long>(trace.steps.size())) > trace.phi_bound)
      throw InvariantError("saturation exceeded the potential ceiling in step count");
  }
  trace.final_system = std::move(current);
  return trace;
}

/// Indices sharing one type a, counted against the class bound:
/// ∏_k C(n_k, a_k) for decomposed pairs, C(n; a_1..a_d) for tuples.
struct TypeClass {
  std::vector<std::size_t> type;
  std::vector<std::size_t> members;  ///< 0-based positions
  BigInt bound;
  BigRational term;                  ///< weight of each member
  bool holds = true;
};

struct FullSystemCertificate {
  Flavor flavor = Flavor::set;
  FunctionalKind functional;
  std::vector<TypeClass> classes;
  bool classes_hold = true;
  BigRational omega;
  /// Σ_a bound_a · term_a; omega <= class_bound_sum <= 1 completes the proof.
  BigRational class_bound_sum;
  BigRational bound = 1;
  bool holds = true;
  bool field_caveat = false;
};

/// Certify a system of full tuples: group by type, check every class
/// against its counting bound and evaluate the resulting chain
/// ω = Σ_a |I_a| term_a <= Σ_a bound_a term_a <= 1.
///
/// `p` selects the tuza vector for set and tuple flavors (uniform when
/// omitted). A class over its bound is an InvariantError over the
/// rationals and a recorded finding over GF(p).
template <class System>
FullSystemCertificate certify_full_system(const System& system, Flavor flavor,
                                          std::optional<ProbabilityVector> p = std::nullopt) {
  detail::require_flavor_condition(system, flavor);
  FullSystemCertificate cert;
  cert.flavor = flavor;
  if constexpr (!is_set_system_v<System>) cert.field_caveat = !system.field().is_rational();

  std::optional<std::pair<std::size_t, std::optional<std::size_t>>> open;
  if constexpr (is_set_system_v<System>) open = detail::first_open(system);
  else open = detail::first_open(system, flavor);
  if (open) throw PreconditionError("tuple " + detail::index_text(open->first) + " is not full");

  cert.functional = flavor == Flavor::pair
                        ? FunctionalKind(Functional::partitioned_yue_sum)
                        : FunctionalKind::tuza(p ? *p : ProbabilityVector::uniform(system.arity()));
  cert.omega = omega(system, cert.functional);

  std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < system.size(); ++i) {
    TypeVector t = profile(system, i);
    std::vector<std::size_t> key;
    if (flavor == Flavor::pair) {
      for (const auto& row : t.blocks) key.push_back(row[0]);
    } else {
      key = t.totals();
    }
    groups[key].push_back(i);
  }

  const auto block_dims = system.block_sizes();
  cert.class_bound_sum = 0;
  for (auto& [type, members] : groups) {
    TypeClass c;
    c.type = type;
    c.members = members;
    if (flavor == Flavor::pair) {
      c.bound = 1;
      BigInt denom = 1;
      for (std::size_t k = 0; k < type.size(); ++k) {
        c.bound *= binomial(block_dims[k], static_cast<long>(type[k]));
        denom *= binomial(block_dims[k], static_cast<long>(type[k])) * static_cast<unsigned long>(1 + block_dims[k]);
      }
      c.term = BigRational(BigInt(1), denom);
    } else {
      std::vector<unsigned long> parts(type.begin(), type.end());
      c.bound = multinomial(parts);
      TypeVector t{{type}};
      c.term = weight_term(cert.functional, t);
    }
    c.holds = BigInt(static_cast<unsigned long>(members.size())) <= c.bound;
    cert.class_bound_sum += BigRational(c.bound) * c.term;
    if (!c.holds) {
      cert.classes_hold = false;
      if (!cert.field_caveat)
        throw InvariantError("type class of size " + std::to_string(members.size()) + " exceeds its bound " +
                             to_string(c.bound));
    }
    cert.classes.push_back(std::move(c));
  }
  cert.holds = cert.classes_hold && cert.omega <= cert.class_bound_sum && cert.class_bound_sum <= cert.bound;
  return cert;
}

}  // namespace bollobas
