#pragma once

// Families on which the inequalities are attained with equality.

#include <string>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/systems.hpp"

namespace bollobas {

inline constexpr std::size_t kDefaultFamilyBudget = std::size_t{1} << 20;

namespace detail {

inline void guard_family_size(const BigInt& count, std::size_t budget, const std::string& what) {
  if (count > BigInt(static_cast<unsigned long>(budget)))
    throw BudgetError(what + " would have " + count.get_str() + " tuples, above the budget of " +
                      std::to_string(budget));
}

/// k-subsets of {1..n} in lexicographic order of their sorted elements.
inline std::vector<Subset> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i + 1;
  while (true) {
    out.push_back(Subset::from_elements(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace detail

/// All C(a+b, a) pairs (S, [a+b] \ S) with |S| = a: a Bollobás system on
/// which Σ 1/C(a+b, a) = 1.
inline SetSystem uniform_bollobas(std::size_t a, std::size_t b, std::size_t budget = kDefaultFamilyBudget) {
  const std::size_t n = a + b;
  detail::guard_family_size(binomial(n, static_cast<long>(a)), budget, "uniform_bollobas");
  const Subset ground = Subset::ground(n);
  std::vector<SetTuple> tuples;
  for (auto s : detail::subsets_of_size(n, a)) tuples.push_back({s, ground & Subset(~s.bits())});
  return {n, 2, std::move(tuples)};
}

/// All 2^n pairs (S, [n] \ S) ordered by non-increasing |S|, ties broken
/// lexicographically. Skew; yue = 1 and hegedus-frankl = n + 1.
inline SetSystem complement_chain(std::size_t n, std::size_t budget = kDefaultFamilyBudget) {
  detail::guard_family_size(power(BigInt(2), n), budget, "complement_chain");
  const Subset ground = Subset::ground(n);
  std::vector<SetTuple> tuples;
  for (std::size_t k = n + 1; k-- > 0;)
    for (auto s : detail::subsets_of_size(n, k)) tuples.push_back({s, ground & Subset(~s.bits())});
  return {n, 2, std::move(tuples)};
}

/// complement_chain(n) with a declared partition; partitioned-yue = 1.
/// Blocks are lists of 1-based elements.
inline SetSystem partitioned_complement_chain(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks,
                                              std::size_t budget = kDefaultFamilyBudget) {
  std::vector<Subset> partition;
  for (const auto& b : blocks) {
    for (auto e : b)
      if (e < 1 || e > n) throw PreconditionError("partition element " + std::to_string(e) + " outside [n]");
    partition.push_back(Subset::from_elements(b));
  }
  return complement_chain(n, budget).with_partition(std::move(partition));
}

/// All d^n d-tuples partitioning [n], in counter order: the coordinate of
/// element 1 varies fastest. Weak; tuza = (p_1 + ... + p_d)^n = 1 for every p.
inline SetSystem full_tuza_tuples(std::size_t n, std::size_t d, std::size_t budget = kDefaultFamilyBudget) {
  if (d == 0) throw PreconditionError("arity must be at least 1");
  detail::guard_family_size(power(BigInt(static_cast<unsigned long>(d)), n), budget, "full_tuza_tuples");
  std::vector<SetTuple> tuples;
  std::vector<std::size_t> label(n, 0);
  while (true) {
    SetTuple t(d);
    for (std::size_t e = 0; e < n; ++e) t[label[e]] = t[label[e]].with(e + 1);
    tuples.push_back(std::move(t));
    std::size_t e = 0;
    while (e < n && ++label[e] == d) label[e++] = 0;
    if (e == n) break;
  }
  return {n, d, std::move(tuples)};
}

enum class Family { uniform_bollobas, complement_chain, partitioned_complement_chain, full_tuza_tuples };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::uniform_bollobas: return "uniform-bollobas";
    case Family::complement_chain: return "complement-chain";
    case Family::partitioned_complement_chain: return "partitioned-complement-chain";
    case Family::full_tuza_tuples: return "full-tuza-tuples";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  for (auto f : {Family::uniform_bollobas, Family::complement_chain, Family::partitioned_complement_chain,
                 Family::full_tuza_tuples})
    if (s == to_string(f)) return f;
  throw PreconditionError("unknown family '" + std::string(s) + "'");
}

struct FamilyKind {
  Family family = Family::complement_chain;
  /// (a, b), (n) or (n, d) depending on the family.
  std::vector<std::size_t> params;
  /// Partition blocks for the partitioned chain.
  std::vector<std::vector<std::size_t>> blocks;
  bool embedded = false;
};

inline AnySystem construct(const FamilyKind& kind, std::size_t budget = kDefaultFamilyBudget) {
  auto need = [&](std::size_t count) {
    if (kind.params.size() != count)
      throw PreconditionError(to_string(kind.family) + " takes " + std::to_string(count) + " parameter(s)");
  };
  SetSystem system = [&]() -> SetSystem {
    switch (kind.family) {
      case Family::uniform_bollobas: need(2); return uniform_bollobas(kind.params[0], kind.params[1], budget);
      case Family::complement_chain: need(1); return complement_chain(kind.params[0], budget);
      case Family::partitioned_complement_chain:
        need(1);
        return partitioned_complement_chain(kind.params[0], kind.blocks, budget);
      case Family::full_tuza_tuples: need(2); return full_tuza_tuples(kind.params[0], kind.params[1], budget);
    }
    throw PreconditionError("unknown family");
  }();
  if (kind.embedded) return embed(system);
  return system;
}

}  // namespace bollobas
