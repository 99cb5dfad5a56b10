#pragma once

// Exhaustive and randomized search over small grounds: candidate
// enumeration, depth-first maximization with weight-bound pruning, seeded
// random valid systems, and the weak-subspace explorer.
//
// A system is grown by appending tuples. The skew and weak clauses only
// constrain pairs i < j, so appending T is legal iff the clause holds
// between every earlier tuple and T; no earlier pair needs rechecking. The
// weak and Bollobás clauses are symmetric, so for them only increasing
// candidate sequences are explored.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/subspace.hpp"
#include "bollobas/systems.hpp"
#include "bollobas/verifiers.hpp"
#include "bollobas/weights.hpp"

namespace bollobas {

inline constexpr std::size_t kDefaultSetGuard = 6;
inline constexpr std::size_t kDefaultSubspaceGuard = 4;

/// [n] when `field` is empty, otherwise F^n.
struct Ground {
  std::size_t n = 0;
  std::optional<FieldTag> field;
};

// ---------------------------------------------------------------------------
// Candidate enumeration

/// Every d-tuple of pairwise disjoint subsets of [n], each exactly once:
/// element e carries a label in 0..d (0 = uncovered) and the labels run as
/// a counter with element 1 fastest. (d+1)^n tuples.
template <class Visitor>
void for_each_set_candidate(std::size_t n, std::size_t d, Visitor&& visit) {
  std::vector<std::size_t> label(n, 0);
  while (true) {
    SetTuple t(d);
    for (std::size_t e = 0; e < n; ++e)
      if (label[e]) t[label[e] - 1] = t[label[e] - 1].with(e + 1);
    visit(t);
    std::size_t e = 0;
    while (e < n && ++label[e] == d + 1) label[e++] = 0;
    if (e == n) break;
  }
}

inline std::vector<SetTuple> set_candidates(std::size_t n, std::size_t d,
                                            std::size_t guard = kDefaultSetGuard) {
  if (n > guard)
    throw BudgetError("ground of size " + std::to_string(n) + " is above the exhaustive guard " + std::to_string(guard));
  std::vector<SetTuple> out;
  for_each_set_candidate(n, d, [&](const SetTuple& t) { out.push_back(t); });
  return out;
}

/// All subspaces of GF(p)^n: by dimension, then pivot columns
/// lexicographically, then free entries as a counter.
inline std::vector<Subspace<PrimeFieldScalar>> all_subspaces(std::size_t n, const FieldTag& field) {
  if (field.is_rational()) throw PreconditionError("subspace enumeration needs a finite field");
  using S = PrimeFieldScalar;
  const std::uint64_t p = field.prime;
  std::vector<Subspace<S>> out;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
      // free slots: (row r, column c) with c > piv[r] and c not a pivot
      std::vector<bool> is_pivot(n, false);
      for (auto c : piv) is_pivot[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = piv[r] + 1; c < n; ++c)
          if (!is_pivot[c]) slots.emplace_back(r, c);
      std::vector<std::uint64_t> value(slots.size(), 0);
      while (true) {
        Matrix<S> rows(k, zero_vector<S>(n, field));
        for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = S::from_residue(1, p);
        for (std::size_t s = 0; s < slots.size(); ++s)
          rows[slots[s].first][slots[s].second] = S::from_residue(value[s], p);
        out.push_back(Subspace<S>::span(n, field, std::move(rows)));
        std::size_t s = 0;
        while (s < slots.size() && ++value[s] == p) value[s++] = 0;
        if (s == slots.size()) break;
      }
      // next pivot combination
      std::size_t i = k;
      while (i > 0 && piv[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++piv[i - 1];
      for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
  return out;
}

/// Every d-tuple of subspaces of GF(p)^n whose sum is direct, ordered
/// lexicographically by the subspace indices of all_subspaces.
template <class Visitor>
void for_each_subspace_candidate(std::size_t n, const FieldTag& field, std::size_t d, Visitor&& visit) {
  auto subs = all_subspaces(n, field);
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    SubspaceTuple<PrimeFieldScalar> t;
    std::size_t total = 0;
    for (auto i : idx) {
      t.push_back(subs[i]);
      total += subs[i].dim();
    }
    if (total <= n && tuple_is_independent(t)) visit(t);
    std::size_t pos = d;
    while (pos > 0 && ++idx[pos - 1] == subs.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
}

inline std::vector<SubspaceTuple<PrimeFieldScalar>> subspace_candidates(std::size_t n, const FieldTag& field,
                                                                       std::size_t d,
                                                                       std::size_t guard = kDefaultSubspaceGuard) {
  if (n > guard)
    throw BudgetError("ambient dimension " + std::to_string(n) + " is above the exhaustive guard " +
                      std::to_string(guard));
  std::vector<SubspaceTuple<PrimeFieldScalar>> out;
  for_each_subspace_candidate(n, field, d, [&](const auto& t) { out.push_back(t); });
  return out;
}

// ---------------------------------------------------------------------------
// Maximization

enum class Objective { max_m, max_weight, counterexample };

inline std::string to_string(Objective o) {
  switch (o) {
    case Objective::max_m: return "max-m";
    case Objective::max_weight: return "max-weight";
    case Objective::counterexample: return "counterexample";
  }
  return "?";
}

inline Objective parse_objective(std::string_view s) {
  for (auto o : {Objective::max_m, Objective::max_weight, Objective::counterexample})
    if (s == to_string(o)) return o;
  throw PreconditionError("unknown objective '" + std::string(s) + "'");
}

struct SearchLimits {
  std::size_t max_depth = std::numeric_limits<std::size_t>::max();
  std::uint64_t node_budget = 20'000'000;
  /// Wall-clock cap. Results cut by time are not reproducible.
  std::optional<std::chrono::milliseconds> time_budget;
};

struct SearchProblem {
  Ground ground;
  std::size_t arity = 2;
  Condition condition = Condition::skew;
  Objective objective = Objective::max_m;
  /// Weight maximized by max-weight and counterexample objectives.
  std::optional<FunctionalKind> functional;
  /// Keep only candidates with |A^(l)| == uniform_sizes[l].
  std::optional<std::vector<std::size_t>> uniform_sizes;
  SearchLimits limits;
  bool prune = true;
  /// Exhaustive guard on n; defaults to 6 for sets and 4 for subspaces.
  std::optional<std::size_t> ground_guard;
};

struct SearchResult {
  BigRational best_value = 0;
  AnySystem witness = SetSystem(0, 1, {});
  std::uint64_t nodes = 0;
  /// The whole space was covered, so best_value is optimal.
  bool exhaustive = false;
  /// Bound of the maximized functional (weight objectives).
  std::optional<BigRational> bound;
  /// counterexample objective: best_value exceeds bound.
  bool exceeds_bound = false;
  /// A licensed weight bound was used for pruning.
  bool weight_pruned = false;
  bool field_caveat = false;
};

namespace detail {

/// Does a theorem bound `f` on every system satisfying `condition` here?
inline bool is_licensed(Condition condition, Domain domain, bool rational, const FunctionalKind& f,
                        std::size_t arity, bool has_context) {
  if (!rational) return false;
  const bool skew_or_stronger = condition == Condition::skew || condition == Condition::bollobas;
  switch (f.functional) {
    case Functional::bollobas_sum: return domain == Domain::set && condition == Condition::bollobas;
    case Functional::scott_wilmer_sum: return false;
    case Functional::yue_sum:
    case Functional::hegedus_frankl_sum: return arity == 2 && skew_or_stronger;
    case Functional::partitioned_yue_sum:
    case Functional::block_product_sum: return arity == 2 && skew_or_stronger && has_context && domain == Domain::set;
    case Functional::tuza_sum:
      return domain == Domain::set ? true : skew_or_stronger;
  }
  return false;
}

enum class CapMode { none, count, weight };

struct SearchGraph {
  std::size_t count = 0;
  std::vector<std::vector<std::uint8_t>> follows;
  bool symmetric = false;
  std::vector<BigRational> value;
  CapMode cap_mode = CapMode::none;
  std::vector<BigRational> cap_terms;
  BigRational cap;
  std::vector<std::size_t> by_cap_term;  ///< candidates sorted by cap term
};

class Dfs {
 public:
  Dfs(const SearchGraph& g, const SearchLimits& limits, bool prune)
      : g_(g), limits_(limits), prune_(prune), start_(std::chrono::steady_clock::now()) {}

  void run() {
    std::vector<std::size_t> all(g_.count);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::size_t> seq;
    expand(seq, all, BigRational(0), BigRational(0));
  }

  std::vector<std::size_t> best;
  BigRational best_value = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;

 private:
  bool out_of_budget() {
    if (nodes > limits_.node_budget) return true;
    if (limits_.time_budget && (nodes & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > *limits_.time_budget)
      return true;
    return false;
  }

  BigRational upper_bound(const std::vector<std::size_t>& allowed, const BigRational& value,
                          const BigRational& cap_used) const {
    BigRational simple = value;
    for (auto c : allowed)
      if (g_.value[c] > 0) simple += g_.value[c];
    if (g_.cap_mode == CapMode::weight) return std::min(simple, g_.cap);
    if (g_.cap_mode == CapMode::count) {
      // at most as many more tuples as the smallest cap terms can fit
      std::vector<std::uint8_t> in(g_.count, 0);
      for (auto c : allowed) in[c] = 1;
      BigRational room = g_.cap - cap_used;
      unsigned long extra = 0;
      for (auto c : g_.by_cap_term) {
        if (!in[c]) continue;
        if (g_.cap_terms[c] > room) break;
        room -= g_.cap_terms[c];
        ++extra;
      }
      return std::min(simple, BigRational(value + BigRational(extra)));
    }
    return simple;
  }

  void expand(std::vector<std::size_t>& seq, const std::vector<std::size_t>& allowed, const BigRational& value,
              const BigRational& cap_used) {
    if (aborted) return;
    ++nodes;
    if (out_of_budget()) {
      aborted = true;
      return;
    }
    if (value > best_value) {
      best_value = value;
      best = seq;
    }
    if (seq.size() >= limits_.max_depth || allowed.empty()) return;
    if (prune_ && upper_bound(allowed, value, cap_used) <= best_value) return;
    for (auto c : allowed) {
      std::vector<std::size_t> next;
      for (auto o : allowed) {
        if (g_.symmetric && o <= c) continue;
        if (g_.follows[c][o]) next.push_back(o);
      }
      seq.push_back(c);
      BigRational cap_next = g_.cap_mode == CapMode::none ? cap_used : BigRational(cap_used + g_.cap_terms[c]);
      expand(seq, next, BigRational(value + g_.value[c]), cap_next);
      seq.pop_back();
      if (aborted) return;
    }
  }

  const SearchGraph& g_;
  const SearchLimits& limits_;
  bool prune_;
  std::chrono::steady_clock::time_point start_;
};

template <class System>
Domain domain_of_system() {
  return is_set_system_v<System> ? Domain::set : Domain::subspace;
}

template <class System>
bool rational_of(const System& s) {
  if constexpr (is_set_system_v<System>) return true;
  else return s.field().is_rational();
}

/// Functional used to cap the number of tuples in max-m searches.
template <class System>
std::optional<FunctionalKind> count_cap_functional(const SearchProblem& problem, const System& prototype) {
  if (!rational_of(prototype)) return std::nullopt;
  if (problem.arity == 2 && problem.condition == Condition::bollobas && is_set_system_v<System>)
    return FunctionalKind(Functional::bollobas_sum);
  if (problem.arity == 2 && problem.condition != Condition::weak) return FunctionalKind(Functional::yue_sum);
  FunctionalKind tuza = FunctionalKind::tuza(ProbabilityVector::uniform(problem.arity));
  if (is_licensed(problem.condition, domain_of_system<System>(), true, tuza, problem.arity, false)) return tuza;
  return std::nullopt;
}

}  // namespace detail

/// Maximize over systems built from `candidates` (in the given order) under
/// the problem's condition. `prototype` supplies ground, arity, field and
/// context; the witness is prototype.with_tuples(best sequence). Among
/// optimal systems the first found in candidate order is returned.
template <class System, class Tuple>
SearchResult search_over(const SearchProblem& problem, const System& prototype, std::vector<Tuple> candidates) {
  if (problem.arity != prototype.arity()) throw ShapeError("problem arity does not match the prototype");
  if (problem.condition == Condition::bollobas && problem.arity != 2)
    throw ShapeError("the Bollobás condition is only defined for pairs");
  if (problem.uniform_sizes) {
    if (problem.uniform_sizes->size() != problem.arity) throw ShapeError("uniform sizes need one entry per coordinate");
    std::erase_if(candidates, [&](const Tuple& t) {
      for (std::size_t l = 0; l < t.size(); ++l)
        if (detail::measure(t[l]) != (*problem.uniform_sizes)[l]) return true;
      return false;
    });
  }
  const bool rational = detail::rational_of(prototype);
  const Domain domain = detail::domain_of_system<System>();
  const System pool = prototype.with_tuples(candidates);

  SearchResult result;
  result.field_caveat = !rational;
  detail::SearchGraph g;
  g.count = candidates.size();
  g.symmetric = problem.condition != Condition::skew;
  g.follows.assign(g.count, std::vector<std::uint8_t>(g.count, 0));
  for (std::size_t a = 0; a < g.count; ++a)
    for (std::size_t b = 0; b < g.count; ++b) {
      if (a == b) continue;
      bool ok = cross_clause_holds(problem.condition, candidates[a], candidates[b]);
      if (problem.condition == Condition::bollobas) ok = ok && cross_clause_holds(problem.condition, candidates[b], candidates[a]);
      g.follows[a][b] = ok;
    }

  if (problem.objective == Objective::max_m) {
    g.value.assign(g.count, BigRational(1));
    if (problem.prune)
      if (auto cap = detail::count_cap_functional(problem, prototype)) {
        g.cap_mode = detail::CapMode::count;
        g.cap_terms = omega_terms(pool, *cap);
        g.cap = inequality_bound(prototype, *cap);
        result.weight_pruned = true;
      }
  } else {
    if (!problem.functional) throw PreconditionError(to_string(problem.objective) + " needs a functional");
    const FunctionalKind& f = *problem.functional;
    if (f.functional == Functional::scott_wilmer_sum)
      throw PreconditionError("scott-wilmer is not additive over tuples and cannot be searched");
    g.value = omega_terms(pool, f);
    result.bound = inequality_bound(prototype, f);
    const bool licensed = detail::is_licensed(problem.condition, domain, rational, f, problem.arity, prototype.has_context());
    if (problem.objective == Objective::counterexample && licensed)
      throw PreconditionError("the " + to_string(f.functional) + " bound is a theorem for " + to_string(problem.condition) +
                              " systems here; there is no counterexample to look for");
    if (problem.prune && licensed) {
      g.cap_mode = detail::CapMode::weight;
      g.cap_terms = g.value;
      g.cap = *result.bound;
      result.weight_pruned = true;
    }
  }
  g.by_cap_term.resize(g.count);
  std::iota(g.by_cap_term.begin(), g.by_cap_term.end(), 0);
  if (g.cap_mode == detail::CapMode::count)
    std::stable_sort(g.by_cap_term.begin(), g.by_cap_term.end(),
                     [&](std::size_t a, std::size_t b) { return g.cap_terms[a] < g.cap_terms[b]; });

  detail::Dfs dfs(g, problem.limits, problem.prune);
  dfs.run();

  std::vector<Tuple> witness;
  for (auto c : dfs.best) witness.push_back(candidates[c]);
  result.witness = prototype.with_tuples(std::move(witness));
  result.best_value = dfs.best_value;
  result.nodes = dfs.nodes;
  result.exhaustive = !dfs.aborted;
  if (result.bound) result.exceeds_bound = result.best_value > *result.bound;
  return result;
}

/// Exhaustive search over set systems on [n] or subspace systems of
/// GF(p)^n. Over the rationals the candidate space is infinite; use the
/// randomized generators instead.
inline SearchResult search_max(const SearchProblem& problem) {
  if (!problem.ground.field) {
    const std::size_t guard = problem.ground_guard.value_or(kDefaultSetGuard);
    SetSystem prototype(problem.ground.n, problem.arity, {});
    return search_over(problem, prototype, set_candidates(problem.ground.n, problem.arity, guard));
  }
  const FieldTag& f = *problem.ground.field;
  if (f.is_rational()) throw PreconditionError("exhaustive search over the rationals is not finite; use GF(p)");
  const std::size_t guard = problem.ground_guard.value_or(kDefaultSubspaceGuard);
  PrimeSubspaceSystem prototype(problem.ground.n, f, problem.arity, {});
  return search_over(problem, prototype, subspace_candidates(problem.ground.n, f, problem.arity, guard));
}

// ---------------------------------------------------------------------------
// Random systems

/// Seeded generator whose output is identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t bound) { return bound ? engine_() % bound : 0; }
  bool coin() { return engine_() & 1; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct RandomSystemSpec {
  std::size_t n = 0;
  std::size_t arity = 2;
  Condition condition = Condition::skew;
  std::size_t m = 0;  ///< target size; the result may be smaller
  std::uint64_t seed = 0;
  /// Number of partition / decomposition blocks; 0 for no context.
  std::size_t blocks = 0;
  /// Proposals per requested tuple before giving up.
  std::size_t attempts_per_tuple = 64;
};

namespace detail {

/// Random split of 1..n into `blocks` nonempty blocks (blocks <= n).
inline std::vector<std::vector<std::size_t>> random_blocks(std::size_t n, std::size_t blocks, SeededRng& rng) {
  if (blocks == 0 || blocks > n) throw PreconditionError("block count must be between 1 and n");
  std::vector<std::size_t> elems(n);
  std::iota(elems.begin(), elems.end(), 1);
  rng.shuffle(elems);
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> positions(n - 1);
  std::iota(positions.begin(), positions.end(), 1);
  rng.shuffle(positions);
  cuts.assign(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(blocks - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);
  std::vector<std::vector<std::size_t>> out;
  std::size_t start = 0;
  for (auto c : cuts) {
    std::vector<std::size_t> b(elems.begin() + static_cast<std::ptrdiff_t>(start), elems.begin() + static_cast<std::ptrdiff_t>(c));
    std::sort(b.begin(), b.end());
    out.push_back(std::move(b));
    start = c;
  }
  return out;
}

template <class System, class Propose>
System greedy_extend(System system, Condition condition, std::size_t target, std::size_t attempts, Propose&& propose) {
  auto tuples = system.tuples();
  for (std::size_t tries = 0; tuples.size() < target && tries < attempts; ++tries) {
    auto t = propose();
    if (!tuple_is_independent(t)) continue;
    bool ok = true;
    for (const auto& earlier : tuples) {
      ok = cross_clause_holds(condition, earlier, t) &&
           (condition != Condition::bollobas || cross_clause_holds(condition, t, earlier));
      if (!ok) break;
    }
    if (ok) tuples.push_back(std::move(t));
  }
  return system.with_tuples(std::move(tuples));
}

}  // namespace detail

/// Greedy random set system: propose tuples with a uniformly random label
/// 0..d per element, keep those compatible with every earlier tuple.
inline SetSystem random_set_system(const RandomSystemSpec& spec) {
  SeededRng rng(spec.seed);
  std::optional<std::vector<Subset>> partition;
  if (spec.blocks) {
    partition.emplace();
    for (const auto& b : detail::random_blocks(spec.n, spec.blocks, rng)) partition->push_back(Subset::from_elements(b));
  }
  SetSystem empty(spec.n, spec.arity, {}, partition);
  return detail::greedy_extend(empty, spec.condition, spec.m, spec.attempts_per_tuple * (spec.m + 1), [&] {
    SetTuple t(spec.arity);
    for (std::size_t e = 1; e <= spec.n; ++e) {
      auto label = rng.below(spec.arity + 1);
      if (label) t[label - 1] = t[label - 1].with(e);
    }
    return t;
  });
}

/// Random invertible integer matrix with determinant ±1.
inline Matrix<BigRational> random_unimodular(std::size_t n, SeededRng& rng) {
  Matrix<BigRational> m(n, zero_vector<BigRational>(n, FieldTag::rationals()));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (std::size_t step = 0; step < 3 * n; ++step) {
    if (n < 2) break;
    std::size_t i = rng.below(n), j = rng.below(n);
    if (i == j) continue;
    long c = static_cast<long>(rng.below(5)) - 2;
    for (std::size_t k = 0; k < n; ++k) m[i][k] += c * m[j][k];
  }
  rng.shuffle(m);
  return m;
}

/// Random decomposition-compatible subspace system over Q^n: the embedding
/// of a random set system of about m/2 tuples, extended greedily with
/// tuples whose coordinates are spans of block vectors e_p, e_p + e_q and
/// e_p - e_q, then moved by a random unimodular change of basis when
/// `twist` is set. With blocks == 0 the result has no decomposition.
inline RationalSubspaceSystem random_subspace_system(const RandomSystemSpec& spec, bool twist = true) {
  using S = BigRational;
  const FieldTag q = FieldTag::rationals();
  SeededRng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  RandomSystemSpec half = spec;
  half.m = spec.m / 2;
  SetSystem seed_sets = random_set_system(half);
  if (!spec.blocks) {
    seed_sets = seed_sets.with_partition(std::vector<Subset>{Subset::ground(spec.n)});
  }
  RationalSubspaceSystem system = embed(seed_sets);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto b : *seed_sets.partition()) blocks.push_back(b.elements());

  std::vector<Matrix<S>> pools;
  for (const auto& b : blocks) {
    Matrix<S> pool;
    for (auto p : b) pool.push_back(unit_vector<S>(spec.n, q, p));
    for (std::size_t x = 0; x < b.size(); ++x)
      for (std::size_t y = x + 1; y < b.size(); ++y) {
        auto plus = unit_vector<S>(spec.n, q, b[x]);
        auto minus = plus;
        plus[b[y] - 1] = 1;
        minus[b[y] - 1] = -1;
        pool.push_back(std::move(plus));
        pool.push_back(std::move(minus));
      }
    pools.push_back(std::move(pool));
  }

  system = detail::greedy_extend(system, spec.condition, spec.m, spec.attempts_per_tuple * (spec.m + 1), [&] {
    std::vector<Matrix<S>> coords(spec.arity);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (std::size_t l = 0; l < spec.arity; ++l) {
        std::size_t count = rng.below(blocks[k].size() + 1);
        for (std::size_t c = 0; c < count; ++c) coords[l].push_back(pools[k][rng.below(pools[k].size())]);
      }
    }
    SubspaceTuple<S> t;
    for (auto& rows : coords) t.push_back(Subspace<S>::span(spec.n, q, std::move(rows)));
    return t;
  });
  // Tuples drawn per block are compatible as long as their coordinates
  // stay independent inside each block; enforce that explicitly.
  {
    auto tuples = system.tuples();
    std::erase_if(tuples, [&](const SubspaceTuple<S>& t) {
      for (const auto& u : t) {
        std::size_t total = 0;
        for (const auto& b : system.decomposition()->blocks()) total += component(u, b).dim();
        if (total != u.dim()) return true;
      }
      return false;
    });
    system = system.with_tuples(std::move(tuples));
  }
  if (!spec.blocks) system = system.with_decomposition(std::nullopt);
  if (twist) system = transform(system, random_unimodular(spec.n, rng));
  return system;
}

/// Seeded random valid system over `ground` (sets, or rational subspaces).
inline AnySystem random_valid_system(const Ground& ground, std::size_t arity, Condition condition, std::size_t m,
                                     std::uint64_t seed, std::size_t blocks = 0) {
  RandomSystemSpec spec{ground.n, arity, condition, m, seed, blocks, 64};
  if (!ground.field) return random_set_system(spec);
  if (!ground.field->is_rational()) throw PreconditionError("random systems are generated over the rationals");
  return random_subspace_system(spec);
}

// ---------------------------------------------------------------------------
// Weak subspace explorer

/// Largest tuza weight found over weak subspace d-tuple systems. Over GF(p)
/// the search is exhaustive (within budget); over the rationals it samples
/// `trials` random weak systems. A value above 1 is a finding over that
/// field only; it is not a statement about real spaces.
inline SearchResult explore_weak_subspace_conjecture(std::size_t n, std::size_t d, const ProbabilityVector& p,
                                                     const FieldTag& field, const SearchLimits& limits = {},
                                                     std::uint64_t seed = 0, std::size_t trials = 200) {
  if (p.size() != d) throw ShapeError("probability vector arity does not match d");
  FunctionalKind tuza = FunctionalKind::tuza(p);
  if (!field.is_rational()) {
    SearchProblem problem;
    problem.ground = Ground{n, field};
    problem.arity = d;
    problem.condition = Condition::weak;
    problem.objective = Objective::counterexample;
    problem.functional = tuza;
    problem.limits = limits;
    return search_max(problem);
  }
  SearchResult result;
  result.bound = BigRational(1);
  result.witness = RationalSubspaceSystem(n, field, d, {});
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSystemSpec spec{n, d, Condition::weak, static_cast<std::size_t>(2 * (n + 1) * d), seed + t, 0, 64};
    auto system = random_subspace_system(spec);
    ++result.nodes;
    BigRational value = omega(system, tuza);
    if (value > result.best_value) {
      result.best_value = value;
      result.witness = system;
    }
  }
  result.exhaustive = false;
  result.exceeds_bound = result.best_value > 1;
  return result;
}

}  // namespace bollobas
