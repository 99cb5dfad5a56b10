#pragma once

// Ordered systems of d-tuples of subsets of [n] or of subspaces, with an
// optional partition / direct-sum decomposition. Tuple order is part of the
// value: skew conditions depend on it.

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bollobas/errors.hpp"
#include "bollobas/exact_arith.hpp"
#include "bollobas/subspace.hpp"

namespace bollobas {

inline constexpr std::size_t kMaxGroundSize = 64;

/// Subset of [n] = {1..n}, n <= 64; element p is bit p-1.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset of(std::initializer_list<std::size_t> elements) {
    Subset s;
    for (auto e : elements) s = s.with(e);
    return s;
  }
  template <class Range>
  static Subset from_elements(const Range& elements) {
    Subset s;
    for (auto e : elements) s = s.with(static_cast<std::size_t>(e));
    return s;
  }
  /// [n]
  static Subset ground(std::size_t n) {
    if (n > kMaxGroundSize) throw ShapeError("ground sets above 64 elements are not supported");
    return Subset(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const noexcept { return bits_; }
  constexpr std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  bool contains(std::size_t element) const noexcept {
    return element >= 1 && element <= kMaxGroundSize && (bits_ >> (element - 1)) & 1;
  }
  Subset with(std::size_t element) const {
    if (element < 1 || element > kMaxGroundSize) throw ShapeError("ground element out of range");
    return Subset(bits_ | (std::uint64_t{1} << (element - 1)));
  }
  constexpr bool intersects(Subset o) const noexcept { return (bits_ & o.bits_) != 0; }
  constexpr bool is_subset_of(Subset o) const noexcept { return (bits_ & ~o.bits_) == 0; }
  /// 1-based, increasing.
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)) + 1);
    return out;
  }
  /// Largest element, 0 for the empty set.
  std::size_t max_element() const noexcept { return 64 - static_cast<std::size_t>(std::countl_zero(bits_)); }

  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr bool operator==(Subset, Subset) = default;

 private:
  std::uint64_t bits_ = 0;
};

using SetTuple = std::vector<Subset>;

/// Per-tuple size/dimension profile: entry [k][l] is |A^(l) ∩ X_k| (or the
/// dimension analogue). Without a context there is a single block.
struct TypeVector {
  std::vector<std::vector<std::size_t>> blocks;

  /// Sizes of each coordinate summed over blocks.
  std::vector<std::size_t> totals() const {
    std::vector<std::size_t> out(blocks.empty() ? 0 : blocks.front().size(), 0);
    for (const auto& row : blocks)
      for (std::size_t l = 0; l < row.size(); ++l) out[l] += row[l];
    return out;
  }
  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  friend auto operator<=>(const TypeVector&, const TypeVector&) = default;
};

class SetSystem {
 public:
  SetSystem(std::size_t ground_size, std::size_t arity, std::vector<SetTuple> tuples,
            std::optional<std::vector<Subset>> partition = std::nullopt)
      : n_(ground_size), d_(arity), tuples_(std::move(tuples)), partition_(std::move(partition)) {
    if (n_ > kMaxGroundSize) throw ShapeError("ground sets above 64 elements are not supported");
    if (d_ == 0) throw ShapeError("arity must be at least 1");
    const Subset ground = Subset::ground(n_);
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
      if (tuples_[i].size() != d_)
        throw ShapeError("tuple " + std::to_string(i + 1) + " has " + std::to_string(tuples_[i].size()) +
                         " components, expected " + std::to_string(d_));
      for (auto s : tuples_[i])
        if (!s.is_subset_of(ground))
          throw ShapeError("tuple " + std::to_string(i + 1) + " has an element outside [" + std::to_string(n_) + "]");
    }
    if (partition_) {
      Subset seen;
      for (auto block : *partition_) {
        if (!block.is_subset_of(ground)) throw ShapeError("partition block outside the ground set");
        if (block.intersects(seen)) throw PreconditionError("partition blocks overlap");
        seen = seen | block;
      }
      if (!(seen == ground)) throw PreconditionError("partition blocks do not cover the ground set");
    }
  }

  std::size_t ground_size() const noexcept { return n_; }
  std::size_t arity() const noexcept { return d_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  const std::vector<SetTuple>& tuples() const noexcept { return tuples_; }
  const SetTuple& operator[](std::size_t i) const { return tuples_[i]; }
  const std::optional<std::vector<Subset>>& partition() const noexcept { return partition_; }
  bool has_context() const noexcept { return partition_.has_value(); }

  /// n_k per block ([n] when there is no partition).
  std::vector<std::size_t> block_sizes() const {
    if (!partition_) return {n_};
    std::vector<std::size_t> out;
    for (auto b : *partition_) out.push_back(b.size());
    return out;
  }

  /// Same ground, arity and context with different tuples.
  SetSystem with_tuples(std::vector<SetTuple> tuples) const { return {n_, d_, std::move(tuples), partition_}; }
  SetSystem with_partition(std::optional<std::vector<Subset>> partition) const {
    return {n_, d_, tuples_, std::move(partition)};
  }

  friend bool operator==(const SetSystem&, const SetSystem&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<SetTuple> tuples_;
  std::optional<std::vector<Subset>> partition_;
};

template <ExactScalar S>
using SubspaceTuple = std::vector<Subspace<S>>;

template <ExactScalar S>
class SubspaceSystem {
 public:
  using Scalar = S;

  SubspaceSystem(std::size_t ambient_dim, const FieldTag& field, std::size_t arity,
                 std::vector<SubspaceTuple<S>> tuples,
                 std::optional<Decomposition<S>> decomposition = std::nullopt)
      : n_(ambient_dim), field_(field), d_(arity), tuples_(std::move(tuples)),
        decomposition_(std::move(decomposition)) {
    if (d_ == 0) throw ShapeError("arity must be at least 1");
    if (!ScalarTraits<S>::accepts(field_)) throw ShapeError("scalar type does not match field " + to_string(field_));
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
      if (tuples_[i].size() != d_)
        throw ShapeError("tuple " + std::to_string(i + 1) + " has " + std::to_string(tuples_[i].size()) +
                         " components, expected " + std::to_string(d_));
      for (const auto& u : tuples_[i])
        if (u.ambient_dim() != n_ || !(u.field() == field_))
          throw ShapeError("tuple " + std::to_string(i + 1) + " has a subspace outside the ambient space");
    }
    if (decomposition_ && (decomposition_->ambient_dim() != n_ || !(decomposition_->field() == field_)))
      throw ShapeError("decomposition lives in a different ambient space");
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  const FieldTag& field() const noexcept { return field_; }
  std::size_t arity() const noexcept { return d_; }
  std::size_t size() const noexcept { return tuples_.size(); }
  bool empty() const noexcept { return tuples_.empty(); }
  const std::vector<SubspaceTuple<S>>& tuples() const noexcept { return tuples_; }
  const SubspaceTuple<S>& operator[](std::size_t i) const { return tuples_[i]; }
  const std::optional<Decomposition<S>>& decomposition() const noexcept { return decomposition_; }
  bool has_context() const noexcept { return decomposition_.has_value(); }

  std::vector<std::size_t> block_sizes() const {
    if (!decomposition_) return {n_};
    return decomposition_->block_dims();
  }

  SubspaceSystem with_tuples(std::vector<SubspaceTuple<S>> tuples) const {
    return {n_, field_, d_, std::move(tuples), decomposition_};
  }
  SubspaceSystem with_decomposition(std::optional<Decomposition<S>> decomposition) const {
    return {n_, field_, d_, tuples_, std::move(decomposition)};
  }

  friend bool operator==(const SubspaceSystem&, const SubspaceSystem&) = default;

 private:
  std::size_t n_;
  FieldTag field_;
  std::size_t d_;
  std::vector<SubspaceTuple<S>> tuples_;
  std::optional<Decomposition<S>> decomposition_;
};

using RationalSubspaceSystem = SubspaceSystem<BigRational>;
using PrimeSubspaceSystem = SubspaceSystem<PrimeFieldScalar>;

/// Any document-level system.
using AnySystem = std::variant<SetSystem, RationalSubspaceSystem, PrimeSubspaceSystem>;

template <class T>
inline constexpr bool is_set_system_v = std::is_same_v<std::remove_cvref_t<T>, SetSystem>;

inline TypeVector profile(const SetSystem& system, std::size_t i) {
  if (i >= system.size()) throw PreconditionError("tuple index out of range");
  TypeVector t;
  const auto& tuple = system[i];
  if (!system.partition()) {
    auto& row = t.blocks.emplace_back();
    for (auto s : tuple) row.push_back(s.size());
    return t;
  }
  for (auto block : *system.partition()) {
    auto& row = t.blocks.emplace_back();
    for (auto s : tuple) row.push_back((s & block).size());
  }
  return t;
}

template <ExactScalar S>
TypeVector profile(const SubspaceSystem<S>& system, std::size_t i) {
  if (i >= system.size()) throw PreconditionError("tuple index out of range");
  TypeVector t;
  const auto& tuple = system[i];
  if (!system.decomposition()) {
    auto& row = t.blocks.emplace_back();
    for (const auto& u : tuple) row.push_back(u.dim());
    return t;
  }
  for (const auto& block : system.decomposition()->blocks()) {
    auto& row = t.blocks.emplace_back();
    for (const auto& u : tuple) row.push_back(component(u, block).dim());
  }
  return t;
}

template <class System>
std::vector<TypeVector> profiles(const System& system) {
  std::vector<TypeVector> out;
  out.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) out.push_back(profile(system, i));
  return out;
}

/// Coordinate embedding over Q^n: S -> span{e_p : p in S}, X_k -> V_k.
inline RationalSubspaceSystem embed(const SetSystem& system) {
  const std::size_t n = system.ground_size();
  const FieldTag q = FieldTag::rationals();
  auto lift = [&](Subset s) {
    auto elems = s.elements();
    return Subspace<BigRational>::coordinate(n, q, elems);
  };
  std::vector<SubspaceTuple<BigRational>> tuples;
  tuples.reserve(system.size());
  for (const auto& t : system.tuples()) {
    auto& out = tuples.emplace_back();
    for (auto s : t) out.push_back(lift(s));
  }
  std::optional<Decomposition<BigRational>> dec;
  if (system.partition()) {
    std::vector<Subspace<BigRational>> blocks;
    for (auto b : *system.partition()) blocks.push_back(lift(b));
    dec.emplace(n, q, std::move(blocks));
  }
  return {n, q, system.arity(), std::move(tuples), std::move(dec)};
}

/// Every subspace equals the direct sum of its components A ∩ V_k.
template <ExactScalar S>
bool is_decomposition_compatible(const SubspaceSystem<S>& system) {
  if (!system.decomposition()) throw PreconditionError("system has no decomposition");
  for (const auto& tuple : system.tuples())
    for (const auto& u : tuple) {
      std::size_t total = 0;
      for (const auto& block : system.decomposition()->blocks()) total += component(u, block).dim();
      if (total != u.dim()) return false;
    }
  return true;
}

/// Image of the whole system (tuples and decomposition) under an
/// invertible change of basis; every dimension and condition is preserved.
template <ExactScalar S>
SubspaceSystem<S> transform(const SubspaceSystem<S>& system, const Matrix<S>& m) {
  Matrix<S> copy = m;
  if (m.size() != system.ambient_dim() || row_reduce(copy, system.ambient_dim()).size() != system.ambient_dim())
    throw PreconditionError("change of basis must be invertible");
  std::vector<SubspaceTuple<S>> tuples;
  for (const auto& t : system.tuples()) {
    auto& out = tuples.emplace_back();
    for (const auto& u : t) out.push_back(transform(u, m));
  }
  std::optional<Decomposition<S>> dec;
  if (system.decomposition()) {
    std::vector<Subspace<S>> blocks;
    for (const auto& b : system.decomposition()->blocks()) blocks.push_back(transform(b, m));
    dec.emplace(system.ambient_dim(), system.field(), std::move(blocks));
  }
  return {system.ambient_dim(), system.field(), system.arity(), std::move(tuples), std::move(dec)};
}

}  // namespace bollobas
