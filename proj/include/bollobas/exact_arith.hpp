#pragma once

// Exact numeric substrate: big integers and rationals (GMP), prime-field
// scalars, combinatorial coefficients and rational probability vectors.

#include <gmpxx.h>

#include <charconv>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bollobas/errors.hpp"

namespace bollobas {

using BigInt = mpz_class;
/// GMP keeps results of arithmetic in lowest terms with a positive
/// denominator; values built from raw parts go through make_rational.
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline BigRational make_rational(long num, long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

/// C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// (sum parts)! / prod(parts!)
inline BigInt multinomial(std::span<const unsigned long> parts) {
  unsigned long total = 0;
  BigInt denom = 1;
  for (unsigned long p : parts) {
    total += p;
    denom *= factorial(p);
  }
  BigInt r = factorial(total);
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), denom.get_mpz_t());
  return r;
}

inline BigInt multinomial(std::initializer_list<unsigned long> parts) {
  return multinomial(std::span<const unsigned long>(parts.begin(), parts.size()));
}

inline BigInt power(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// base^exp, with base^0 == 1 for every base including 0.
inline BigRational rational_power(const BigRational& base, unsigned long exp) {
  BigRational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  r.canonicalize();
  return r;
}

/// "num/den", or "num" when the denominator is 1.
inline std::string to_string(const BigRational& q) { return q.get_str(); }
inline std::string to_string(const BigInt& z) { return z.get_str(); }

namespace detail {

inline bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Accepts "a" or "a/b" with decimal integers, b != 0.
inline BigRational parse_rational(std::string_view text) {
  std::string_view s = detail::trim(text);
  BigInt num, den = 1;
  auto slash = s.find('/');
  bool ok = slash == std::string_view::npos
                ? detail::parse_integer(s, num)
                : detail::parse_integer(s.substr(0, slash), num) &&
                      detail::parse_integer(s.substr(slash + 1), den);
  if (!ok) throw PreconditionError("not a rational: '" + std::string(text) + "'");
  return make_rational(num, den);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

/// Element of GF(p). The modulus travels with the value so that mixed
/// arithmetic can be rejected.
class PrimeFieldScalar {
 public:
  PrimeFieldScalar() = default;
  PrimeFieldScalar(std::int64_t value, std::uint64_t modulus) : modulus_(modulus) {
    if (modulus_ == 0) throw PreconditionError("prime field modulus must be nonzero");
    std::int64_t m = static_cast<std::int64_t>(modulus_);
    std::int64_t r = value % m;
    residue_ = static_cast<std::uint64_t>(r < 0 ? r + m : r);
  }

  std::uint64_t residue() const noexcept { return residue_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return residue_ == 0; }

  PrimeFieldScalar inverse() const {
    if (residue_ == 0) throw PreconditionError("inverse of zero in GF(p)");
    // Fermat: a^(p-2)
    return pow(modulus_ - 2);
  }

  PrimeFieldScalar pow(std::uint64_t e) const {
    PrimeFieldScalar result = from_residue(1 % modulus_, modulus_);
    PrimeFieldScalar base = *this;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  PrimeFieldScalar& operator+=(const PrimeFieldScalar& o) {
    check(o);
    residue_ = (residue_ + o.residue_) % modulus_;
    return *this;
  }
  PrimeFieldScalar& operator-=(const PrimeFieldScalar& o) {
    check(o);
    residue_ = (residue_ + modulus_ - o.residue_) % modulus_;
    return *this;
  }
  PrimeFieldScalar& operator*=(const PrimeFieldScalar& o) {
    check(o);
    residue_ = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(residue_) * o.residue_ % modulus_);
    return *this;
  }
  PrimeFieldScalar& operator/=(const PrimeFieldScalar& o) { return *this *= o.inverse(); }

  friend PrimeFieldScalar operator+(PrimeFieldScalar a, const PrimeFieldScalar& b) { return a += b; }
  friend PrimeFieldScalar operator-(PrimeFieldScalar a, const PrimeFieldScalar& b) { return a -= b; }
  friend PrimeFieldScalar operator*(PrimeFieldScalar a, const PrimeFieldScalar& b) { return a *= b; }
  friend PrimeFieldScalar operator/(PrimeFieldScalar a, const PrimeFieldScalar& b) { return a /= b; }
  friend PrimeFieldScalar operator-(const PrimeFieldScalar& a) {
    return from_residue((a.modulus_ - a.residue_) % a.modulus_, a.modulus_);
  }
  friend bool operator==(const PrimeFieldScalar&, const PrimeFieldScalar&) = default;

  static PrimeFieldScalar from_residue(std::uint64_t r, std::uint64_t p) {
    PrimeFieldScalar s;
    s.residue_ = r;
    s.modulus_ = p;
    return s;
  }

 private:
  void check(const PrimeFieldScalar& o) const {
    if (modulus_ != o.modulus_) throw ShapeError("GF(p) scalars with different moduli");
  }

  std::uint64_t residue_ = 0;
  std::uint64_t modulus_ = 0;
};

/// "r mod p"
inline std::string to_string(const PrimeFieldScalar& s) {
  return std::to_string(s.residue()) + " mod " + std::to_string(s.modulus());
}

/// Field of a subspace computation: the rationals (prime == 0) or GF(prime).
struct FieldTag {
  std::uint64_t prime = 0;

  static FieldTag rationals() { return {}; }
  static FieldTag gf(std::uint64_t p) {
    if (!is_prime(p)) throw PreconditionError("GF(p) needs a prime, got " + std::to_string(p));
    return FieldTag{p};
  }
  bool is_rational() const noexcept { return prime == 0; }
  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

inline std::string to_string(const FieldTag& f) {
  return f.is_rational() ? "rationals" : "GF(" + std::to_string(f.prime) + ")";
}

inline FieldTag parse_field(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s == "rationals" || s == "Q") return FieldTag::rationals();
  if (s.size() > 4 && s.substr(0, 3) == "GF(" && s.back() == ')') {
    std::uint64_t p = 0;
    auto digits = s.substr(3, s.size() - 4);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return FieldTag::gf(p);
  }
  throw PreconditionError("unknown field '" + std::string(text) + "' (expected rationals or GF(p))");
}

/// Per-scalar-type glue used by the templated linear algebra.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<BigRational> {
  static BigRational from_int(const FieldTag&, long v) { return BigRational(v); }
  static bool is_zero(const BigRational& s) { return s == 0; }
  static BigRational inverse(const BigRational& s) {
    if (s == 0) throw PreconditionError("inverse of zero");
    return 1 / s;
  }
  static std::string format(const BigRational& s) { return to_string(s); }
  static BigRational parse(const FieldTag&, std::string_view text) { return parse_rational(text); }
  static bool accepts(const FieldTag& f) { return f.is_rational(); }
};

template <>
struct ScalarTraits<PrimeFieldScalar> {
  static PrimeFieldScalar from_int(const FieldTag& f, long v) { return {v, f.prime}; }
  static bool is_zero(const PrimeFieldScalar& s) { return s.is_zero(); }
  static PrimeFieldScalar inverse(const PrimeFieldScalar& s) { return s.inverse(); }
  static std::string format(const PrimeFieldScalar& s) { return to_string(s); }
  /// Accepts "r" or "r mod p" (p must match the field).
  static PrimeFieldScalar parse(const FieldTag& f, std::string_view text) {
    std::string_view s = detail::trim(text);
    auto mod = s.find(" mod ");
    BigInt r;
    if (mod != std::string_view::npos) {
      BigInt p;
      if (!detail::parse_integer(detail::trim(s.substr(mod + 5)), p) || p != f.prime)
        throw PreconditionError("scalar '" + std::string(text) + "' is not over " + to_string(f));
      s = s.substr(0, mod);
    }
    if (!detail::parse_integer(detail::trim(s), r))
      throw PreconditionError("not a GF(p) scalar: '" + std::string(text) + "'");
    BigInt m = r % BigInt(static_cast<unsigned long>(f.prime));
    if (m < 0) m += static_cast<unsigned long>(f.prime);
    return PrimeFieldScalar::from_residue(m.get_ui(), f.prime);
  }
  static bool accepts(const FieldTag& f) { return !f.is_rational(); }
};

template <class S>
concept ExactScalar = requires(const S& a, const S& b, const FieldTag& f) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { ScalarTraits<S>::from_int(f, 0L) } -> std::same_as<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::same_as<bool>;
  { ScalarTraits<S>::inverse(a) } -> std::same_as<S>;
};

/// Strictly positive rationals summing to exactly 1.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<BigRational> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw PreconditionError("probability vector needs at least one entry");
    BigRational total = 0;
    for (const auto& p : entries_) {
      if (p <= 0) throw PreconditionError("probability entries must be positive, got " + to_string(p));
      total += p;
    }
    if (total != 1)
      throw PreconditionError("probability entries must sum to exactly 1, got " + to_string(total));
  }

  /// (1/d, ..., 1/d)
  static ProbabilityVector uniform(std::size_t d) {
    if (d == 0) throw PreconditionError("probability vector needs at least one entry");
    return ProbabilityVector(std::vector<BigRational>(d, make_rational(1, static_cast<long>(d))));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const BigRational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<BigRational>& entries() const noexcept { return entries_; }
  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<BigRational> entries_;
};

/// Comma-separated rationals, e.g. "1/2,1/4,1/4".
inline ProbabilityVector parse_probability_vector(std::string_view text) {
  std::vector<BigRational> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    entries.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ProbabilityVector(std::move(entries));
}

inline std::string to_string(const ProbabilityVector& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += to_string(p[i]);
  }
  return out;
}

}  // namespace bollobas
