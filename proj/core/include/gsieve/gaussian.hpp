#pragma once

// Exact arithmetic in Z[i].

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gsieve {

/// Raised when an input violates a mathematical precondition (zero modulus,
/// non-dividing shift, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a residue has no inverse modulo the requested modulus.
class NotInvertibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Raised when a 64-bit intermediate would wrap.  The message names the
/// operation.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Evaluation at a pole (gamma at a non-positive integer, zeta at s = 1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Argument outside the regime an evaluator supports (Bessel series beyond z_max).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  constexpr GaussianInt() = default;
  constexpr GaussianInt(std::int64_t r) : re(r) {}  // NOLINT: integers embed
  constexpr GaussianInt(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  bool is_unit() const { return norm() == 1; }
  constexpr GaussianInt conj() const { return {re, -im}; }

  /// re^2 + im^2; throws OverflowError if it does not fit in int64.
  std::int64_t norm() const;

  friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;

  GaussianInt operator-() const;
  friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b);
  friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b);
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b);
  GaussianInt& operator+=(const GaussianInt& b) { return *this = *this + b; }
  GaussianInt& operator-=(const GaussianInt& b) { return *this = *this - b; }
  GaussianInt& operator*=(const GaussianInt& b) { return *this = *this * b; }
};

inline constexpr GaussianInt kI{0, 1};
inline constexpr GaussianInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::ostream& operator<<(std::ostream& os, const GaussianInt& z);
std::string to_string(const GaussianInt& z);

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i", "1+i" (no spaces).
GaussianInt parse_gaussian(std::string_view text);

/// Exact quotient; throws DomainError if b does not divide a.
GaussianInt exact_div(const GaussianInt& a, const GaussianInt& b);
/// Euclidean division with rounding to the nearest lattice point.
std::pair<GaussianInt, GaussianInt> div_round(const GaussianInt& a, const GaussianInt& b);
bool divides(const GaussianInt& d, const GaussianInt& a);

/// The unique associate with re > 0 and im >= 0.
GaussianInt canonical_associate(const GaussianInt& z);

/// Canonical gcd; gcd(0, 0) is a DomainError.
GaussianInt gcd(const GaussianInt& a, const GaussianInt& b);
GaussianInt gcd(const GaussianInt& a, const GaussianInt& b, const GaussianInt& c);
bool coprime(const GaussianInt& a, const GaussianInt& b);

GaussianInt pow(GaussianInt base, unsigned exponent);

/// A nonzero ideal, stored by its canonical generator.
class GIdeal {
 public:
  GIdeal() : gen_(1) {}
  explicit GIdeal(const GaussianInt& z);

  const GaussianInt& gen() const { return gen_; }
  std::int64_t norm() const { return gen_.norm(); }
  bool is_unit() const { return gen_ == GaussianInt{1}; }

  friend GIdeal operator*(const GIdeal& a, const GIdeal& b) { return GIdeal(a.gen_ * b.gen_); }
  friend bool operator==(const GIdeal&, const GIdeal&) = default;

 private:
  GaussianInt gen_;
};

/// Total order by (norm, im, re) of the canonical generator.
struct IdealOrder {
  bool operator()(const GaussianInt& a, const GaussianInt& b) const;
  bool operator()(const GIdeal& a, const GIdeal& b) const { return (*this)(a.gen(), b.gen()); }
};

std::ostream& operator<<(std::ostream& os, const GIdeal& d);

struct PrimePower {
  GIdeal prime;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  GaussianInt unit{1};
  std::vector<PrimePower> factors;

  GaussianInt recombine() const;
};

/// Factorization into Gaussian primes via trial division of the norm.
Factorization factor(const GaussianInt& z);
inline Factorization factor(const GIdeal& d) { return factor(d.gen()); }

struct MultiplicativeValues {
  std::int64_t tau = 1;
  std::int64_t phi = 1;
  int mu = 1;
};

/// Exponent of the prime ideal p in n.
int valuation(const GIdeal& n, const GIdeal& p);

MultiplicativeValues multiplicative_functions(const GIdeal& n);
std::int64_t tau(const GIdeal& n);
std::int64_t euler_phi(const GIdeal& n);
int moebius(const GIdeal& n);
bool is_squarefree(const GIdeal& n);

/// d = d1 * d2^2 with d1 square-free.
std::pair<GIdeal, GIdeal> squarefree_split(const GIdeal& d);

/// All divisor ideals, sorted by IdealOrder.
std::vector<GIdeal> divisors(const GIdeal& n);

/// All ideals of norm <= bound, sorted by IdealOrder.
std::vector<GIdeal> ideals_up_to_norm(double bound);
/// Ideals with lo < norm <= hi.
std::vector<GIdeal> ideals_in_norm_window(double lo, double hi);

/// Reduction modulo (c) into a fixed fundamental domain.  With g = gcd of
/// the coordinates of c, representatives are a + b i with 0 <= a < N(c)/g
/// and 0 <= b < g.
class ResidueDomain {
 public:
  explicit ResidueDomain(const GaussianInt& c);

  const GaussianInt& modulus() const { return c_; }
  std::int64_t size() const { return real_extent_ * imag_extent_; }
  std::int64_t real_extent() const { return real_extent_; }
  std::int64_t imag_extent() const { return imag_extent_; }

  GaussianInt reduce(const GaussianInt& z) const;
  /// Linear index in [0, size()) of an already reduced representative.
  std::int64_t index(const GaussianInt& reduced) const { return reduced.re * imag_extent_ + reduced.im; }
  GaussianInt element(std::int64_t index) const {
    return {index / imag_extent_, index % imag_extent_};
  }
  GaussianInt mul(const GaussianInt& a, const GaussianInt& b) const;

 private:
  GaussianInt c_;  // canonical generator
  std::int64_t real_extent_ = 1;
  std::int64_t imag_extent_ = 1;
  std::int64_t shift_re_ = 0;  // (shift_re_ + imag_extent_ i) lies in (c)
};

/// x with a x = 1 mod c, reduced into the fundamental domain.
GaussianInt mod_inverse(const GaussianInt& a, const GaussianInt& c);

/// Representatives of (O/(c))^x in the fundamental domain, ordered by
/// domain index.  For a unit c this is {0}.
std::vector<GaussianInt> unit_residues(const GaussianInt& c);

}  // namespace gsieve

template <>
struct std::hash<gsieve::GaussianInt> {
  std::size_t operator()(const gsieve::GaussianInt& z) const noexcept {
    return std::hash<std::int64_t>{}(z.re * 0x9E3779B97F4A7C15LL ^ z.im);
  }
};
