#include "gsieve/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace gsieve {

namespace {

using i128 = __int128;

std::int64_t checked(i128 v, const char* op) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw OverflowError(std::string("integer overflow in ") + op);
  }
  return static_cast<std::int64_t>(v);
}

std::int64_t floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return checked(q, "floor_div");
}

// Nearest integer to a / b for b > 0.
i128 round_div(i128 a, i128 b) {
  i128 twice = 2 * a + b;
  i128 den = 2 * b;
  i128 q = twice / den;
  if (twice % den != 0 && twice < 0) --q;
  return q;
}

std::int64_t emod(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// Returns g = gcd(a, b) >= 0 with a*s + b*t = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t sn = s0 - q * s1;
    s0 = s1;
    s1 = sn;
    std::int64_t tn = t0 - q * t1;
    t0 = t1;
    t1 = tn;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Gaussian prime above a rational prime q = 1 mod 4.
GaussianInt split_prime(std::int64_t q) {
  const auto uq = static_cast<std::uint64_t>(q);
  for (std::uint64_t n = 2;; ++n) {
    if (powmod(n, (uq - 1) / 2, uq) == uq - 1) {
      auto x = static_cast<std::int64_t>(powmod(n, (uq - 1) / 4, uq));
      return gcd(GaussianInt{q}, GaussianInt{x, 1});
    }
  }
}

}  // namespace

std::int64_t GaussianInt::norm() const {
  return checked(static_cast<i128>(re) * re + static_cast<i128>(im) * im, "norm");
}

GaussianInt GaussianInt::operator-() const {
  return {checked(-static_cast<i128>(re), "negate"), checked(-static_cast<i128>(im), "negate")};
}

GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
  return {checked(static_cast<i128>(a.re) + b.re, "add"), checked(static_cast<i128>(a.im) + b.im, "add")};
}

GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
  return {checked(static_cast<i128>(a.re) - b.re, "subtract"),
          checked(static_cast<i128>(a.im) - b.im, "subtract")};
}

GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
  i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
  i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
  return {checked(re, "multiply"), checked(im, "multiply")};
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) { return os << to_string(z); }

std::string to_string(const GaussianInt& z) {
  std::ostringstream os;
  if (z.im == 0) {
    os << z.re;
  } else if (z.re == 0) {
    if (z.im == 1) {
      os << "i";
    } else if (z.im == -1) {
      os << "-i";
    } else {
      os << z.im << "i";
    }
  } else {
    os << z.re << (z.im > 0 ? "+" : "-");
    std::int64_t a = z.im > 0 ? z.im : -z.im;
    if (a != 1) os << a;
    os << "i";
  }
  return os.str();
}

GaussianInt parse_gaussian(std::string_view text) {
  auto fail = [&] { return DomainError("malformed Gaussian integer '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();

  // Split into signed terms.
  std::int64_t re = 0, im = 0;
  std::size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (any) {
      throw fail();
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    std::string_view digits = text.substr(start, pos - start);
    bool imaginary = pos < text.size() && text[pos] == 'i';
    if (imaginary) ++pos;
    if (digits.empty() && !imaginary) throw fail();
    std::int64_t value = 1;
    if (!digits.empty()) {
      try {
        value = std::stoll(std::string(digits));
      } catch (const std::exception&) {
        throw fail();
      }
    }
    (imaginary ? im : re) += sign * value;
    any = true;
  }
  return {re, im};
}

std::pair<GaussianInt, GaussianInt> div_round(const GaussianInt& a, const GaussianInt& b) {
  if (b.is_zero()) throw DomainError("division by zero Gaussian integer");
  const i128 n = b.norm();
  // a * conj(b) / N(b)
  const i128 xr = static_cast<i128>(a.re) * b.re + static_cast<i128>(a.im) * b.im;
  const i128 xi = static_cast<i128>(a.im) * b.re - static_cast<i128>(a.re) * b.im;
  GaussianInt q{checked(round_div(xr, n), "div_round"), checked(round_div(xi, n), "div_round")};
  return {q, a - q * b};
}

GaussianInt exact_div(const GaussianInt& a, const GaussianInt& b) {
  auto [q, r] = div_round(a, b);
  if (!r.is_zero()) throw DomainError(to_string(b) + " does not divide " + to_string(a));
  return q;
}

bool divides(const GaussianInt& d, const GaussianInt& a) {
  if (d.is_zero()) return a.is_zero();
  return div_round(a, d).second.is_zero();
}

GaussianInt canonical_associate(const GaussianInt& z) {
  if (z.is_zero()) throw DomainError("canonical_associate of zero");
  GaussianInt w = z;
  while (!(w.re > 0 && w.im >= 0)) w = {-w.im, w.re};  // multiply by i
  return w;
}

GaussianInt gcd(const GaussianInt& a, const GaussianInt& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  GaussianInt x = a, y = b;
  while (!y.is_zero()) {
    GaussianInt r = div_round(x, y).second;
    x = y;
    y = r;
  }
  return canonical_associate(x);
}

GaussianInt gcd(const GaussianInt& a, const GaussianInt& b, const GaussianInt& c) {
  if (a.is_zero() && b.is_zero()) return canonical_associate(c);
  return gcd(gcd(a, b), c);
}

bool coprime(const GaussianInt& a, const GaussianInt& b) { return gcd(a, b) == GaussianInt{1}; }

GaussianInt pow(GaussianInt base, unsigned exponent) {
  GaussianInt r{1};
  while (exponent != 0) {
    if (exponent & 1u) r *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return r;
}

GIdeal::GIdeal(const GaussianInt& z) : gen_(canonical_associate(z)) {}

bool IdealOrder::operator()(const GaussianInt& a, const GaussianInt& b) const {
  const auto na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.im != b.im) return a.im < b.im;
  return a.re < b.re;
}

std::ostream& operator<<(std::ostream& os, const GIdeal& d) { return os << "(" << d.gen() << ")"; }

GaussianInt Factorization::recombine() const {
  GaussianInt r = unit;
  for (const auto& pp : factors) r *= pow(pp.prime.gen(), static_cast<unsigned>(pp.exponent));
  return r;
}

Factorization factor(const GaussianInt& z) {
  if (z.is_zero()) throw DomainError("factor of zero");
  std::int64_t n = z.norm();
  GaussianInt rest = z;
  Factorization out;

  auto strip = [&](const GaussianInt& p) {
    int e = 0;
    while (true) {
      auto [q, r] = div_round(rest, p);
      if (!r.is_zero()) break;
      rest = q;
      ++e;
    }
    if (e > 0) out.factors.push_back({GIdeal(p), e});
  };

  for (std::int64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    while (n % q == 0) n /= q;
    if (q == 2) {
      strip({1, 1});
    } else if (q % 4 == 3) {
      strip({q, 0});
    } else {
      GaussianInt pi = split_prime(q);
      strip(pi);
      strip(canonical_associate(pi.conj()));
    }
  }
  if (n > 1) {
    if (n == 2) {
      strip({1, 1});
    } else if (n % 4 == 3) {
      strip({n, 0});
    } else {
      GaussianInt pi = split_prime(n);
      strip(pi);
      strip(canonical_associate(pi.conj()));
    }
  }
  if (!rest.is_unit()) throw std::logic_error("factor: incomplete factorization of " + to_string(z));
  out.unit = rest;
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return IdealOrder{}(a.prime, b.prime); });
  return out;
}

MultiplicativeValues multiplicative_functions(const GIdeal& n) {
  MultiplicativeValues v;
  for (const auto& [p, e] : factor(n).factors) {
    const std::int64_t np = p.norm();
    v.tau *= e + 1;
    std::int64_t pk = 1;
    for (int j = 1; j < e; ++j) pk *= np;
    v.phi *= pk * (np - 1);
    v.mu = e >= 2 ? 0 : -v.mu;
  }
  return v;
}

std::int64_t tau(const GIdeal& n) { return multiplicative_functions(n).tau; }
std::int64_t euler_phi(const GIdeal& n) { return multiplicative_functions(n).phi; }
int moebius(const GIdeal& n) { return multiplicative_functions(n).mu; }
bool is_squarefree(const GIdeal& n) { return moebius(n) != 0; }

std::pair<GIdeal, GIdeal> squarefree_split(const GIdeal& d) {
  GaussianInt d1{1}, d2{1};
  for (const auto& [p, e] : factor(d).factors) {
    if (e % 2 == 1) d1 *= p.gen();
    d2 *= pow(p.gen(), static_cast<unsigned>(e / 2));
  }
  return {GIdeal(d1), GIdeal(d2)};
}

std::vector<GIdeal> divisors(const GIdeal& n) {
  std::vector<GaussianInt> out{GaussianInt{1}};
  for (const auto& [p, e] : factor(n).factors) {
    const std::size_t base = out.size();
    GaussianInt pk{1};
    for (int j = 1; j <= e; ++j) {
      pk *= p.gen();
      for (std::size_t k = 0; k < base; ++k) out.push_back(out[k] * pk);
    }
  }
  std::vector<GIdeal> ideals;
  ideals.reserve(out.size());
  for (const auto& z : out) ideals.emplace_back(z);
  std::sort(ideals.begin(), ideals.end(), IdealOrder{});
  return ideals;
}

std::vector<GIdeal> ideals_in_norm_window(double lo, double hi) {
  std::vector<GIdeal> out;
  const auto amax = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(hi, 0.0)))) + 1;
  for (std::int64_t a = 1; a <= amax; ++a) {
    for (std::int64_t b = 0; b <= amax; ++b) {
      const double n = static_cast<double>(a * a + b * b);
      if (n > hi) break;
      if (n > lo) out.emplace_back(GaussianInt{a, b});
    }
  }
  std::sort(out.begin(), out.end(), IdealOrder{});
  return out;
}

std::vector<GIdeal> ideals_up_to_norm(double bound) {
  if (bound < 1) throw DomainError("ideals_up_to_norm requires bound >= 1");
  return ideals_in_norm_window(0.0, bound);
}

ResidueDomain::ResidueDomain(const GaussianInt& c) : c_(canonical_associate(c)) {
  const std::int64_t x = c_.re, y = c_.im;
  const std::int64_t n = c_.norm();
  std::int64_t u = 0, v = 0;
  const std::int64_t g = ext_gcd(y, x, u, v);  // y u + x v = g
  imag_extent_ = g;
  real_extent_ = n / g;
  // c (u + v i) = (x u - y v) + (y u + x v) i
  shift_re_ = emod(static_cast<i128>(x) * u - static_cast<i128>(y) * v, real_extent_);
}

GaussianInt ResidueDomain::reduce(const GaussianInt& z) const {
  const std::int64_t q = floor_div(z.im, imag_extent_);
  const i128 re = static_cast<i128>(z.re) - static_cast<i128>(q) * shift_re_;
  return {emod(re, real_extent_), z.im - q * imag_extent_};
}

GaussianInt ResidueDomain::mul(const GaussianInt& a, const GaussianInt& b) const {
  const i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
  const i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
  const i128 q = im >= 0 ? im / imag_extent_ : -((-im + imag_extent_ - 1) / imag_extent_);
  const i128 r = re - q * shift_re_;
  return {emod(r, real_extent_), static_cast<std::int64_t>(im - q * imag_extent_)};
}

GaussianInt mod_inverse(const GaussianInt& a, const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("mod_inverse with zero modulus");
  // Extended Euclid: track x with a * x = r (mod c).
  GaussianInt r0 = a, r1 = c, x0{1}, x1{0};
  if (r0.is_zero()) {
    if (c.is_unit()) return GaussianInt{0};
    throw NotInvertibleError("0 is not invertible modulo " + to_string(c));
  }
  while (!r1.is_zero()) {
    auto [q, r] = div_round(r0, r1);
    r0 = r1;
    r1 = r;
    GaussianInt xn = x0 - q * x1;
    x0 = x1;
    x1 = xn;
  }
  if (!r0.is_unit()) {
    throw NotInvertibleError(to_string(a) + " is not invertible modulo " + to_string(c));
  }
  // r0 is a unit u; a * x0 = u, so a * (x0 * conj(u)) = 1.
  ResidueDomain dom(c);
  return dom.reduce(x0 * r0.conj());
}

std::vector<GaussianInt> unit_residues(const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("unit_residues with zero modulus");
  ResidueDomain dom(c);
  const auto primes = factor(c).factors;
  std::vector<GaussianInt> out;
  out.reserve(static_cast<std::size_t>(dom.size()));
  for (std::int64_t k = 0; k < dom.size(); ++k) {
    const GaussianInt z = dom.element(k);
    bool ok = true;
    for (const auto& pp : primes) {
      if (divides(pp.prime.gen(), z)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z);
  }
  return out;
}

int valuation(const GIdeal& n, const GIdeal& p) {
  for (const auto& pp : factor(n).factors) {
    if (pp.prime == p) return pp.exponent;
  }
  return 0;
}

}  // namespace gsieve
