#include "gsieve/exp_sums.hpp"

#include <cmath>
#include <numbers>

namespace gsieve {

namespace {

std::int64_t emod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t emod128(__int128 a, std::int64_t m) {
  __int128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

cplx e_additive(cplx z) {
  // Reduce mod 1 first so large arguments keep full precision.
  const double x = z.real() - std::floor(z.real());
  const double a = 2.0 * std::numbers::pi * x;
  return {std::cos(a), std::sin(a)};
}

RootTable::RootTable(std::int64_t n) : roots_(static_cast<std::size_t>(n)) {
  for (std::int64_t k = 0; k < n; ++k) {
    // e[k/N] and e[(N-k)/N] are stored as exact conjugates.
    const std::int64_t j = std::min(k, n - k);
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    const cplx w{std::cos(a), std::sin(a)};
    roots_[static_cast<std::size_t>(k)] = (j == k) ? w : std::conj(w);
  }
}

const cplx& RootTable::at(std::int64_t k) const { return (*this)[emod(k, order())]; }

ModulusContext::ModulusContext(const GaussianInt& c)
    : c_(c), n_(c.norm()), dom_(c), residues_(unit_residues(c)), roots_(n_) {
  if (c.is_zero()) throw DomainError("zero modulus");
  inverses_.reserve(residues_.size());
  inverse_phase_.reserve(residues_.size());
  for (const auto& a : residues_) {
    inverses_.push_back(mod_inverse(a, c_));
    inverse_phase_.push_back(phase(inverses_.back()));
  }
}

std::int64_t ModulusContext::phase(const GaussianInt& x) const {
  return emod128(static_cast<__int128>(x.re) * c_.re + static_cast<__int128>(x.im) * c_.im, n_);
}

std::pair<std::int64_t, std::int64_t> ModulusContext::twist(const GaussianInt& m) const {
  const std::int64_t a = emod128(static_cast<__int128>(c_.re) * m.re + static_cast<__int128>(c_.im) * m.im, n_);
  const std::int64_t b = emod128(static_cast<__int128>(c_.im) * m.re - static_cast<__int128>(c_.re) * m.im, n_);
  return {a, b};
}

cplx ModulusContext::kloosterman_twisted(std::int64_t a, std::int64_t b, std::int64_t a2,
                                         std::int64_t b2) const {
  if (n_ == 1) return 1.0;
  cplx acc = 0.0;
  for (std::size_t j = 0; j < residues_.size(); ++j) {
    const auto& x = residues_[j];
    const auto& y = inverses_[j];
    // residue coordinates are < N, twist coefficients < N
    const __int128 k = static_cast<__int128>(x.re) * a + static_cast<__int128>(x.im) * b +
                       static_cast<__int128>(y.re) * a2 + static_cast<__int128>(y.im) * b2;
    acc += roots_[static_cast<std::int64_t>(k % n_)];
  }
  return acc;
}

cplx ModulusContext::kloosterman(const GaussianInt& m, const GaussianInt& n) const {
  const auto [a, b] = twist(m);
  const auto [a2, b2] = twist(n);
  return kloosterman_twisted(a, b, a2, b2);
}

cplx ModulusContext::f_sum(const GaussianInt& w) const {
  if (!coprime(w, c_)) {
    throw DomainError("f_sum requires (w, c) = (1); got w=" + to_string(w) + " c=" + to_string(c_));
  }
  return kloosterman(w * w, GaussianInt{1}) * roots_.at(phase(w + w));
}

std::vector<cplx> ModulusContext::f_values() const {
  std::vector<cplx> out;
  out.reserve(residues_.size());
  if (n_ == 1) {
    out.assign(residues_.size(), cplx{1.0});
    return out;
  }
  for (const auto& alpha : residues_) {
    const GaussianInt sq = dom_.mul(alpha, alpha);
    const auto [a, b] = twist(sq);
    // S(alpha^2, 1; c) = sum_beta e[(beta alpha^2 + beta^-1) / c]
    cplx acc = 0.0;
    for (std::size_t j = 0; j < residues_.size(); ++j) {
      const auto& x = residues_[j];
      const std::int64_t k = (x.re * a + x.im * b + inverse_phase_[j]) % n_;
      acc += roots_[k];
    }
    out.push_back(acc * roots_[phase(alpha + alpha)]);
  }
  return out;
}

cplx kloosterman(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("kloosterman with zero modulus");
  if (c.is_unit()) return 1.0;
  return ModulusContext(c).kloosterman(m, n);
}

cplx f_sum(const GaussianInt& w, const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("f_sum with zero modulus");
  if (!coprime(w, c)) {
    throw DomainError("f_sum requires (w, c) = (1); got w=" + to_string(w) + " c=" + to_string(c));
  }
  if (c.is_unit()) return 1.0;
  return ModulusContext(c).f_sum(w);
}

cplx selberg_residual(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("selberg_residual with zero modulus");
  const GaussianInt m2 = m * m, n2 = n * n, mn = m * n;
  const cplx lhs = kloosterman(m2, n2, c);
  cplx rhs = 0.0;
  for (const auto& d : divisors(GIdeal(gcd(m2, n2, c)))) {
    const GaussianInt w = exact_div(mn, d.gen());
    rhs += static_cast<double>(d.norm()) * kloosterman(w * w, GaussianInt{1}, exact_div(c, d.gen()));
  }
  return lhs - rhs;
}

cplx shift_vanishing_residual(const GaussianInt& w, const GaussianInt& c, const GaussianInt& g) {
  if (c.is_zero() || g.is_zero()) throw DomainError("shift_vanishing_residual with zero modulus");
  if (!divides(g, w)) {
    throw DomainError("shift_vanishing_residual requires g | w; got g=" + to_string(g) + " w=" + to_string(w));
  }
  const cplx lhs = kloosterman(w * w, GaussianInt{1}, c * g);
  if (!coprime(c, g)) return lhs;
  const GaussianInt q = exact_div(w, g);
  return lhs - static_cast<double>(moebius(GIdeal(g))) * kloosterman(q * q, GaussianInt{1}, c);
}

double weil_ratio(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("weil_ratio with zero modulus");
  const double s = std::abs(kloosterman(m, n, c));
  const GIdeal cc(c);
  const double g = static_cast<double>(gcd(m, n, c).norm());
  return s / (static_cast<double>(tau(cc)) * std::sqrt(g) * std::sqrt(static_cast<double>(cc.norm())));
}

}  // namespace gsieve
