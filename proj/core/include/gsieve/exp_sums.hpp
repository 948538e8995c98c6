#pragma once

// Kloosterman sums over Z[i], the twisted sum F(w; c), and residuals of the
// exact identities they satisfy.

#include <complex>
#include <cstdint>
#include <vector>

#include "gsieve/gaussian.hpp"

namespace gsieve {

using cplx = std::complex<double>;

/// exp(2 pi i Re z).
cplx e_additive(cplx z);

/// Table of the N-th roots of unity e[k/N], k = 0..N-1.
class RootTable {
 public:
  explicit RootTable(std::int64_t n);
  std::int64_t order() const { return static_cast<std::int64_t>(roots_.size()); }
  const cplx& operator[](std::int64_t k) const { return roots_[static_cast<std::size_t>(k)]; }
  /// e[k/N] for arbitrary k.
  const cplx& at(std::int64_t k) const;

 private:
  std::vector<cplx> roots_;
};

/// Precomputed data for one concrete modulus c (not just the ideal): the
/// reduced residue system, inverses, and the e[x/c] phase map.
///
/// e[x/c] = e[L(x)/N(c)] with the integer functional
/// L(x) = Re(x * conj(c)) = x.re c.re + x.im c.im; everything is exact
/// integer arithmetic until the final root-table lookup.
class ModulusContext {
 public:
  explicit ModulusContext(const GaussianInt& c);

  const GaussianInt& modulus() const { return c_; }
  std::int64_t norm() const { return n_; }
  const ResidueDomain& domain() const { return dom_; }
  const std::vector<GaussianInt>& residues() const { return residues_; }
  const std::vector<GaussianInt>& inverses() const { return inverses_; }
  const RootTable& roots() const { return roots_; }

  /// L(x) mod N(c).
  std::int64_t phase(const GaussianInt& x) const;

  cplx kloosterman(const GaussianInt& m, const GaussianInt& n) const;
  /// F(w; c) = S(w^2, 1; c) e[2w/c]; w must be coprime to c.
  cplx f_sum(const GaussianInt& w) const;
  /// F(alpha; c) for every alpha in residues(), same order.
  std::vector<cplx> f_values() const;

 private:
  // Coefficients (A, B) with L(alpha * m) = alpha.re A + alpha.im B (mod N).
  std::pair<std::int64_t, std::int64_t> twist(const GaussianInt& m) const;
  cplx kloosterman_twisted(std::int64_t a, std::int64_t b, std::int64_t a2, std::int64_t b2) const;

  GaussianInt c_;
  std::int64_t n_;
  ResidueDomain dom_;
  std::vector<GaussianInt> residues_;
  std::vector<GaussianInt> inverses_;
  std::vector<std::int64_t> inverse_phase_;  // L(alpha^-1)
  RootTable roots_;
};

/// S(m, n; c).  S(m, n; unit) = 1.
cplx kloosterman(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c);

/// F(w; c); DomainError unless gcd(w, c) = 1.
cplx f_sum(const GaussianInt& w, const GaussianInt& c);

/// S(m^2, n^2; c) - sum_{d | (m^2, n^2, c)} N(d) S((mn/d)^2, 1; c/d).
cplx selberg_residual(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c);

/// S(w^2, 1; c g) - [0 if (c, g) != 1 else mu(g) S((w/g)^2, 1; c)].
/// Requires g | w.
cplx shift_vanishing_residual(const GaussianInt& w, const GaussianInt& c, const GaussianInt& g);

/// |S(m, n; c)| / (tau(c) sqrt(N((m, n, c))) sqrt(N(c))).
double weil_ratio(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c);

}  // namespace gsieve
