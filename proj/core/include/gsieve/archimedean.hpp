#pragma once

// Gamma and Bessel functions of complex order, the test-function kernels,
// and the Bessel integral H(z) in its spectral and geometric forms.

#include <complex>

#include "gsieve/exp_sums.hpp"
#include "gsieve/quadrature.hpp"

namespace gsieve {

struct SpectralPoint {
  double t = 0.0;
  int p = 0;
};

/// h(t, p) = exp(-(t/T)^2 - (p/P)^2).
struct TestFunction {
  double T = 1.0;
  double P = 1.0;

  TestFunction() = default;
  TestFunction(double T_, double P_);
  double h(double t, int p) const;
};

/// Gamma(z) via Lanczos (g = 7) and reflection.  Throws PoleError at 0, -1, ...
cplx complex_gamma(cplx z);
/// log Gamma(z) up to a multiple of 2 pi i.
cplx log_gamma(cplx z);
/// 1 / Gamma(z); entire, exactly 0 at the poles.
cplx rgamma(cplx z);

/// J_mu(z) by its power series, principal branch of (z/2)^mu.  RangeError if |z| > z_max.
cplx bessel_j(cplx mu, cplx z, double z_max = 12.0);

/// J_{nu+p}(z) J_{nu-p}(conj z), written so that it stays even in z.
cplx bessel_pair(cplx nu, int p, cplx z, double z_max = 12.0);

/// 2 pi^2 / sin(pi i t) (J_{-it,-p}(z) - J_{it,p}(z)); symmetric offset average for |t| < t_eps.
cplx bold_J(SpectralPoint pt, cplx z, double t_eps = 1e-4, double z_max = 12.0);

/// cosh r cos w + i sinh r sin w.
cplx trh(double r, double omega);
/// 2 (trh - 1).
cplx psi(double r, double omega);

struct KernelValues {
  double k = 0.0;
  double k2 = 0.0;      // k''
  double theta = 0.0;
  double theta2 = 0.0;  // theta''
};

/// Number of periodization terms used on each side: max(config, needed for 1e-16 tails).
int theta_terms(const TestFunction& tf, int q_cut);
KernelValues kernels(const TestFunction& tf, double r, double omega, int q_cut = 3);

/// sum_p int h(t,p) (t^2 + p^2) dt from the Gaussian moments.
double plancherel_H(const TestFunction& tf);
/// The same by quadrature in t.
Estimate<double> plancherel_H_quadrature(const TestFunction& tf, const QuadratureConfig& cfg = {});

Estimate<cplx> H_spectral(cplx z, const TestFunction& tf, const QuadratureConfig& cfg = {});
/// -int int cos(2 Re(z trh)) (k'' theta + k theta'') dr dw.
Estimate<cplx> H_geometric0(cplx z, const TestFunction& tf, const QuadratureConfig& cfg = {});
/// |2z|^2 int int cos(2 Re(z trh)) (sinh^2 r + sin^2 w) k theta dr dw.
Estimate<cplx> H_geometric2(cplx z, const TestFunction& tf, const QuadratureConfig& cfg = {});

struct GeometricPair {
  Estimate<cplx> form0;
  Estimate<cplx> form2;
};
/// Both geometric forms from one pass over the (r, w) grid.
GeometricPair H_geometric_both(cplx z, const TestFunction& tf, const QuadratureConfig& cfg = {});

/// int int (sinh^2 r + sin^2 w) k theta dr dw, so |H(z)| <= 4 |z|^2 small_z_constant.
double small_z_constant(const TestFunction& tf);

/// Gamma(s) Gamma(s + it + |p|) Gamma(s - it + |p|).
cplx gamma_factor(cplx s, double t, int p);
/// C(s, t, p) = |s| |s + it + |p|| |s - it + |p||.
double analytic_conductor(cplx s, double t, int p);

}  // namespace gsieve
