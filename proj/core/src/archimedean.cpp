#include "gsieve/archimedean.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "gsieve/gaussian.hpp"

namespace gsieve {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with the real part reduced exactly first, so that zeros at the
// integers are hit to full relative precision.
cplx sin_pi(cplx z) {
  const double a = z.real() - 2.0 * std::round(z.real() / 2.0);
  return std::sin(kPi * cplx{a, z.imag()});
}

// log Gamma for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// sum_k (-w)^k / (k! Gamma(mu + k + 1)) with w = z^2 / 4; entire in mu and z.
cplx bessel_core(cplx mu, cplx w) {
  // At mu = -n the first n terms vanish; start where 1/Gamma is nonzero.
  int k0 = 0;
  if (is_nonpositive_integer(mu + 1.0)) k0 = static_cast<int>(-mu.real());
  cplx term = rgamma(mu + static_cast<double>(k0) + 1.0);
  if (k0 > 0) {
    double kfact = 1.0;
    for (int j = 1; j <= k0; ++j) kfact *= j;
    term *= std::pow(-w, k0) / kfact;
  }
  cplx sum = term;
  double peak = std::abs(term);
  const double aw = std::abs(w);
  for (int k = k0; k < 10000; ++k) {
    const cplx denom = static_cast<double>(k + 1) * (mu + static_cast<double>(k + 1));
    term *= -w / denom;
    sum += term;
    peak = std::max(peak, std::abs(term));
    // Tail bound: once q = |w| / ((j+1) |mu+j+1|) <= 1/2 for all later j, the
    // remainder is at most |term| q / (1 - q).
    const double kk = static_cast<double>(k + 2);
    if (kk + mu.real() > 0.0) {
      const double q = aw / (kk * std::abs(mu + kk));
      if (q <= 0.5 && std::abs(term) * q / (1.0 - q) <= 1e-17 * std::max(std::abs(sum), 1e-300 + 1e-30 * peak)) {
        break;
      }
    }
    if (term == 0.0) break;
  }
  return sum;
}

void check_series_range(cplx z, double z_max) {
  if (std::abs(z) > z_max) {
    throw RangeError("Bessel series evaluator limited to |z| <= " + std::to_string(z_max));
  }
}

}  // namespace

TestFunction::TestFunction(double T_, double P_) : T(T_), P(P_) {
  if (!(T > 0.0) || !(P > 0.0)) throw DomainError("test function needs T, P > 0");
}

double TestFunction::h(double t, int p) const {
  const double a = t / T, b = p / P;
  return std::exp(-a * a - b * b);
}

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma at a pole");
  if (z.real() < 0.5) return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right(1.0 - z);
  return log_gamma_right(z);
}

cplx complex_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw PoleError("Gamma has a pole at " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) return kPi / (sin_pi(z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma_right(z));
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
  return std::exp(-log_gamma_right(z));
}

cplx bessel_j(cplx mu, cplx z, double z_max) {
  check_series_range(z, z_max);
  if (z == 0.0) {
    if (mu == 0.0) return 1.0;
    if (is_nonpositive_integer(mu)) return 0.0;  // J_{-n} = (-1)^n J_n
    if (mu.real() > 0.0) return 0.0;
    throw DomainError("J_mu(0) is singular for Re mu <= 0");
  }
  const cplx half = 0.5 * z;
  // Integer order: (z/2)^n without a branch.
  const cplx lead = (mu.imag() == 0.0 && mu.real() == std::round(mu.real()))
                        ? std::pow(half, static_cast<int>(mu.real()))
                        : std::exp(mu * std::log(half));
  return lead * bessel_core(mu, half * half);
}

cplx bessel_pair(cplx nu, int p, cplx z, double z_max) {
  check_series_range(z, z_max);
  if (z == 0.0) throw DomainError("bessel_pair at z = 0");
  // J_{nu+p}(z) J_{nu-p}(zbar) = |z/2|^{2 nu} (z/|z|)^{2p} S(nu+p, z) S(nu-p, zbar),
  // which is the principal-branch product and is even in z.
  const double r = std::abs(z);
  const cplx u = z / r;
  const cplx w = 0.25 * z * z;
  const cplx lead = std::exp(2.0 * nu * std::log(0.5 * r)) * std::pow(u, 2 * p);
  return lead * bessel_core(nu + static_cast<double>(p), w) * bessel_core(nu - static_cast<double>(p), std::conj(w));
}

cplx bold_J(SpectralPoint pt, cplx z, double t_eps, double z_max) {
  if (z == 0.0) throw DomainError("bold_J at z = 0");
  check_series_range(z, z_max);
  auto raw = [&](double t) {
    const cplx nu{0.0, t};
    const cplx num = bessel_pair(-nu, -pt.p, z, z_max) - bessel_pair(nu, pt.p, z, z_max);
    return 2.0 * kPi * kPi * num / sin_pi(nu);
  };
  if (std::abs(pt.t) < t_eps) return 0.5 * (raw(t_eps) + raw(-t_eps));
  return raw(pt.t);
}

cplx trh(double r, double omega) { return {std::cosh(r) * std::cos(omega), std::sinh(r) * std::sin(omega)}; }

cplx psi(double r, double omega) { return 2.0 * (trh(r, omega) - 1.0); }

int theta_terms(const TestFunction& tf, int q_cut) {
  // For w in [-pi/2, pi/2) the q-th term is below exp(-(P pi (|q| - 1/2))^2).
  const int need = static_cast<int>(std::ceil(6.2 / (kPi * tf.P) + 0.5));
  return std::max(q_cut, need);
}

KernelValues kernels(const TestFunction& tf, double r, double omega, int q_cut) {
  KernelValues out;
  const double T = tf.T, P = tf.P;
  const double sq = std::sqrt(kPi);
  const double g = sq * T * std::exp(-T * T * r * r);
  out.k = g;
  out.k2 = g * (4.0 * T * T * T * T * r * r - 2.0 * T * T);
  const double w = omega - kPi * std::floor(omega / kPi + 0.5);
  const int Q = theta_terms(tf, q_cut);
  for (int q = -Q; q <= Q; ++q) {
    const double u = w + kPi * q;
    const double e = sq * P * std::exp(-P * P * u * u);
    out.theta += e;
    out.theta2 += e * (4.0 * P * P * P * P * u * u - 2.0 * P * P);
  }
  return out;
}

double plancherel_H(const TestFunction& tf) {
  const double T = tf.T, P = tf.P;
  const double base = std::sqrt(kPi) * T;
  double total = base * T * T / 2.0;  // p = 0
  for (int p = 1;; ++p) {
    const double term = 2.0 * std::exp(-(p / P) * (p / P)) * base * (T * T / 2.0 + double(p) * p);
    total += term;
    if (term < 1e-18 * total) break;
  }
  return total;
}

namespace {

int p_limit(const TestFunction& tf, const QuadratureConfig& cfg) {
  return static_cast<int>(std::ceil(cfg.p_cut * tf.P));
}

int t_panels(const TestFunction& tf, const QuadratureConfig& cfg, double length, double scale) {
  const double per_unit = std::max(cfg.t_panels_per_unit, 8.0 / tf.T);
  return std::max(2, static_cast<int>(std::ceil(length * per_unit * scale)));
}

// sum_p int_{-L}^{L} f(t, p) dt for f with f(-t, -p) = f(t, p).
template <class R, class F>
R symmetric_spectral_sum(const TestFunction& tf, const QuadratureConfig& cfg, double scale, F&& f) {
  const GaussRule& rule = gauss_legendre(cfg.gl_order);
  const double L = cfg.t_cut * tf.T;
  const int pmax = p_limit(tf, cfg);
  R total{};
  total += 2.0 * integrate_panels([&](double t) { return f(t, 0); }, 0.0, L, t_panels(tf, cfg, L, scale), rule);
  const int n = t_panels(tf, cfg, 2.0 * L, scale);
  // even panel count keeps t = 0 on a panel boundary
  for (int p = 1; p <= pmax; ++p) {
    total += 2.0 * integrate_panels([&](double t) { return f(t, p); }, -L, L, n + (n % 2), rule);
  }
  return total;
}

}  // namespace

Estimate<double> plancherel_H_quadrature(const TestFunction& tf, const QuadratureConfig& cfg) {
  auto f = [&](double t, int p) { return tf.h(t, p) * (t * t + double(p) * p); };
  const double fine = symmetric_spectral_sum<double>(tf, cfg, cfg.panel_scale, f);
  const double coarse = symmetric_spectral_sum<double>(tf, cfg, 0.5 * cfg.panel_scale, f);
  return {fine, std::abs(fine - coarse)};
}

Estimate<cplx> H_spectral(cplx z, const TestFunction& tf, const QuadratureConfig& cfg) {
  check_series_range(z, cfg.z_max);
  if (z == 0.0) return {0.0, 0.0};
  auto f = [&](double t, int p) {
    return tf.h(t, p) * (t * t + double(p) * p) * bold_J({t, p}, z, cfg.t_eps, cfg.z_max);
  };
  const cplx fine = symmetric_spectral_sum<cplx>(tf, cfg, cfg.panel_scale, f);
  const cplx coarse = symmetric_spectral_sum<cplx>(tf, cfg, 0.5 * cfg.panel_scale, f);
  return {fine, std::abs(fine - coarse)};
}

double small_z_constant(const TestFunction& tf) {
  const double T = tf.T, P = tf.P;
  return 0.5 * kPi * kPi * (std::expm1(1.0 / (T * T)) - std::expm1(-1.0 / (P * P)));
}

namespace {

// Gauss-Legendre nodes over w in [-pi/2, pi/2) with n panels, and the
// w-dependent factors of both geometric integrands.
struct OmegaGrid {
  std::vector<double> cos_w, sin_w, wt_theta, wt_theta2, wt_sin2_theta;
};

OmegaGrid make_omega_grid(const TestFunction& tf, const QuadratureConfig& cfg, int panels) {
  const GaussRule& rule = gauss_legendre(cfg.gl_order);
  OmegaGrid g;
  const std::size_t m = rule.nodes.size() * static_cast<std::size_t>(panels);
  g.cos_w.reserve(m);
  g.sin_w.reserve(m);
  g.wt_theta.reserve(m);
  g.wt_theta2.reserve(m);
  g.wt_sin2_theta.reserve(m);
  const double h = kPi / panels;
  for (int j = 0; j < panels; ++j) {
    const double mid = -0.5 * kPi + (j + 0.5) * h;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double w = mid + 0.5 * h * rule.nodes[k];
      const double wt = 0.5 * h * rule.weights[k];
      const KernelValues kv = kernels(tf, 0.0, w, cfg.theta_q_cut);
      const double s = std::sin(w);
      g.cos_w.push_back(std::cos(w));
      g.sin_w.push_back(s);
      g.wt_theta.push_back(wt * kv.theta);
      g.wt_theta2.push_back(wt * kv.theta2);
      g.wt_sin2_theta.push_back(wt * s * s * kv.theta);
    }
  }
  return g;
}

// Upper envelope of the r-dependent weights, relative to their size at r = 0.
double r_envelope(double T, double r) {
  const double c = std::cosh(r);
  return std::exp(-T * T * r * r) * (c * c + 4.0 * T * T * T * T * r * r + 2.0 * T * T) / (1.0 + 2.0 * T * T);
}

double r_extent(const TestFunction& tf, const QuadratureConfig& cfg) {
  double R = cfg.r_cut / tf.T;
  while (r_envelope(tf.T, R) > 1e-16) R += 0.125 / tf.T;
  return R;
}

struct GeometricSums {
  cplx form0{}, form2{};
};

// 2 int_0^R dr int_{-pi/2}^{pi/2} dw of both integrands; the (r, w) -> (-r, -w)
// symmetry halves the r range.
GeometricSums geometric_pass(cplx z, const TestFunction& tf, const QuadratureConfig& cfg, double scale) {
  const GaussRule& rule = gauss_legendre(cfg.gl_order);
  const double T = tf.T, P = tf.P;
  const double x2 = 2.0 * z.real(), y2 = 2.0 * z.imag();
  const double az = std::abs(z);
  const double R = r_extent(tf, cfg);
  const double kappa = cfg.phase_per_panel;
  const double sq = std::sqrt(kPi);

  std::unordered_map<int, OmegaGrid> grids;
  auto grid_for = [&](int panels) -> const OmegaGrid& {
    auto it = grids.find(panels);
    if (it == grids.end()) it = grids.emplace(panels, make_omega_grid(tf, cfg, panels)).first;
    return it->second;
  };
  // Panel counts are rounded up to a coarse geometric ladder so grids get reused.
  auto ladder = [](double need) {
    int n = 1;
    while (n < need) n = std::max(n + 1, static_cast<int>(std::ceil(n * 1.125)));
    return n;
  };

  double s_theta = 0.0, s_theta2 = 0.0, s_sin2 = 0.0;  // placeholders reused per node
  double acc0 = 0.0, acc2 = 0.0;
  double r0 = 0.0;
  while (r0 < R) {
    // Allow more phase per panel where the weight is already tiny.
    const double env = std::max(r_envelope(T, r0), 1e-300);
    const double relax = std::min(3.0, 1.0 + 0.25 * std::log10(1.0 / std::min(1.0, env)));
    const double freq = 2.0 * az * std::cosh(std::min(R, r0 + 2.0 / T)) + 1e-300;
    double h = std::min(2.0 / T, relax * kappa / freq) / scale;
    // shrink until the frequency bound at the panel's right end is respected
    while (h > 1e-12 && 2.0 * az * std::cosh(r0 + h) * h > relax * kappa / scale * 1.0001 && h * T < 2.0) h *= 0.9;
    if (r0 + h > R) h = R - r0;
    const double mid = r0 + 0.5 * h;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double r = mid + 0.5 * h * rule.nodes[k];
      const double wr = 0.5 * h * rule.weights[k];
      const double ch = std::cosh(r), sh = std::sinh(r);
      const double a = x2 * ch, b = y2 * sh;
      const double w_freq = 2.0 * az * ch;
      const double need = std::max({kPi * w_freq / (relax * kappa), kPi * P / 2.0, 4.0}) * scale;
      const OmegaGrid& g = grid_for(ladder(need));
      s_theta = s_theta2 = s_sin2 = 0.0;
      const std::size_t m = g.cos_w.size();
      for (std::size_t j = 0; j < m; ++j) {
        const double c = std::cos(a * g.cos_w[j] - b * g.sin_w[j]);
        s_theta += c * g.wt_theta[j];
        s_theta2 += c * g.wt_theta2[j];
        s_sin2 += c * g.wt_sin2_theta[j];
      }
      const double kr = sq * T * std::exp(-T * T * r * r);
      const double k2 = kr * (4.0 * T * T * T * T * r * r - 2.0 * T * T);
      acc0 += wr * (-(k2 * s_theta + kr * s_theta2));
      acc2 += wr * kr * (sh * sh * s_theta + s_sin2);
    }
    r0 += h;
  }
  const double pref = 4.0 * std::norm(z);  // |2z|^2
  return {2.0 * acc0, 2.0 * pref * acc2};
}

}  // namespace

GeometricPair H_geometric_both(cplx z, const TestFunction& tf, const QuadratureConfig& cfg) {
  const GeometricSums fine = geometric_pass(z, tf, cfg, cfg.panel_scale);
  const GeometricSums coarse = geometric_pass(z, tf, cfg, 0.5 * cfg.panel_scale);
  return {{fine.form0, std::abs(fine.form0 - coarse.form0)}, {fine.form2, std::abs(fine.form2 - coarse.form2)}};
}

Estimate<cplx> H_geometric0(cplx z, const TestFunction& tf, const QuadratureConfig& cfg) {
  return H_geometric_both(z, tf, cfg).form0;
}

Estimate<cplx> H_geometric2(cplx z, const TestFunction& tf, const QuadratureConfig& cfg) {
  if (z == 0.0) return {0.0, 0.0};
  return H_geometric_both(z, tf, cfg).form2;
}

cplx gamma_factor(cplx s, double t, int p) {
  const double ap = std::abs(p);
  const cplx it{0.0, t};
  return complex_gamma(s) * complex_gamma(s + it + ap) * complex_gamma(s - it + ap);
}

double analytic_conductor(cplx s, double t, int p) {
  const double ap = std::abs(p);
  const cplx it{0.0, t};
  return std::abs(s) * std::abs(s + it + ap) * std::abs(s - it + ap);
}

}  // namespace gsieve
