#pragma once

// Composite Gauss-Legendre rules and the quadrature configuration shared by
// every integral in the library.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace gsieve {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points (cached per n; thread safe).
const GaussRule& gauss_legendre(int n);

/// Integrates f over [a, b] with `panels` equal panels of the n-point rule.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, const GaussRule& rule) {
  using R = decltype(f(a));
  R acc{};
  const double h = (b - a) / panels;
  for (int j = 0; j < panels; ++j) {
    const double lo = a + j * h;
    const double mid = lo + 0.5 * h;
    R part{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      part += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    }
    acc += 0.5 * h * part;
  }
  return acc;
}

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;  // |fine - coarse|
};

/// Truncation and panel parameters.  Everything is overridable from a flat
/// "key = value" file.
struct QuadratureConfig {
  double t_cut = 6.0;           // t in [-t_cut T, t_cut T]
  double p_cut = 6.0;           // |p| <= p_cut P
  double r_cut = 6.0;           // r in [-r_cut / T, r_cut / T] (extended if the weight needs it)
  int theta_q_cut = 3;          // |q| <= theta_q_cut in the periodized theta (raised if P is small)
  int gl_order = 16;            // points per panel
  double t_panels_per_unit = 4.0;  // panels per unit length in t (at least 8 per T)
  double phase_per_panel = 6.0; // max oscillation (radians) per panel in the geometric integrals
  double panel_scale = 1.0;     // multiplies every panel count (convergence studies)
  double t_eps = 1e-4;          // removable-singularity offset for bold J at t = 0
  double z_max = 12.0;          // series regime of the Bessel evaluator

  std::map<std::string, std::string> to_map() const;
  static QuadratureConfig from_map(const std::map<std::string, std::string>& kv);
  static QuadratureConfig load(const std::string& path);
  void save(const std::string& path) const;
  /// One line per key, "key = value".
  std::string to_string() const;
  /// Same with every panel count halved in width (panel_scale doubled).
  QuadratureConfig refined() const;
};

}  // namespace gsieve
