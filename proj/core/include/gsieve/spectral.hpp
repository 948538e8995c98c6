#pragma once

// Hecke zeta functions of Q(i), the divisor sums tau_{s,p}, the Eisenstein
// large-sieve quantity and the geometric side of the Kuznetsov formula.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsieve/archimedean.hpp"
#include "gsieve/gaussian.hpp"

namespace gsieve {

enum class NormWindow {
  kDyadic,   // N < N(n) <= 2N
  kInitial,  // 1 <= N(n) <= N
};

/// Finitely supported a: ideals -> C with a declared norm window.
class CoefficientSequence {
 public:
  CoefficientSequence(NormWindow window, std::int64_t N);

  NormWindow window() const { return window_; }
  std::int64_t N() const { return n_; }
  bool in_window(const GIdeal& n) const;
  /// All ideals of the window, in IdealOrder.
  std::vector<GIdeal> window_ideals() const;

  /// Throws DomainError if n lies outside the window.
  void set(const GIdeal& n, cplx value);
  cplx get(const GIdeal& n) const;
  const std::map<GIdeal, cplx, IdealOrder>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double norm2() const;  // ||a||_2
  double norm2_sq() const;
  CoefficientSequence scaled(cplx lambda) const;

 private:
  NormWindow window_;
  std::int64_t n_;
  std::map<GIdeal, cplx, IdealOrder> entries_;
};

/// lambda_{4p}((z)) = (z/|z|)^{4p}; independent of the generator.
cplx lambda_4p(const GaussianInt& z, int p);
/// lambda_{it,p}(z) = |z|^{it} (z/|z|)^p on the given generator.
cplx lambda_itp(const GaussianInt& z, double t, int p);

/// sum_{ab = n} lambda_{4p}(a b^-1) N(a b^-1)^s.
cplx tau_s_p(const GIdeal& n, cplx s, int p);

enum class ZetaMode {
  kDirect,    // partial sum plus integral tail correction (Re s > 1)
  kSmoothed,  // Riesz weights (1 - N/X)^3 minus the smoothed pole term (Re s = 1)
};

struct ZetaValue {
  cplx value;
  double tail_estimate = 0.0;  // heuristic size of the neglected remainder
};

/// Hecke zeta sum_a lambda_{4p}(a) N(a)^-s over nonzero ideals of Z[i].
/// PoleError at (s, p) = (1, 0).
ZetaValue hecke_zeta(cplx s, int p, double cutoff, ZetaMode mode = ZetaMode::kDirect);

/// zeta(2) L(2, chi_-4) = (pi^2 / 6) G, the independent value of hecke_zeta(2, 0).
double dedekind_zeta2_reference();

constexpr double kEisensteinPoleBand = 0.05;
constexpr double kEisensteinZetaCutoff = 2e5;

/// 1 / |zeta(1 + 2it, 2p)|^2 (smoothed mode).  DomainError inside the pole band.
double eisenstein_weight(double t, int p, double cutoff = kEisensteinZetaCutoff);

struct EisensteinPoint {
  double t = 0.0;
  int p = 0;
  double weight = 0.0;  // omega(t, p)
  double dt = 0.0;      // quadrature weight
};

/// Quadrature nodes of A(T/2, P/4) with the pole band removed, and the
/// Eisenstein weight at each.  Building it is the expensive part, so it can
/// be reused for many sequences.
class EisensteinGrid {
 public:
  EisensteinGrid(double T, double P, int panels_per_unit = 2, int gl_order = 12,
                 double cutoff = kEisensteinZetaCutoff);
  double T() const { return T_; }
  double P() const { return P_; }
  const std::vector<EisensteinPoint>& points() const { return pts_; }
  /// sum over nodes of omega dt.
  double mass() const;
  double sieve_sum(const CoefficientSequence& a) const;

 private:
  double T_, P_;
  std::vector<EisensteinPoint> pts_;
};

/// E^(2)(T, P, N) = int int_{A(T/2, P/4)} omega |sum a_n tau_{it,p}(n^2)|^2.
double eisenstein_sieve_sum(const CoefficientSequence& a, double T, double P);

struct KuznetsovGeometric {
  double diagonal = 0.0;
  cplx kloosterman_term;
  double tail_bound = 0.0;
  std::int64_t moduli = 0;  // nonzero c summed
};

/// (1/8pi^3) H delta_{m, +-n} + (1/32pi^3) sum_{0 < N(c) <= X} S(m,n;c)/N(c) H(2 pi sqrt(mn)/c).
KuznetsovGeometric kuznetsov_geometric(const GaussianInt& m, const GaussianInt& n, const TestFunction& tf,
                                       std::int64_t c_norm_max, const QuadratureConfig& cfg = {});

/// Bound for the c-sum over N(c) > X from |S| <= 2 tau(c) sqrt(N(m,n,c)) sqrt(N(c))
/// and |H(z)| <= 4 |z|^2 small_z_constant.
double kuznetsov_tail_bound(const GaussianInt& m, const GaussianInt& n, const TestFunction& tf,
                            std::int64_t c_norm_max);

struct ValueRow {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> parameters;
  cplx value;
  double error = 0.0;
};

/// "experiment,<params...>,value_re,value_im,error" with one header line per
/// distinct parameter schema.
void write_value_csv(std::ostream& out, const std::vector<ValueRow>& rows);

}  // namespace gsieve
