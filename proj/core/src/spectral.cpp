#include "gsieve/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gsieve/exp_sums.hpp"

namespace gsieve {

namespace {

constexpr double kPi = std::numbers::pi;

double arg_of(const GaussianInt& z) {
  return std::atan2(static_cast<double>(z.im), static_cast<double>(z.re));
}

}  // namespace

// ---------------------------------------------------------------------------
// CoefficientSequence

CoefficientSequence::CoefficientSequence(NormWindow window, std::int64_t N) : window_(window), n_(N) {
  if (N < 1) throw DomainError("coefficient sequence needs N >= 1");
}

bool CoefficientSequence::in_window(const GIdeal& n) const {
  const std::int64_t v = n.norm();
  return window_ == NormWindow::kDyadic ? (v > n_ && v <= 2 * n_) : (v >= 1 && v <= n_);
}

std::vector<GIdeal> CoefficientSequence::window_ideals() const {
  return window_ == NormWindow::kDyadic ? ideals_in_norm_window(static_cast<double>(n_), 2.0 * n_)
                                         : ideals_up_to_norm(static_cast<double>(n_));
}

void CoefficientSequence::set(const GIdeal& n, cplx value) {
  if (!in_window(n)) {
    std::ostringstream os;
    os << "ideal " << n << " (norm " << n.norm() << ") outside the declared window";
    throw DomainError(os.str());
  }
  entries_[n] = value;
}

cplx CoefficientSequence::get(const GIdeal& n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? cplx{} : it->second;
}

double CoefficientSequence::norm2_sq() const {
  double s = 0.0;
  for (const auto& [k, v] : entries_) s += std::norm(v);
  return s;
}

double CoefficientSequence::norm2() const { return std::sqrt(norm2_sq()); }

CoefficientSequence CoefficientSequence::scaled(cplx lambda) const {
  CoefficientSequence out = *this;
  for (auto& [k, v] : out.entries_) v *= lambda;
  return out;
}

// ---------------------------------------------------------------------------
// Hecke characters and divisor sums

cplx lambda_4p(const GaussianInt& z, int p) {
  if (z.is_zero()) throw DomainError("lambda at 0");
  return std::polar(1.0, 4.0 * p * arg_of(z));
}

cplx lambda_itp(const GaussianInt& z, double t, int p) {
  if (z.is_zero()) throw DomainError("lambda at 0");
  const double logabs = 0.5 * std::log(static_cast<double>(z.norm()));
  return std::polar(1.0, t * logabs + p * arg_of(z));
}

cplx tau_s_p(const GIdeal& n, cplx s, int p) {
  cplx acc = 0.0;
  const double ln = std::log(static_cast<double>(n.norm()));
  for (const auto& a : divisors(n)) {
    const GaussianInt b = exact_div(n.gen(), a.gen());
    const double la = std::log(static_cast<double>(a.norm()));
    // lambda_{4p}(a / b) N(a / b)^s
    const double phase = 4.0 * p * (arg_of(a.gen()) - arg_of(b));
    acc += std::polar(1.0, phase) * std::exp(s * (2.0 * la - ln));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Hecke zeta

namespace {

// One entry per nonzero ideal (generator a + bi with a > 0, b >= 0), sorted by norm.
struct IdealTable {
  double bound = 0.0;
  std::vector<double> norm;
  std::vector<double> log_norm;
  std::vector<double> arg4;  // 4 arg(generator)
};

std::shared_ptr<const IdealTable> ideal_table(double bound) {
  static std::mutex mu;
  static std::shared_ptr<const IdealTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (cached && cached->bound >= bound) return cached;
  auto tab = std::make_shared<IdealTable>();
  tab->bound = bound;
  const auto lim = static_cast<std::int64_t>(std::floor(bound));
  std::vector<std::pair<std::int64_t, double>> items;
  items.reserve(static_cast<std::size_t>(0.8 * static_cast<double>(lim)) + 16);
  for (std::int64_t a = 1; a * a <= lim; ++a) {
    for (std::int64_t b = 0; a * a + b * b <= lim; ++b) {
      items.emplace_back(a * a + b * b, 4.0 * std::atan2(static_cast<double>(b), static_cast<double>(a)));
    }
  }
  std::sort(items.begin(), items.end());
  tab->norm.reserve(items.size());
  tab->log_norm.reserve(items.size());
  tab->arg4.reserve(items.size());
  for (const auto& [n, ang] : items) {
    tab->norm.push_back(static_cast<double>(n));
    tab->log_norm.push_back(std::log(static_cast<double>(n)));
    tab->arg4.push_back(ang);
  }
  cached = tab;
  return cached;
}

}  // namespace

ZetaValue hecke_zeta(cplx s, int p, double cutoff, ZetaMode mode) {
  if (p == 0 && s == cplx{1.0, 0.0}) throw PoleError("hecke_zeta has a pole at s = 1, p = 0");
  if (!(cutoff >= 1.0)) throw DomainError("hecke_zeta cutoff must be >= 1");
  const auto tab = ideal_table(cutoff);
  const auto end = static_cast<std::size_t>(std::upper_bound(tab->norm.begin(), tab->norm.end(), cutoff) -
                                            tab->norm.begin());
  const double sigma = s.real(), t = s.imag();
  const double X = cutoff;
  ZetaValue out;
  cplx acc = 0.0;
  // Smoothing only helps near Re s = 1; in the absolutely convergent range the
  // kernel's poles at s = 2, 3, 4 would collide with the pole term.
  if (mode == ZetaMode::kDirect || sigma >= 1.5) {
    for (std::size_t j = 0; j < end; ++j) {
      const double ln = tab->log_norm[j];
      acc += std::polar(std::exp(-sigma * ln), p * tab->arg4[j] - t * ln);
    }
    if (p == 0) acc += (kPi / 4.0) * std::exp((1.0 - s) * std::log(X)) / (s - 1.0);
    out.tail_estimate = 2.0 * std::pow(X, 0.5 - sigma) * (1.0 + std::abs(s) / std::max(sigma - 0.5, 0.5));
  } else {
    for (std::size_t j = 0; j < end; ++j) {
      const double ln = tab->log_norm[j];
      const double u = 1.0 - tab->norm[j] / X;
      acc += std::polar(std::exp(-sigma * ln) * u * u * u, p * tab->arg4[j] - t * ln);
    }
    if (p == 0) {
      // residue of zeta(s+w) X^w 3! / (w (w+1) (w+2) (w+3)) at w = 1 - s
      const cplx w = 1.0 - s;
      acc -= (kPi / 4.0) * std::exp(w * std::log(X)) * 6.0 / (w * (w + 1.0) * (w + 2.0) * (w + 3.0));
    }
    out.tail_estimate = (1.0 + std::abs(s)) * std::pow(X, -0.5);
  }
  out.value = acc;
  return out;
}

double dedekind_zeta2_reference() {
  constexpr double catalan = 0.915965594177219015054603514932384110774;
  return kPi * kPi / 6.0 * catalan;
}

double eisenstein_weight(double t, int p, double cutoff) {
  if (p == 0 && std::abs(t) < kEisensteinPoleBand) {
    throw DomainError("eisenstein_weight: (t, 0) lies in the excluded pole band |t| < 0.05");
  }
  const ZetaValue z = hecke_zeta({1.0, 2.0 * t}, 2 * p, cutoff, ZetaMode::kSmoothed);
  return 1.0 / std::norm(z.value);
}

// ---------------------------------------------------------------------------
// Eisenstein large-sieve quantity

EisensteinGrid::EisensteinGrid(double T, double P, int panels_per_unit, int gl_order, double cutoff)
    : T_(T), P_(P) {
  if (!(T >= 0.5) || !(P >= 0.5)) throw DomainError("Eisenstein grid needs T, P >= 1/2");
  const GaussRule& rule = gauss_legendre(gl_order);
  const double half = T / 2.0;
  const int pmax = static_cast<int>(std::floor(P / 4.0));
  auto add_segment = [&](double lo, double hi, int p) {
    if (hi <= lo) return;
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) * panels_per_unit)));
    const double h = (hi - lo) / panels;
    for (int j = 0; j < panels; ++j) {
      const double mid = lo + (j + 0.5) * h;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        pts_.push_back({mid + 0.5 * h * rule.nodes[k], p, 0.0, 0.5 * h * rule.weights[k]});
      }
    }
  };
  // Nodes with t >= 0 for p = 0 and all t for p > 0; the rest follow from
  // omega(t, p) = omega(-t, -p).
  add_segment(kEisensteinPoleBand, half, 0);
  for (int p = 1; p <= pmax; ++p) add_segment(-half, half, p);
  const std::size_t base = pts_.size();
  for (auto& pt : pts_) pt.weight = eisenstein_weight(pt.t, pt.p, cutoff);
  for (std::size_t j = 0; j < base; ++j) {
    EisensteinPoint mirror = pts_[j];
    mirror.t = -mirror.t;
    mirror.p = -mirror.p;
    pts_.push_back(mirror);
  }
}

double EisensteinGrid::mass() const {
  double m = 0.0;
  for (const auto& pt : pts_) m += pt.weight * pt.dt;
  return m;
}

double EisensteinGrid::sieve_sum(const CoefficientSequence& a) const {
  // tau_{it,p}(n^2) = sum_{d | n^2} cos(t l_d + p f_d), real by the d <-> n^2/d pairing.
  struct Term {
    cplx coeff;
    std::vector<std::pair<double, double>> lf;
  };
  std::vector<Term> terms;
  for (const auto& [n, v] : a.entries()) {
    if (v == 0.0) continue;
    Term tm{v, {}};
    const GIdeal sq = n * n;
    for (const auto& d : divisors(sq)) {
      const GaussianInt e = exact_div(sq.gen(), d.gen());
      const double l = std::log(static_cast<double>(d.norm())) - std::log(static_cast<double>(e.norm()));
      const double f = 4.0 * (arg_of(d.gen()) - arg_of(e));
      tm.lf.emplace_back(l, f);
    }
    terms.push_back(std::move(tm));
  }
  if (terms.empty()) return 0.0;
  double total = 0.0;
  for (const auto& pt : pts_) {
    cplx s = 0.0;
    for (const auto& tm : terms) {
      double tau = 0.0;
      for (const auto& [l, f] : tm.lf) tau += std::cos(pt.t * l + pt.p * f);
      s += tm.coeff * tau;
    }
    total += pt.dt * pt.weight * std::norm(s);
  }
  return total;
}

double eisenstein_sieve_sum(const CoefficientSequence& a, double T, double P) {
  if (a.entries().empty()) return 0.0;
  return EisensteinGrid(T, P).sieve_sum(a);
}

// ---------------------------------------------------------------------------
// Kuznetsov geometric side

double kuznetsov_tail_bound(const GaussianInt& m, const GaussianInt& n, const TestFunction& tf,
                            std::int64_t c_norm_max) {
  if (m.is_zero() || n.is_zero()) throw DomainError("kuznetsov needs m, n != 0");
  const double X = static_cast<double>(std::max<std::int64_t>(c_norm_max, 1));
  const double M = small_z_constant(tf);
  const double mn = std::sqrt(static_cast<double>(m.norm())) * std::sqrt(static_cast<double>(n.norm()));
  // Per element c: (M |mn| / pi) tau(c) sqrt(N(m,n,c)) N(c)^{-3/2}; four elements per ideal.
  const double pref = 4.0 * M * mn / kPi;
  const double Y = 16.0 * X;
  double explicit_part = 0.0;
  for (const auto& c : ideals_in_norm_window(X, Y)) {
    const double g = static_cast<double>(gcd(m, n, c.gen()).norm());
    const double nc = static_cast<double>(c.norm());
    explicit_part += static_cast<double>(tau(c)) * std::sqrt(g) / (nc * std::sqrt(nc));
  }
  // Remainder by partial summation against D(x) = sum_{N(a) <= x} tau(a) <= c0 x (log x + 1),
  // with c0 taken from the enumerated range with a 25% margin.
  double c0 = 0.0, D = 0.0;
  for (const auto& a : ideals_up_to_norm(Y)) {
    D += static_cast<double>(tau(a));
    const double x = static_cast<double>(a.norm());
    c0 = std::max(c0, D / (x * (std::log(x) + 1.0)));
  }
  c0 *= 1.25;
  const double gmax = std::sqrt(static_cast<double>(gcd(m, n).norm()));
  const double remainder = 3.0 * c0 * (std::log(Y) + 3.0) / std::sqrt(Y);
  return pref * (explicit_part + gmax * remainder);
}

KuznetsovGeometric kuznetsov_geometric(const GaussianInt& m, const GaussianInt& n, const TestFunction& tf,
                                       std::int64_t c_norm_max, const QuadratureConfig& cfg) {
  if (m.is_zero() || n.is_zero()) throw DomainError("kuznetsov needs m, n != 0");
  KuznetsovGeometric out;
  if (m == n || m == -n) out.diagonal = plancherel_H(tf) / (8.0 * kPi * kPi * kPi);
  const cplx root = std::sqrt(cplx(static_cast<double>((m * n).re), static_cast<double>((m * n).im)));
  cplx acc = 0.0;
  if (c_norm_max >= 1) {
    // c and -c give the same term (S(m,n;-c) = S(m,n;c), H even), so each
    // ideal contributes twice its canonical generator and its i-multiple.
    for (const auto& ideal : ideals_up_to_norm(static_cast<double>(c_norm_max))) {
      for (const GaussianInt c : {ideal.gen(), ideal.gen() * kI}) {
        const cplx cz(static_cast<double>(c.re), static_cast<double>(c.im));
        const cplx z = 2.0 * kPi * root / cz;
        const cplx S = kloosterman(m, n, c);
        const cplx H = H_geometric2(z, tf, cfg).value;
        acc += 2.0 * S * H / static_cast<double>(ideal.norm());
        out.moduli += 2;
      }
    }
  }
  out.kloosterman_term = acc / (32.0 * kPi * kPi * kPi);
  out.tail_bound = kuznetsov_tail_bound(m, n, tf, c_norm_max);
  return out;
}

// ---------------------------------------------------------------------------
// CSV

void write_value_csv(std::ostream& out, const std::vector<ValueRow>& rows) {
  std::vector<std::string> last_schema;
  bool first = true;
  const auto old_prec = out.precision(17);
  for (const auto& row : rows) {
    std::vector<std::string> schema;
    for (const auto& kv : row.parameters) schema.push_back(kv.first);
    if (first || schema != last_schema) {
      out << "experiment";
      for (const auto& k : schema) out << ',' << k;
      out << ",value_re,value_im,error\n";
      last_schema = schema;
      first = false;
    }
    out << row.experiment;
    for (const auto& kv : row.parameters) out << ',' << kv.second;
    out << ',' << row.value.real() << ',' << row.value.imag() << ',' << row.error << '\n';
  }
  out.precision(old_prec);
}

}  // namespace gsieve
