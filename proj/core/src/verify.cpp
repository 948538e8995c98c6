#include "gsieve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gsieve/archimedean.hpp"
#include "gsieve/exp_sums.hpp"

namespace gsieve {

namespace {

constexpr std::size_t kListedFailures = 8;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(cplx v) {
  std::ostringstream os;
  os.precision(10);
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

SuiteResult start(std::string name, double threshold) {
  SuiteResult r;
  r.name = std::move(name);
  r.threshold = threshold;
  return r;
}

}  // namespace

void SuiteResult::record(double residual, const std::string& what) {
  ++cases;
  // NaN counts as worst
  if (std::isnan(residual) || residual > worst_residual || cases == 1) {
    worst_residual = std::isnan(residual) ? INFINITY : residual;
    worst_case = what;
  }
  if (residual < threshold || (inclusive && residual == threshold)) {
    ++passed;
  } else {
    ++failed_total;
    if (failures.size() < kListedFailures) failures.push_back(what + " residual=" + fmt(residual));
  }
}

// ---------------------------------------------------------------------------
// Lemma cases

std::string LemmaCase::describe() const {
  std::ostringstream os;
  os << "c=" << modulus << " chi#" << index << " " << to_string(kind) << " k=" << k << " k*=" << k_star
     << (real ? " real" : " complex") << " |F^|=" << fmt(hat_abs) << (predicted.is_bound ? " bound=" : " predicted=")
     << fmt(predicted.value);
  return os.str();
}

std::vector<LemmaCase> lemma_cases(const GaussianInt& c) {
  const auto fac = factor(c);
  if (fac.factors.size() != 1) throw DomainError("lemma_cases needs a prime-power modulus");
  const GIdeal p = fac.factors[0].prime;
  const MellinTransform mt(canonical_associate(c));
  const auto hats = mt.all_hats();
  std::vector<LemmaCase> out;
  out.reserve(hats.size());
  for (std::int64_t i = 0; i < mt.group().size(); ++i) {
    const auto chi = mt.group().character(i);
    const CharInfo info = classify(chi);
    LemmaCase lc;
    lc.modulus = mt.modulus();
    lc.index = i;
    lc.kind = info.kind;
    lc.k = fac.factors[0].exponent;
    lc.k_star = valuation(info.conductor, p);
    lc.real = chi.is_real();
    lc.hat_abs = std::abs(hats[static_cast<std::size_t>(i)]);
    lc.predicted = lemma_predicted_modulus(chi);
    lc.residual = lc.predicted.is_bound ? std::max(0.0, lc.hat_abs - lc.predicted.value)
                                        : std::abs(lc.hat_abs - lc.predicted.value);
    out.push_back(lc);
  }
  return out;
}

std::vector<GaussianInt> prime_power_moduli(double bound) {
  std::vector<GaussianInt> out;
  for (const auto& c : ideals_up_to_norm(bound)) {
    if (!c.is_unit() && factor(c).factors.size() == 1) out.push_back(c.gen());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite Fourier analysis on (O/c)^x

SuiteResult mellin_suite(std::int64_t max_norm, double threshold) {
  SuiteResult r = start("mellin", threshold);
  for (const auto& cid : ideals_up_to_norm(static_cast<double>(max_norm))) {
    const MellinTransform mt(cid.gen());
    const auto hats = mt.all_hats();
    const auto& g = mt.group();
    const auto& roots = g.roots();
    const auto& F = mt.f_values();
    std::vector<cplx> rec(F.size());
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const auto chi = g.character(k);
      const cplx h = hats[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < F.size(); ++j) rec[j] += h * roots[chi.phase_index(j)];
    }
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t j = 0; j < F.size(); ++j) {
      const double d = std::abs(rec[j] - F[j]);
      if (d > worst) worst = d, at = j;
    }
    r.record(worst, "c=" + to_string(cid.gen()) + " alpha=" + to_string(g.residues()[at]) + " F=" + fmt(F[at]));
  }
  return r;
}

SuiteResult parseval_suite(std::int64_t max_norm, double threshold) {
  SuiteResult r = start("parseval", threshold);
  for (const auto& cid : ideals_up_to_norm(static_cast<double>(max_norm))) {
    const MellinTransform mt(cid.gen());
    double lhs = 0.0, rhs = 0.0;
    for (const cplx h : mt.all_hats()) lhs += std::norm(h);
    for (const cplx f : mt.f_values()) rhs += std::norm(f);
    rhs /= static_cast<double>(mt.f_values().size());
    r.record(std::abs(lhs - rhs) / std::max(1.0, rhs),
             "c=" + to_string(cid.gen()) + " sum|F^|^2=" + fmt(lhs) + " mean|F|^2=" + fmt(rhs));
  }
  return r;
}

SuiteResult lemma_suite(std::int64_t max_norm, double threshold) {
  SuiteResult r = start("lemma", threshold);
  for (const auto& c : prime_power_moduli(static_cast<double>(max_norm))) {
    for (const auto& lc : lemma_cases(c)) r.record(lc.residual, lc.describe());
  }
  return r;
}

SuiteResult twisted_suite(std::int64_t pairs, std::int64_t max_product, std::uint64_t seed, double threshold) {
  SuiteResult r = start("twisted", threshold);
  const auto all = ideals_up_to_norm(static_cast<double>(max_product));
  const double small = std::sqrt(static_cast<double>(max_product));
  std::vector<GIdeal> firsts;
  for (const auto& c : all) {
    if (static_cast<double>(c.norm()) <= small) firsts.push_back(c);
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  for (std::int64_t t = 0; t < pairs; ++t) {
    const GIdeal c1 = firsts[pick(firsts.size())];
    std::vector<GIdeal> seconds;
    for (const auto& c : all) {
      if (c1.norm() * c.norm() <= max_product && coprime(c1.gen(), c.gen())) seconds.push_back(c);
    }
    GIdeal a = c1, b = seconds[pick(seconds.size())];
    if (rng() & 1) std::swap(a, b);
    const auto g1 = char_group(a.gen()), g2 = char_group(b.gen());
    const auto i1 = static_cast<std::int64_t>(pick(static_cast<std::size_t>(g1->size())));
    const auto i2 = static_cast<std::int64_t>(pick(static_cast<std::size_t>(g2->size())));
    const cplx res = twisted_mult_residual(g1->character(i1), g2->character(i2));
    r.record(std::abs(res), "c1=" + to_string(a.gen()) + " chi1#" + std::to_string(i1) + " c2=" + to_string(b.gen()) +
                                " chi2#" + std::to_string(i2));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Kloosterman identities

SuiteResult selberg_suite(std::int64_t mn_max, std::int64_t c_max, double threshold) {
  SuiteResult r = start("selberg", threshold);
  const auto mn = ideals_up_to_norm(static_cast<double>(mn_max));
  const auto cs = ideals_up_to_norm(static_cast<double>(c_max));
  for (const auto& m : mn) {
    for (const auto& n : mn) {
      for (const auto& c : cs) {
        const cplx res = selberg_residual(m.gen(), n.gen(), c.gen());
        r.record(std::abs(res), "m=" + to_string(m.gen()) + " n=" + to_string(n.gen()) + " c=" + to_string(c.gen()));
      }
    }
  }
  return r;
}

SuiteResult shift_vanishing_suite(std::int64_t max_product, double threshold) {
  SuiteResult r = start("shift", threshold);
  const auto ids = ideals_up_to_norm(static_cast<double>(max_product));
  for (const auto& g : ids) {
    for (const auto& c : ids) {
      if (g.norm() * c.norm() > max_product) break;
      for (const auto& h : ids) {
        const std::int64_t wn = g.norm() * h.norm();
        if (wn * g.norm() * c.norm() > max_product) break;
        for (const auto& u : kUnits) {
          const GaussianInt w = u * g.gen() * h.gen();
          const cplx res = shift_vanishing_residual(w, c.gen(), g.gen());
          r.record(std::abs(res), "w=" + to_string(w) + " c=" + to_string(c.gen()) + " g=" + to_string(g.gen()));
        }
      }
    }
  }
  return r;
}

SuiteResult weil_suite(std::int64_t mn_max, std::int64_t c_max, double constant) {
  SuiteResult r = start("weil", constant);
  r.inclusive = true;  // a bound, so equality passes
  const auto mn = ideals_up_to_norm(static_cast<double>(mn_max));
  const auto cs = ideals_up_to_norm(static_cast<double>(c_max));
  for (const auto& m : mn) {
    for (const auto& n : mn) {
      for (const auto& c : cs) {
        const GaussianInt a = m.gen(), b = n.gen();
        const std::string tag = " c=" + to_string(c.gen());
        const double w1 = weil_ratio(a, b, c.gen());
        r.record(w1, "S(" + to_string(a) + "," + to_string(b) + ")" + tag + " ratio=" + fmt(w1));
        const double w2 = weil_ratio(a * a, b * b, c.gen());
        r.record(w2, "S(" + to_string(a * a) + "," + to_string(b * b) + ")" + tag + " ratio=" + fmt(w2));
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Archimedean

BesselGrid BesselGrid::full() {
  return {{0.5, 1.0, 2.0, 4.0},
          {0.0, std::numbers::pi / 4, std::numbers::pi / 2},
          {{1, 1}, {1, 2}, {1, 4}, {2, 1}, {2, 2}, {2, 4}, {4, 1}, {4, 2}, {4, 4}}};
}

BesselGrid BesselGrid::smoke() { return {{1.0}, {std::numbers::pi / 4}, {{2, 2}}}; }

SuiteResult bessel_suite(const BesselGrid& grid, const QuadratureConfig& cfg, double threshold) {
  SuiteResult r = start("bessel", threshold);
  for (const auto& [T, P] : grid.tp) {
    const TestFunction tf(T, P);
    for (double mod : grid.moduli) {
      for (double arg : grid.args) {
        const cplx z = std::polar(mod, arg);
        const cplx hs = H_spectral(z, tf, cfg).value;
        const auto geo = H_geometric_both(z, tf, cfg);
        const cplx h0 = geo.form0.value, h2 = geo.form2.value;
        auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
        const double dev = std::max({rel(hs, h0), rel(hs, h2), rel(h0, h2)});
        r.record(dev, "T=" + fmt(T) + " P=" + fmt(P) + " z=" + fmt(z) + " spectral=" + fmt(hs) + " geo0=" + fmt(h0) +
                          " geo2=" + fmt(h2));
      }
    }
  }
  return r;
}

SuiteResult plancherel_suite(const QuadratureConfig& cfg, double threshold) {
  SuiteResult r = start("plancherel", threshold);
  for (double T : {1.0, 2.0, 4.0}) {
    for (double P : {1.0, 2.0, 4.0}) {
      const TestFunction tf(T, P);
      const double closed = plancherel_H(tf);
      const double quad = plancherel_H_quadrature(tf, cfg).value;
      r.record(std::abs(closed - quad) / std::abs(closed),
               "T=" + fmt(T) + " P=" + fmt(P) + " closed=" + fmt(closed) + " quadrature=" + fmt(quad));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& opts) {
  if (opts.max_norm < 2) throw DomainError("verify needs max_norm >= 2");
  const std::int64_t M = opts.max_norm;
  auto th = [&](double d) { return opts.tolerance.value_or(d); };
  if (name == "charsum") {
    return {mellin_suite(M, th(1e-9)), parseval_suite(M, th(1e-9)), twisted_suite(200, M, opts.seed, th(1e-9))};
  }
  if (name == "mellin") return {mellin_suite(M, th(1e-9))};
  if (name == "parseval") return {parseval_suite(M, th(1e-9))};
  if (name == "lemma") return {lemma_suite(M, th(1e-9))};
  if (name == "twisted") return {twisted_suite(200, M, opts.seed, th(1e-9))};
  if (name == "selberg") return {selberg_suite(std::min<std::int64_t>(10, M), M, th(1e-9))};
  if (name == "shift") return {shift_vanishing_suite(5 * M / 2, th(1e-9))};
  if (name == "weil") return {weil_suite(std::min<std::int64_t>(10, M), M)};
  if (name == "bessel") {
    return {bessel_suite(M >= 400 ? BesselGrid::full() : BesselGrid::smoke(), opts.quadrature, th(1e-6))};
  }
  if (name == "plancherel") return {plancherel_suite(opts.quadrature, th(1e-8))};
  throw DomainError("unknown suite: " + name);
}

std::vector<SuiteResult> verify_all(const VerifyOptions& opts) {
  std::vector<SuiteResult> out;
  for (const char* n : kSuiteNames) {
    for (auto& s : run_suite(n, opts)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gsieve
