#include "gsieve/sieve_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "gsieve/characters.hpp"
#include "gsieve/exp_sums.hpp"
#include "json.hpp"

namespace gsieve {

namespace {


cplx to_c(const GaussianInt& z) { return {static_cast<double>(z.re), static_cast<double>(z.im)}; }

void require_dyadic(const CoefficientSequence& s, const char* name) {
  if (s.window() != NormWindow::kDyadic) {
    throw DomainError(std::string("quad_form: sequence ") + name + " must use a dyadic window (N, 2N]");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Quadratic form

QuadFormKernel::QuadFormKernel(const QuadFormInput& in, std::int64_t M, std::int64_t N) : in_(in) {
  if (in.d.is_zero()) throw DomainError("quad_form needs d != 0");
  if (in.theta == 0.0) throw DomainError("quad_form needs theta != 0");
  ms_ = ideals_in_norm_window(static_cast<double>(M), 2.0 * M);
  ns_ = ideals_in_norm_window(static_cast<double>(N), 2.0 * N);
  kernel_.assign(ms_.size(), std::vector<cplx>(ns_.size()));
  abs_kernel_.assign(ms_.size(), std::vector<double>(ns_.size()));
  for (const auto& cid : ideals_in_norm_window(in.C, 2.0 * in.C)) {
    const GaussianInt& c = cid.gen();
    const ModulusContext ctx(c);
    const std::vector<cplx> F = ctx.f_values();
    // domain index -> position in residues()
    std::vector<std::int64_t> pos(static_cast<std::size_t>(ctx.domain().size()), -1);
    for (std::size_t k = 0; k < ctx.residues().size(); ++k) {
      pos[static_cast<std::size_t>(ctx.domain().index(ctx.residues()[k]))] = static_cast<std::int64_t>(k);
    }
    const double weight = std::pow(static_cast<double>(cid.norm()), in.gamma);
    const cplx cz = to_c(c);
    for (std::size_t i = 0; i < ms_.size(); ++i) {
      for (std::size_t j = 0; j < ns_.size(); ++j) {
        const GaussianInt mn = ms_[i].gen() * ns_[j].gen();
        const GaussianInt w = in.d * mn;
        if (!coprime(c, w)) continue;
        const std::int64_t k = pos[static_cast<std::size_t>(ctx.domain().index(ctx.domain().reduce(w)))];
        const cplx f = F[static_cast<std::size_t>(k)];
        kernel_[i][j] += weight * f * e_additive(to_c(mn) * in.theta / cz);
        abs_kernel_[i][j] += weight * std::abs(f);
      }
    }
  }
}

cplx QuadFormKernel::evaluate(const CoefficientSequence& a, const CoefficientSequence& b) const {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < ms_.size(); ++i) {
    const cplx am = a.get(ms_[i]);
    if (am == 0.0) continue;
    cplx row = 0.0;
    for (std::size_t j = 0; j < ns_.size(); ++j) row += std::conj(b.get(ns_[j])) * kernel_[i][j];
    acc += am * row;
  }
  return acc;
}

double QuadFormKernel::trivial_bound(const CoefficientSequence& a, const CoefficientSequence& b) const {
  double frob = 0.0;
  for (const auto& row : abs_kernel_) {
    for (double v : row) frob += v * v;
  }
  return a.norm2() * b.norm2() * std::sqrt(frob);
}

cplx quad_form(const QuadFormInput& in, const CoefficientSequence& a, const CoefficientSequence& b) {
  require_dyadic(a, "a");
  require_dyadic(b, "b");
  return QuadFormKernel(in, a.N(), b.N()).evaluate(a, b);
}

double quad_form_bound(const QuadFormInput& in, double M, double N, double norm_a, double norm_b) {
  const double C = in.C;
  const double K = C + std::sqrt(C * M * N) * std::abs(in.theta);
  return std::pow(C, 1.0 + in.gamma) * (K + std::sqrt(M) + std::sqrt(N) + C * std::sqrt(M * N) / K) *
         std::pow(K, kEpsilon) * norm_a * norm_b;
}

double quad_form_trivial_bound(const QuadFormInput& in, const CoefficientSequence& a, const CoefficientSequence& b) {
  require_dyadic(a, "a");
  require_dyadic(b, "b");
  return QuadFormKernel(in, a.N(), b.N()).trivial_bound(a, b);
}

namespace {

ExperimentReport quad_report(const QuadFormInput& in, double M, double N, cplx value, double na, double nb) {
  ExperimentReport r;
  r.experiment = "quadform";
  r.parameters = {{"C", in.C},           {"M", M},
                  {"N", N},              {"gamma", in.gamma},
                  {"d_re", double(in.d.re)}, {"d_im", double(in.d.im)},
                  {"theta_re", in.theta.real()}, {"theta_im", in.theta.imag()}};
  r.lhs = std::abs(value);
  r.rhs_bound = quad_form_bound(in, M, N, na, nb);
  r.ratio = r.lhs / r.rhs_bound;
  return r;
}

}  // namespace

ExperimentReport quad_form_bound_ratio(const QuadFormInput& in, const CoefficientSequence& a,
                                       const CoefficientSequence& b) {
  const cplx v = quad_form(in, a, b);
  return quad_report(in, double(a.N()), double(b.N()), v, a.norm2(), b.norm2());
}

// ---------------------------------------------------------------------------
// Hybrid large sieve

namespace {

std::vector<DirichletChar> primitive_characters_up_to(double C) {
  std::vector<DirichletChar> out;
  for (const auto& c : ideals_up_to_norm(C)) {
    const auto group = CharGroup::make(c.gen());
    for (const auto& chi : group->characters()) {
      if (conductor(chi) == chi.modulus()) out.push_back(chi);
    }
  }
  return out;
}

}  // namespace

std::int64_t count_primitive_characters(double C) {
  return static_cast<std::int64_t>(primitive_characters_up_to(C).size());
}

double hybrid_lhs(double C, double T, const CoefficientSequence& a) {
  if (!(C >= 1.0) || !(T >= 1.0)) throw DomainError("hybrid_lhs needs C, T >= 1");
  struct Entry {
    GaussianInt n;
    cplx a;
    double log_abs;
    double arg;
  };
  std::vector<Entry> es;
  for (const auto& [n, v] : a.entries()) {
    if (v == 0.0) continue;
    const GaussianInt& g = n.gen();
    es.push_back({g, v, 0.5 * std::log(static_cast<double>(n.norm())),
                  std::atan2(static_cast<double>(g.im), static_cast<double>(g.re))});
  }
  if (es.empty()) return 0.0;
  const std::size_t S = es.size();
  // Exact t-kernel int_{-T}^{T} e^{it(l_i - l_j)} dt.
  std::vector<double> K(S * S);
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 0; j < S; ++j) {
      const double d = es[i].log_abs - es[j].log_abs;
      K[i * S + j] = std::abs(d) < 1e-300 ? 2.0 * T : 2.0 * std::sin(T * d) / d;
    }
  }
  const int pmax = static_cast<int>(std::floor(T));
  double total = 0.0;
  std::vector<cplx> b(S);
  for (const auto& chi : primitive_characters_up_to(C)) {
    std::vector<cplx> ca(S);
    for (std::size_t i = 0; i < S; ++i) ca[i] = es[i].a * chi(es[i].n);
    for (int p = -pmax; p <= pmax; ++p) {
      for (std::size_t i = 0; i < S; ++i) b[i] = ca[i] * std::polar(1.0, p * es[i].arg);
      double q = 0.0;
      for (std::size_t i = 0; i < S; ++i) {
        cplx row = 0.0;
        for (std::size_t j = 0; j < S; ++j) row += std::conj(b[j]) * K[i * S + j];
        q += (b[i] * row).real();
      }
      total += q;
    }
  }
  return total;
}

double hybrid_bound(double C, double T, double N, double norm_a_sq) {
  return (C * C * T * T + N) * std::pow(C * T, kEpsilon) * norm_a_sq;
}

ExperimentReport hybrid_ratio(double C, double T, const CoefficientSequence& a) {
  ExperimentReport r;
  r.experiment = "hybrid";
  r.parameters = {{"C", C}, {"T", T}, {"N", double(a.N())}};
  r.lhs = hybrid_lhs(C, T, a);
  r.rhs_bound = hybrid_bound(C, T, double(a.N()), a.norm2_sq());
  r.ratio = r.lhs / r.rhs_bound;
  return r;
}

// ---------------------------------------------------------------------------
// Eisenstein side

double theorem1_bound(double T, double P, double N, double norm_a_sq) {
  const double s = T * T + P * P;
  const double main = T * P * s + T * P * N + (s / (T * P)) * (1.0 / (T * T) + 1.0 / (P * P)) * N * N;
  return main * std::pow(T * P * N, kEpsilon) * norm_a_sq;
}

ExperimentReport eisenstein_ratio(const EisensteinGrid& grid, const CoefficientSequence& a) {
  ExperimentReport r;
  r.experiment = "eisenstein";
  r.parameters = {{"T", grid.T()}, {"P", grid.P()}, {"N", double(a.N())}};
  r.lhs = grid.sieve_sum(a);
  r.rhs_bound = theorem1_bound(grid.T(), grid.P(), double(a.N()), a.norm2_sq());
  r.ratio = r.lhs == 0.0 ? 0.0 : r.lhs / r.rhs_bound;
  return r;
}

ExperimentReport eisenstein_ratio(double T, double P, const CoefficientSequence& a) {
  return eisenstein_ratio(EisensteinGrid(T, P), a);
}

// ---------------------------------------------------------------------------
// Trials

std::mt19937_64 trial_engine(std::uint64_t seed, std::int64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
  return std::mt19937_64(seq);
}

CoefficientSequence random_sign_sequence(NormWindow window, std::int64_t N, std::mt19937_64& rng) {
  CoefficientSequence a(window, N);
  for (const auto& n : a.window_ideals()) a.set(n, (rng() >> 63) ? 1.0 : -1.0);
  return a;
}

unsigned lab_threads() {
  if (const char* env = std::getenv("SIEVE_LAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ExperimentReport> run_trials(std::int64_t count,
                                         const std::function<ExperimentReport(std::int64_t)>& job) {
  std::vector<ExperimentReport> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  const unsigned workers = std::min<unsigned>(lab_threads(), static_cast<unsigned>(std::max<std::int64_t>(count, 1)));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[static_cast<std::size_t>(i)] = job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(fail_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

TrialSummary summarize(std::string experiment, std::vector<ExperimentReport> reports) {
  TrialSummary s;
  s.experiment = std::move(experiment);
  double sum = 0.0;
  for (const auto& r : reports) {
    if (!std::isfinite(r.ratio)) s.all_finite = false;
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    sum += r.ratio;
  }
  s.mean_ratio = reports.empty() ? 0.0 : sum / static_cast<double>(reports.size());
  s.reports = std::move(reports);
  return s;
}

TrialSummary hybrid_trials(const TrialPreset& preset, double C, double T, std::int64_t N) {
  auto reports = run_trials(preset.trials, [&](std::int64_t i) {
    auto rng = trial_engine(preset.seed, i);
    const auto a = random_sign_sequence(NormWindow::kInitial, N, rng);
    ExperimentReport r = hybrid_ratio(C, T, a);
    r.seed = preset.seed;
    r.parameters.emplace_back("trial", double(i));
    return r;
  });
  return summarize("hybrid", std::move(reports));
}

TrialSummary quad_form_trials(const TrialPreset& preset, const QuadFormInput& in, std::int64_t M, std::int64_t N) {
  const QuadFormKernel kernel(in, M, N);
  auto reports = run_trials(preset.trials, [&](std::int64_t i) {
    auto rng = trial_engine(preset.seed, i);
    const auto a = random_sign_sequence(NormWindow::kDyadic, M, rng);
    const auto b = random_sign_sequence(NormWindow::kDyadic, N, rng);
    ExperimentReport r = quad_report(in, double(M), double(N), kernel.evaluate(a, b), a.norm2(), b.norm2());
    r.seed = preset.seed;
    r.parameters.emplace_back("trial", double(i));
    return r;
  });
  return summarize("quadform", std::move(reports));
}

TrialSummary eisenstein_trials(const TrialPreset& preset, double T, double P, std::int64_t N) {
  const EisensteinGrid grid(T, P);
  auto reports = run_trials(preset.trials, [&](std::int64_t i) {
    auto rng = trial_engine(preset.seed, i);
    const auto a = random_sign_sequence(NormWindow::kInitial, N, rng);
    ExperimentReport r = eisenstein_ratio(grid, a);
    r.seed = preset.seed;
    r.parameters.emplace_back("trial", double(i));
    return r;
  });
  return summarize("eisenstein", std::move(reports));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<ExperimentReport>& reports,
                       const std::vector<std::pair<std::string, std::string>>& metadata) {
  out << "# gsieve-report v1\n";
  out << "# version = " << kVersion << "\n";
  for (const auto& [k, v] : metadata) out << "# " << k << " = " << v << "\n";
  std::vector<std::string> last;
  bool first = true;
  for (const auto& r : reports) {
    std::vector<std::string> schema;
    for (const auto& kv : r.parameters) schema.push_back(kv.first);
    if (first || schema != last) {
      out << "experiment";
      for (const auto& k : schema) out << ',' << k;
      out << ",lhs,rhs,ratio,trials,seed\n";
      last = schema;
      first = false;
    }
    out << r.experiment;
    for (const auto& kv : r.parameters) out << ',' << fmt_double(kv.second);
    out << ',' << fmt_double(r.lhs) << ',' << fmt_double(r.rhs_bound) << ',' << fmt_double(r.ratio) << ','
        << r.trials << ',' << r.seed << '\n';
  }
}

void write_reports_json(std::ostream& out, const std::vector<ExperimentReport>& reports,
                        const std::vector<std::pair<std::string, std::string>>& metadata) {
  nlohmann::ordered_json doc;
  doc["format"] = "gsieve-report";
  doc["schema_version"] = 1;
  doc["version"] = kVersion;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  doc["config"] = meta;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json row;
    row["experiment"] = r.experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    row["parameters"] = params;
    row["lhs"] = r.lhs;
    row["rhs"] = r.rhs_bound;
    row["ratio"] = r.ratio;
    row["trials"] = r.trials;
    row["seed"] = r.seed;
    rows.push_back(row);
  }
  doc["reports"] = rows;
  out << doc.dump(2) << "\n";
}

}  // namespace gsieve
