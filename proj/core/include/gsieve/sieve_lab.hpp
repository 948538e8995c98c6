#pragma once

// Brute-force sieve experiments: the quadratic form of Kloosterman-type sums,
// the hybrid large sieve over characters and Grossencharacters, and the
// Eisenstein side, each reported as a ratio against its stated bound.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gsieve/spectral.hpp"

namespace gsieve {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr double kEpsilon = 0.1;  // exponent used for every (.)^eps factor

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, double>> parameters;
  double lhs = 0.0;
  double rhs_bound = 0.0;
  double ratio = 0.0;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Quadratic form

struct QuadFormInput {
  GaussianInt d{1};
  cplx theta{1.0, 0.0};
  double gamma = 0.0;
  double C = 2.0;
};

/// sum_m sum_n a_m conj(b_n) sum_{C < N(c) <= 2C, (c, dmn) = 1} N(c)^gamma F(dmn; c) e[mn theta / c]
/// over canonical generators of m, n and c.  a, b must use dyadic windows.
cplx quad_form(const QuadFormInput& in, const CoefficientSequence& a, const CoefficientSequence& b);

/// C^{1+gamma} (K + sqrt M + sqrt N + C sqrt(MN) / K) K^eps ||a|| ||b||, K = C + sqrt(CMN) |theta|.
double quad_form_bound(const QuadFormInput& in, double M, double N, double norm_a, double norm_b);

/// ||a|| ||b|| (sum_{m,n} (sum_c N(c)^gamma |F(dmn; c)|)^2)^{1/2}: Cauchy-Schwarz with the
/// triangle inequality inside, so |quad_form| never exceeds it.
double quad_form_trivial_bound(const QuadFormInput& in, const CoefficientSequence& a, const CoefficientSequence& b);

ExperimentReport quad_form_bound_ratio(const QuadFormInput& in, const CoefficientSequence& a,
                                       const CoefficientSequence& b);

/// Precomputed F(.; c) tables for C < N(c) <= 2C, reused across trials.
class QuadFormKernel {
 public:
  QuadFormKernel(const QuadFormInput& in, std::int64_t M, std::int64_t N);
  cplx evaluate(const CoefficientSequence& a, const CoefficientSequence& b) const;
  double trivial_bound(const CoefficientSequence& a, const CoefficientSequence& b) const;
  const QuadFormInput& input() const { return in_; }

 private:
  QuadFormInput in_;
  std::vector<GIdeal> ms_, ns_;
  // kernel_[i][j] = sum_c N(c)^gamma F(d m_i n_j; c) e[m_i n_j theta / c]
  std::vector<std::vector<cplx>> kernel_;
  std::vector<std::vector<double>> abs_kernel_;
};

// ---------------------------------------------------------------------------
// Hybrid large sieve

/// sum_{N(c) <= C} sum*_chi int int_{A(T,T)} |sum_n a_n chi(n) lambda_{it,p}(n)|^2, with the
/// t-integral done exactly: int_{-T}^{T} e^{it D} dt = 2 sin(T D) / D.
double hybrid_lhs(double C, double T, const CoefficientSequence& a);
/// (C^2 T^2 + N) (C T)^eps ||a||^2.
double hybrid_bound(double C, double T, double N, double norm_a_sq);
ExperimentReport hybrid_ratio(double C, double T, const CoefficientSequence& a);

/// Number of primitive characters modulo every c with N(c) <= C (the modulus (1) included).
std::int64_t count_primitive_characters(double C);

// ---------------------------------------------------------------------------
// Eisenstein side of the spectral large sieve

/// {TP(T^2+P^2) + TPN + ((T^2+P^2)/(TP))(1/T^2 + 1/P^2) N^2} (TPN)^eps ||a||^2.
double theorem1_bound(double T, double P, double N, double norm_a_sq);
ExperimentReport eisenstein_ratio(double T, double P, const CoefficientSequence& a);
ExperimentReport eisenstein_ratio(const EisensteinGrid& grid, const CoefficientSequence& a);

// ---------------------------------------------------------------------------
// Trials

/// Independent engine per trial: mt19937_64 seeded from (seed, index).
std::mt19937_64 trial_engine(std::uint64_t seed, std::int64_t index);

/// +-1 on every ideal of the window.
CoefficientSequence random_sign_sequence(NormWindow window, std::int64_t N, std::mt19937_64& rng);

/// Worker count: SIEVE_LAB_THREADS if set (>= 1), else hardware concurrency.
unsigned lab_threads();

/// Runs job(i) for i in [0, count) on up to lab_threads() workers and returns
/// the results in index order.
std::vector<ExperimentReport> run_trials(std::int64_t count,
                                         const std::function<ExperimentReport(std::int64_t)>& job);

struct TrialSummary {
  std::string experiment;
  std::vector<ExperimentReport> reports;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool all_finite = true;
};

TrialSummary summarize(std::string experiment, std::vector<ExperimentReport> reports);

struct TrialPreset {
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
};

/// Default randomized trial sets.
TrialSummary hybrid_trials(const TrialPreset& preset, double C = 4.0, double T = 2.0, std::int64_t N = 20);
TrialSummary quad_form_trials(const TrialPreset& preset, const QuadFormInput& in = {{1}, {0.37, 0.21}, 0.0, 8.0},
                              std::int64_t M = 8, std::int64_t N = 8);
TrialSummary eisenstein_trials(const TrialPreset& preset, double T, double P, std::int64_t N = 30);

// ---------------------------------------------------------------------------
// Serialization

/// "# gsieve-report v1" header, "# key = value" metadata lines, then
/// experiment,<parameters>,lhs,rhs,ratio,trials,seed.
void write_reports_csv(std::ostream& out, const std::vector<ExperimentReport>& reports,
                       const std::vector<std::pair<std::string, std::string>>& metadata = {});
void write_reports_json(std::ostream& out, const std::vector<ExperimentReport>& reports,
                        const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace gsieve
