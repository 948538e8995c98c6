#pragma once

// Identity suites: each runs an exact or cross-representation check over a
// finite grid and reports the worst residual against a threshold.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsieve/characters.hpp"
#include "gsieve/quadrature.hpp"

namespace gsieve {

struct SuiteResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t passed = 0;
  double worst_residual = 0.0;
  std::string worst_case;
  double threshold = 0.0;
  bool inclusive = false;
  std::int64_t failed_total = 0;
  std::vector<std::string> failures;  // first few failing cases with their inputs

  bool ok() const { return passed == cases; }
  // residual < threshold (strict unless inclusive, so a zero tolerance always fails)
  void record(double residual, const std::string& what);
};

// ---------------------------------------------------------------------------
// Lemma 4.1 case table

struct LemmaCase {
  GaussianInt modulus;
  std::int64_t index = 0;  // CharGroup::character(index)
  CharClass kind = CharClass::kTrivial;
  int k = 0;       // v_p(c)
  int k_star = 0;  // v_p(conductor)
  bool real = false;
  double hat_abs = 0.0;
  LemmaPrediction predicted;
  double residual = 0.0;  // |hat| - predicted, or excess over the bound (0 if within)

  std::string describe() const;
};

/// One row per character modulo a prime power c.
std::vector<LemmaCase> lemma_cases(const GaussianInt& c);
/// Canonical generators of the prime-power ideals with norm <= bound.
std::vector<GaussianInt> prime_power_moduli(double bound);

// ---------------------------------------------------------------------------
// Suites

SuiteResult mellin_suite(std::int64_t max_norm, double threshold = 1e-9);
SuiteResult parseval_suite(std::int64_t max_norm, double threshold = 1e-9);
SuiteResult lemma_suite(std::int64_t max_norm, double threshold = 1e-9);
/// `pairs` random coprime moduli (c1, c2), N(c1 c2) <= max_product.
SuiteResult twisted_suite(std::int64_t pairs, std::int64_t max_product, std::uint64_t seed,
                          double threshold = 1e-9);
/// N(m), N(n) <= mn_max (canonical generators), N(c) <= c_max.
SuiteResult selberg_suite(std::int64_t mn_max, std::int64_t c_max, double threshold = 1e-9);
/// Every w (all associates), c, g with g | w and N(w c g) <= max_product.
SuiteResult shift_vanishing_suite(std::int64_t max_product, double threshold = 1e-9);
/// Weil ratio of S(m, n; c) and S(m^2, n^2; c) over the Selberg grid; threshold is the constant.
SuiteResult weil_suite(std::int64_t mn_max, std::int64_t c_max, double constant = 2.0);

struct BesselGrid {
  std::vector<double> moduli;
  std::vector<double> args;
  std::vector<std::pair<double, double>> tp;  // (T, P)

  /// |z| in {0.5, 1, 2, 4} x arg in {0, pi/4, pi/2} x T, P in {1, 2, 4}.
  static BesselGrid full();
  static BesselGrid smoke();
};

/// Pairwise relative deviation between H_spectral, H_geometric0, H_geometric2.
SuiteResult bessel_suite(const BesselGrid& grid, const QuadratureConfig& cfg = {}, double threshold = 1e-6);
/// Closed form vs quadrature for T, P in {1, 2, 4}, relative.
SuiteResult plancherel_suite(const QuadratureConfig& cfg = {}, double threshold = 1e-8);

struct VerifyOptions {
  std::int64_t max_norm = 200;
  std::optional<double> tolerance;  // replaces every residual threshold (not the Weil constant)
  std::uint64_t seed = 1;
  QuadratureConfig quadrature;
};

inline constexpr const char* kSuiteNames[] = {"mellin", "parseval", "lemma",  "twisted",   "selberg",
                                              "shift",  "weil",     "bessel", "plancherel"};

/// Runs one named suite (or the group "charsum" = mellin, parseval, twisted) with
/// sizes derived from max_norm.  DomainError for an unknown name.
std::vector<SuiteResult> run_suite(const std::string& name, const VerifyOptions& opts);
std::vector<SuiteResult> verify_all(const VerifyOptions& opts);

}  // namespace gsieve
