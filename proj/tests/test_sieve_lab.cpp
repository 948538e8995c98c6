#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "gsieve/exp_sums.hpp"
#include "gsieve/sieve_lab.hpp"
#include "json.hpp"

using namespace gsieve;

TEST_SUITE("sieve-lab") {

TEST_CASE("quadratic form: independent oracle") {
  CoefficientSequence a(NormWindow::kDyadic, 4), b(NormWindow::kDyadic, 4);
  a.set(GIdeal({2, 1}), {1, 0.5});
  a.set(GIdeal({1, 2}), -0.4);
  a.set(GIdeal({2, 2}), {0, 0.25});
  b.set(GIdeal({2, 1}), {0.7, -0.2});
  b.set(GIdeal({1, 2}), {0, 0.3});
  b.set(GIdeal({2, 2}), -1.1);
  const QuadFormInput in{1, {0.3, 0.1}, 0.5, 4};
  // python double loop over brute-force Kloosterman sums
  CHECK(std::abs(quad_form(in, a, b) - cplx(1.2047137855908803, -0.5585689264183703)) < 1e-12);
  CHECK(std::abs(quad_form(in, a, b)) <= quad_form_trivial_bound(in, a, b));
}

TEST_CASE("quadratic form: small cases") {
  CoefficientSequence a(NormWindow::kDyadic, 2), b(NormWindow::kDyadic, 2);
  a.set(GIdeal(2), 1.0);
  b.set(GIdeal(2), 1.0);
  // only c = 2 in (2, 4], never coprime to mn = 4
  CHECK(quad_form({1, 1.0, 0.0, 2}, a, b) == cplx(0.0));

  CoefficientSequence x(NormWindow::kDyadic, 4), y(NormWindow::kDyadic, 4);
  x.set(GIdeal({2, 1}), {0.5, 1});
  y.set(GIdeal({2, 1}), {2, -1});
  const QuadFormInput in{1, {0.2, 0.7}, 0.3, 1};  // c = 1+i only
  const GaussianInt mn = GaussianInt{2, 1} * GaussianInt{2, 1};
  const cplx expect = cplx(0.5, 1) * std::conj(cplx(2, -1)) * std::pow(2.0, 0.3) * f_sum(mn, {1, 1}) *
                      e_additive(cplx(double(mn.re), double(mn.im)) * in.theta / cplx(1, 1));
  CHECK(std::abs(quad_form(in, x, y) - expect) < 1e-12);

  CoefficientSequence bad(NormWindow::kInitial, 4);
  CHECK_THROWS_AS(quad_form(in, bad, y), DomainError);
  CHECK_THROWS_AS(QuadFormKernel({0, 1.0, 0.0, 2}, 2, 2), DomainError);
}

TEST_CASE("quadratic form: bound and ratio") {
  const QuadFormInput in{1, 1.0, 0.0, 2};
  CoefficientSequence a(NormWindow::kDyadic, 2), b(NormWindow::kDyadic, 2);
  for (const auto& n : a.window_ideals()) a.set(n, 1.0);
  for (const auto& n : b.window_ideals()) b.set(n, 1.0);
  const auto r = quad_form_bound_ratio(in, a, b);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio >= 0.0);
  CHECK(r.rhs_bound == doctest::Approx(quad_form_bound(in, 2, 2, a.norm2(), b.norm2())));
  // gamma shift changes both sides by at most 2C / C = 2 per unit
  const QuadFormInput in1{1, 1.0, 1.0, 2};
  const auto r1 = quad_form_bound_ratio(in1, a, b);
  CHECK(r1.rhs_bound == doctest::Approx(2.0 * r.rhs_bound));
}

TEST_CASE("hybrid sieve") {
  CoefficientSequence h(NormWindow::kInitial, 5);
  h.set(GIdeal(1), 1.0);
  h.set(GIdeal({1, 1}), {-0.5, 0.25});
  h.set(GIdeal({2, 1}), 0.8);
  h.set(GIdeal({1, 2}), {0, -0.3});
  // python: explicit characters and adaptive t-quadrature
  CHECK(hybrid_lhs(5, 1.5, h) == doctest::Approx(121.0937939833522).epsilon(1e-12));
  CHECK(count_primitive_characters(5) == 8);

  CoefficientSequence one(NormWindow::kInitial, 5);
  one.set(GIdeal(1), {0.6, 0.8});
  const double T = 2.5;
  const double vol = 2 * T * (2 * std::floor(T) + 1);
  CHECK(hybrid_lhs(9, T, one) == doctest::Approx(double(count_primitive_characters(9)) * vol));
  CHECK(hybrid_lhs(9, T, CoefficientSequence(NormWindow::kInitial, 5)) == 0.0);
  CHECK_THROWS_AS(hybrid_lhs(0.5, 1, one), DomainError);
  const auto r = hybrid_ratio(4, 2, h);
  CHECK(std::isfinite(r.ratio));
  CHECK(hybrid_ratio(4, 2, h.scaled({0, 3})).ratio == doctest::Approx(r.ratio).epsilon(1e-12));
}

TEST_CASE("Eisenstein ratio") {
  const EisensteinGrid grid(2, 2);
  CoefficientSequence zero(NormWindow::kInitial, 10);
  CHECK(eisenstein_ratio(grid, zero).ratio == 0.0);
  CoefficientSequence single(NormWindow::kInitial, 10);
  single.set(GIdeal({3, 0}), 1.0);
  const auto r = eisenstein_ratio(grid, single);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  CHECK(eisenstein_ratio(grid, single.scaled(1e3)).ratio == doctest::Approx(r.ratio).epsilon(1e-12));
  CHECK(theorem1_bound(1, 1, 1, 1) == doctest::Approx((2 + 1 + 2 * 2) * 1.0));
}

TEST_CASE("trials are deterministic and ordered") {
  auto e1 = trial_engine(5, 3), e2 = trial_engine(5, 3), e3 = trial_engine(5, 4);
  CHECK(e1() == e2());
  CHECK(e1() != e3());
  const TrialPreset p{12, 9};
  ::setenv("SIEVE_LAB_THREADS", "3", 1);
  CHECK(lab_threads() == 3);
  const auto threaded = hybrid_trials(p, 2, 1.5, 10);
  ::setenv("SIEVE_LAB_THREADS", "1", 1);
  const auto serial = hybrid_trials(p, 2, 1.5, 10);
  ::unsetenv("SIEVE_LAB_THREADS");
  REQUIRE(threaded.reports.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(threaded.reports[i].ratio == serial.reports[i].ratio);
    CHECK(threaded.reports[i].parameters.back().second == double(i));
  }
  CHECK(threaded.all_finite);
  CHECK_THROWS_AS(run_trials(4, [](std::int64_t i) -> ExperimentReport {
                    if (i == 2) throw DomainError("boom");
                    return {};
                  }),
                  DomainError);
}

TEST_CASE("default trial sets") {
  const auto q = quad_form_trials({20, 1});
  CHECK(q.all_finite);
  CHECK(q.max_ratio > 0.0);
  CHECK(q.max_ratio < 1.0);
  const auto e = eisenstein_trials({10, 1}, 2, 1);
  CHECK(e.all_finite);
  CHECK(e.mean_ratio <= e.max_ratio);
}

TEST_CASE("report serialization") {
  ExperimentReport r{"hybrid", {{"C", 4}, {"T", 2}}, 1.5, 3.0, 0.5, 1, 7};
  std::ostringstream csv;
  write_reports_csv(csv, {r, r}, {{"note", "x"}});
  const std::string s = csv.str();
  CHECK(s.rfind("# gsieve-report v1\n# version = 0.1.0\n# note = x\n", 0) == 0);
  CHECK(s.find("experiment,C,T,lhs,rhs,ratio,trials,seed\nhybrid,4,2,1.5,3,0.5,1,7\nhybrid") != std::string::npos);
  std::ostringstream js;
  write_reports_json(js, {r});
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["version"] == kVersion);
  CHECK(doc["reports"][0]["parameters"]["C"] == 4.0);
  CHECK(doc["reports"][0]["ratio"] == 0.5);
}

}
