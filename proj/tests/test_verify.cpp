#include <chrono>

#include "doctest.h"
#include "gsieve/verify.hpp"

using namespace gsieve;

TEST_SUITE("verify") {

TEST_CASE("record semantics") {
  SuiteResult r;
  r.threshold = 1.0;
  r.record(0.5, "a");
  r.record(1.0, "b");
  r.record(0.2, "c");
  CHECK(r.cases == 3);
  CHECK(r.passed == 2);
  CHECK(r.worst_residual == 1.0);
  CHECK(r.worst_case == "b");
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].rfind("b", 0) == 0);
  SuiteResult zero;
  zero.record(0.0, "exact");
  CHECK_FALSE(zero.ok());
  SuiteResult incl;
  incl.threshold = 2.0;
  incl.inclusive = true;
  incl.record(2.0, "edge");
  CHECK(incl.ok());
}

TEST_CASE("minimal run is fast and passes") {
  VerifyOptions o;
  o.max_norm = 2;
  const auto t0 = std::chrono::steady_clock::now();
  const auto all = verify_all(o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 1.0);
  CHECK(all.size() == std::size(kSuiteNames));
  for (const auto& s : all) {
    CHECK_MESSAGE(s.ok(), s.name);
    CHECK(s.cases > 0);
  }
}

TEST_CASE("zero tolerance fails") {
  VerifyOptions o;
  o.max_norm = 2;
  o.tolerance = 0.0;
  bool any_fail = false;
  for (const auto& s : verify_all(o)) any_fail = any_fail || !s.ok();
  CHECK(any_fail);
}

TEST_CASE("defaults: every suite but the lemma passes") {
  VerifyOptions o;
  for (const auto& s : verify_all(o)) {
    if (s.name == "lemma") {
      // only the dyadic semi-primitive complex characters with k >= 6 deviate
      CHECK(s.failed_total == 6);
      for (const auto& f : s.failures) {
        CHECK(f.find("semi-primitive") != std::string::npos);
        CHECK(f.find("complex") != std::string::npos);
        CHECK((f.rfind("c=8 ", 0) == 0 || f.rfind("c=8+8i ", 0) == 0));
      }
    } else {
      CHECK_MESSAGE(s.ok(), s.name, " ", s.worst_case);
    }
  }
}

TEST_CASE("lemma cases") {
  CHECK_THROWS_AS(lemma_cases(15), DomainError);
  const auto rows = lemma_cases({2, 1});
  CHECK(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.residual < 1e-12);
  const auto mod = prime_power_moduli(10);
  CHECK(mod == std::vector<GaussianInt>{{1, 1}, 2, {2, 1}, {1, 2}, {2, 2}, 3});
}

TEST_CASE("suite names") {
  VerifyOptions o;
  o.max_norm = 4;
  CHECK(run_suite("charsum", o).size() == 3);
  CHECK_THROWS_AS(run_suite("nope", o), DomainError);
  o.max_norm = 1;
  CHECK_THROWS_AS(run_suite("mellin", o), DomainError);
}

}
