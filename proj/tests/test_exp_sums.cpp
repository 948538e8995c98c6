#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gsieve/exp_sums.hpp"

using namespace gsieve;

namespace {
constexpr double kPi = std::numbers::pi;
bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) < tol; }

// S(m, n; c) straight from the definition with mod_inverse and e_additive.
cplx naive_kloosterman(const GaussianInt& m, const GaussianInt& n, const GaussianInt& c) {
  const cplx cc(double(c.re), double(c.im));
  cplx s = 0.0;
  for (const auto& a : unit_residues(c)) {
    const GaussianInt ai = mod_inverse(a, c);
    const GaussianInt x = m * a + n * ai;
    s += e_additive(cplx(double(x.re), double(x.im)) / cc);
  }
  return s;
}
}  // namespace

TEST_SUITE("exp-sums") {

TEST_CASE("additive character") {
  CHECK(close(e_additive(0.0), 1.0));
  CHECK(close(e_additive({1, -1}), 1.0));
  CHECK(close(e_additive({1.5, -1.5}), -1.0));
  CHECK(close(e_additive({0.25, 9.0}), {0.0, 1.0}));
}

TEST_CASE("kloosterman examples") {
  CHECK(close(kloosterman(1, 1, {1, 1}), 1.0));
  CHECK(close(kloosterman(1, 2, {1, 1}), -1.0));
  CHECK(close(kloosterman(1, 1, {2, 1}), 2.0 + 2.0 * std::cos(2 * kPi / 5)));
  CHECK(kloosterman(1, 1, {2, 1}).real() == doctest::Approx(2.618034).epsilon(1e-6));
  CHECK(close(kloosterman({3, 2}, {5, -1}, {0, 1}), 1.0));
  CHECK_THROWS_AS(kloosterman(1, 1, 0), DomainError);
}

TEST_CASE("kloosterman against the definition") {
  for (const GaussianInt c : {GaussianInt{3}, GaussianInt{2, 2}, GaussianInt{4, 1}, GaussianInt{-3, 5}, GaussianInt{6}}) {
    for (const GaussianInt m : {GaussianInt{1}, GaussianInt{2, 1}, GaussianInt{0, 3}}) {
      for (const GaussianInt n : {GaussianInt{1}, GaussianInt{1, -1}, GaussianInt{4}}) {
        CHECK(close(kloosterman(m, n, c), naive_kloosterman(m, n, c), 1e-11));
      }
    }
  }
}

TEST_CASE("kloosterman symmetries") {
  const GaussianInt c{5, 4}, m{2, 1}, n{3, -2};
  CHECK(close(kloosterman(m, n, c), kloosterman(n, m, c), 1e-11));
  for (const auto& u : kUnits) CHECK(close(kloosterman(u * m, u.conj() * n, c), kloosterman(m, n, c), 1e-11));
  // S(m, n; c) only depends on m, n mod c
  CHECK(close(kloosterman(m + 3 * c, n - c, c), kloosterman(m, n, c), 1e-11));
  // conjugation
  CHECK(close(std::conj(kloosterman(m, n, c)), kloosterman(m.conj(), n.conj(), c.conj()), 1e-11));
}

TEST_CASE("F(w; c)") {
  CHECK(close(f_sum(1, {1, 1}), 1.0));
  CHECK(close(f_sum({4, 7}, 1), 1.0));
  // independent brute-force oracle (python)
  CHECK(close(f_sum(1, {2, 1}), {0.8090169943749463, -2.4898982848827806}, 1e-12));
  CHECK_THROWS_AS(f_sum({1, 1}, 2), DomainError);
  const ModulusContext ctx({7, 2});
  const auto all = ctx.f_values();
  for (std::size_t k = 0; k < all.size(); k += 7) CHECK(close(all[k], f_sum(ctx.residues()[k], {7, 2}), 1e-11));
}

TEST_CASE("Selberg identity") {
  CHECK(std::abs(selberg_residual(1, 1, {3, 2})) < 1e-12);
  CHECK(std::abs(selberg_residual(2, 2, 2)) < 1e-12);
  CHECK(std::abs(selberg_residual({1, 1}, 3, 6)) < 1e-12);
  CHECK(std::abs(selberg_residual({2, 1}, {1, 1}, {4, 2})) < 1e-11);
}

TEST_CASE("shift vanishing") {
  CHECK(std::abs(shift_vanishing_residual({3, 1}, {4, 1}, {0, 1})) < 1e-12);
  CHECK(std::abs(shift_vanishing_residual({1, 1}, 3, {1, 1})) < 1e-12);
  CHECK(std::abs(shift_vanishing_residual({2, 2}, {1, 1}, {1, 1})) < 1e-12);
  // (c, g) != 1: the full sum itself vanishes
  CHECK(std::abs(kloosterman({0, 8}, 1, {2, 0})) < 1e-12);
  CHECK_THROWS_AS(shift_vanishing_residual(1, 3, {1, 1}), DomainError);
}

TEST_CASE("Weil ratio") {
  CHECK(weil_ratio(1, 1, {1, 1}) == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
  CHECK(weil_ratio(1, 1, {2, 1}) == doctest::Approx(2.618034 / (2 * std::sqrt(5.0))).epsilon(1e-6));
  // m = c: gcd(m, n, c) = c enters the normalization
  const GaussianInt c{3, 2};
  CHECK(weil_ratio(c, c, c) == doctest::Approx(std::abs(kloosterman(c, c, c)) /
                                               (double(tau(GIdeal(c))) * std::sqrt(13.0) * std::sqrt(13.0))));
}

TEST_CASE("root table") {
  const RootTable t(12);
  CHECK(t.order() == 12);
  CHECK(close(t[3], {0, 1}));
  CHECK(close(t.at(-3), {0, -1}));
  CHECK(close(t.at(27), t[3]));
}

}
