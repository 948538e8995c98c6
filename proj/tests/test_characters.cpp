#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "gsieve/characters.hpp"

using namespace gsieve;

namespace {
std::vector<DirichletChar> with_order(const CharGroup& g, std::int64_t order) {
  std::vector<DirichletChar> out;
  for (const auto& chi : g.characters()) {
    std::int64_t k = 1;
    while (k <= g.size()) {
      bool trivial = true;
      for (std::size_t j = 0; j < g.residues().size(); ++j) trivial = trivial && (chi.phase_index(j) * k) % g.exponent() == 0;
      if (trivial) break;
      ++k;
    }
    if (k == order) out.push_back(chi);
  }
  return out;
}
}  // namespace

TEST_SUITE("characters") {

TEST_CASE("group structure") {
  CHECK(char_group({1, 1})->size() == 1);
  const auto g5 = char_group({2, 1});
  CHECK(g5->size() == 4);
  REQUIRE(g5->generators().size() == 1);
  CHECK(g5->generators()[0].order == 4);
  CHECK(char_group(3)->size() == 8);
  CHECK(char_group(1)->size() == 1);
  for (const GaussianInt c : {GaussianInt{8}, GaussianInt{6, 3}, GaussianInt{15}, GaussianInt{4, 4}}) {
    const auto g = char_group(c);
    std::int64_t prod = 1;
    for (const auto& gen : g->generators()) prod *= gen.order;
    CHECK(prod == g->size());
    CHECK(g->size() == euler_phi(GIdeal(c)));
  }
}

TEST_CASE("characters are homomorphisms") {
  const GaussianInt c{9, 6};
  const auto g = char_group(c);
  const ResidueDomain dom(c);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto chi = g->character(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g->size())));
    const auto& r = g->residues();
    const GaussianInt a = r[rng() % r.size()], b = r[rng() % r.size()];
    CHECK(std::abs(chi(dom.mul(a, b)) - chi(a) * chi(b)) < 1e-12);
  }
  CHECK(g->character(3)({3, 0}) == cplx(0.0));
}

TEST_CASE("orthogonality") {
  const auto g = char_group({4, 2});
  for (std::int64_t i = 0; i < g->size(); ++i) {
    for (std::int64_t j = 0; j < g->size(); ++j) {
      cplx s = 0.0;
      for (const auto& a : g->residues()) s += g->character(i)(a) * std::conj(g->character(j)(a));
      CHECK(std::abs(s - (i == j ? double(g->size()) : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("conductor") {
  CHECK(conductor(char_group(12)->trivial()) == GIdeal(1));
  for (const auto& chi : char_group(7)->characters()) {
    CHECK(conductor(chi) == (chi.is_trivial() ? GIdeal(1) : GIdeal(7)));
  }
  const auto small = char_group({2, 1});
  const auto big = char_group(GaussianInt{2, 1} * GaussianInt{2, 1});
  for (const auto& chi : small->characters()) {
    const auto lifted = lift(chi, big);
    CHECK(conductor(lifted) == (chi.is_trivial() ? GIdeal(1) : GIdeal({2, 1})));
    CHECK(classify(lifted).kind == (chi.is_trivial() ? CharClass::kTrivial : CharClass::kSemiPrimitive));
  }
}

TEST_CASE("product character") {
  const auto g1 = char_group({1, 1}), g2 = char_group({2, 1});
  const auto chi = product_character(g1->trivial(), g2->character(1));
  CHECK(chi.modulus() == GIdeal(GaussianInt{1, 1} * GaussianInt{2, 1}));
  CHECK_THROWS_AS(product_character(char_group(3)->trivial(), char_group(6)->trivial()), DomainError);
}

TEST_CASE("Mellin transform values") {
  CHECK(std::abs(mellin_hat({1, 1}, char_group({1, 1})->trivial()) - 1.0) < 1e-12);
  CHECK(std::abs(mellin_hat({2, 1}, char_group({2, 1})->trivial())) == doctest::Approx(0.25));
  for (int k = 1; k <= 7; ++k) {
    const GaussianInt c = pow({1, 1}, static_cast<unsigned>(k));
    const MellinTransform mt(canonical_associate(c));
    for (const auto& chi : mt.group().characters()) {
      if (classify(chi).kind == CharClass::kPrimitive) CHECK(std::abs(mt.hat(chi)) < 1e-12);
    }
  }
}

TEST_CASE("lemma predictions at odd primes") {
  const auto g = char_group({2, 1});
  const MellinTransform mt({2, 1});
  const auto quad = with_order(*g, 2);
  REQUIRE(quad.size() == 1);
  CHECK(lemma_predicted_modulus(quad[0]).value == doctest::Approx(std::sqrt(5.0) / 4));
  CHECK(std::abs(mt.hat(quad[0])) == doctest::Approx(std::sqrt(5.0) / 4));
  for (const auto& chi : with_order(*g, 4)) {
    CHECK(lemma_predicted_modulus(chi).value == doctest::Approx(1.25));
    CHECK(std::abs(mt.hat(chi)) == doctest::Approx(1.25));
  }
  const GaussianInt c2 = GaussianInt{2, 1} * GaussianInt{2, 1};
  CHECK(lemma_predicted_modulus(char_group(c2)->trivial()).value == doctest::Approx(5.0));
  CHECK(std::abs(mellin_hat(canonical_associate(c2), char_group(canonical_associate(c2))->trivial())) ==
        doctest::Approx(5.0));
  CHECK_THROWS_AS(lemma_predicted_modulus(char_group(15)->trivial()), DomainError);
}

TEST_CASE("dyadic semi-primitive values (measured, differ from the lemma)") {
  // |F^| at (1+i)^k for complex semi-primitive characters, grouped by k*.
  auto nonzero_kstar = [](int k) {
    const GaussianInt c = canonical_associate(pow({1, 1}, static_cast<unsigned>(k)));
    const MellinTransform mt(c);
    std::map<int, double> out;
    for (const auto& chi : mt.group().characters()) {
      const auto info = classify(chi);
      if (info.kind != CharClass::kSemiPrimitive || chi.is_real()) continue;
      const double v = std::abs(mt.hat(chi));
      int ks = 0;
      for (auto d = info.conductor.norm(); d > 1; d /= 2) ++ks;
      if (v > 1e-9) out[ks] = std::max(out[ks], v);
    }
    return out;
  };
  const auto k5 = nonzero_kstar(5);
  REQUIRE(k5.size() == 1);
  CHECK(k5.at(3) == doctest::Approx(std::pow(2.0, 2.5)));
  CHECK(nonzero_kstar(6).empty());
  CHECK(nonzero_kstar(7).empty());
  const auto k8 = nonzero_kstar(8);
  REQUIRE(k8.size() == 1);
  CHECK(k8.at(4) == doctest::Approx(16.0));
}

TEST_CASE("Parseval at the dyadic moduli (python oracle)") {
  // (1/phi) sum |F|^2 from a naive double loop
  const std::pair<GaussianInt, double> cases[] = {{4, 32.0}, {8, 128.0}, {16, 1024.0}};
  for (const auto& [c, expect] : cases) {
    const MellinTransform mt(c);
    double s = 0.0;
    for (const cplx h : mt.all_hats()) s += std::norm(h);
    CHECK(s == doctest::Approx(expect));
  }
}

TEST_CASE("twisted multiplicativity") {
  const auto g1 = char_group({1, 1}), g2 = char_group({2, 1});
  CHECK(std::abs(twisted_mult_residual(g1->trivial(), g2->trivial())) < 1e-12);
  CHECK(std::abs(twisted_mult_residual(g1->trivial(), with_order(*g2, 2)[0])) < 1e-12);
  CHECK_THROWS_AS(twisted_mult_residual(g2->trivial(), g2->character(1)), DomainError);
  const auto a = char_group({3, 2}), b = char_group(4);
  for (std::int64_t i = 0; i < a->size(); i += 3) {
    for (std::int64_t j = 0; j < b->size(); ++j) {
      CHECK(std::abs(twisted_mult_residual(a->character(i), b->character(j))) < 1e-10);
    }
  }
}

TEST_CASE("corollary average") {
  CHECK(corollary_average(1, 0.7, CorollaryMode::kTrivial) == doctest::Approx(1.0));
  CHECK(corollary_average(2, 0.0, CorollaryMode::kTrivial) == doctest::Approx(2.0));
  // semi-primitive at C = 4: the modulus (1) plus the semi-primitive characters mod 2
  double expect = 1.0;
  const MellinTransform mt(2);
  for (const auto& chi : mt.group().characters()) {
    if (!chi.is_trivial() && satisfies_semi_primitive_condition(chi)) expect += std::abs(mt.hat(chi));
  }
  CHECK(corollary_average(4, 0.0, CorollaryMode::kSemiPrimitive) == doctest::Approx(expect));
  CHECK(corollary_average(50, 0.0, CorollaryMode::kTrivial) == doctest::Approx(31.4687).epsilon(1e-5));
  CHECK(corollary_average(50, 0.0, CorollaryMode::kSemiPrimitive) == doctest::Approx(16.3137).epsilon(1e-5));
}

TEST_CASE("phase arithmetic") {
  const Phase a = Phase::make(3, 4), b = Phase::make(-1, 6);
  CHECK((a + b) == Phase::make(7, 12));
  CHECK((-a) == Phase::make(1, 4));
  CHECK(Phase::make(8, 4) == Phase::make(0, 1));
}

}
