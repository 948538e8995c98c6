#include "gsieve/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace gsieve {

namespace {

std::int64_t emod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::int64_t> rational_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      ps.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

}  // namespace

Phase Phase::make(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("Phase denominator must be positive");
  num = emod(num, den);
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

Phase operator+(const Phase& a, const Phase& b) {
  const std::int64_t l = std::lcm(a.den, b.den);
  return Phase::make(a.num * (l / a.den) + b.num * (l / b.den), l);
}

cplx Phase::value() const {
  if (num == 0) return 1.0;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

// ---------------------------------------------------------------------------
// CharGroup

std::shared_ptr<const CharGroup> CharGroup::make(const GaussianInt& c) {
  std::shared_ptr<CharGroup> g(new CharGroup(c));
  g->decompose();
  return g;
}

CharGroup::CharGroup(const GaussianInt& c)
    : modulus_(c), dom_(c), residues_(unit_residues(c)), index_of_(static_cast<std::size_t>(dom_.size()), -1) {
  for (std::size_t j = 0; j < residues_.size(); ++j) {
    index_of_[static_cast<std::size_t>(dom_.index(residues_[j]))] = static_cast<std::int64_t>(j);
  }
}

std::int64_t CharGroup::unit_index(const GaussianInt& z) const {
  return index_of_[static_cast<std::size_t>(dom_.index(dom_.reduce(z)))];
}

std::span<const std::int64_t> CharGroup::coords(std::size_t unit_idx) const {
  const std::size_t k = gens_.size();
  return {coords_.data() + unit_idx * k, k};
}

// Greedy decomposition of each Sylow subgroup: repeatedly pick the element of
// largest order modulo the subgroup built so far and correct it so that its
// p^e-th power is trivial; the result is a direct factor.
void CharGroup::decompose() {
  const auto phi = static_cast<std::int64_t>(residues_.size());
  const GaussianInt one = dom_.reduce(GaussianInt{1});
  const auto one_idx = static_cast<std::size_t>(unit_index(one));

  auto mul = [&](std::size_t a, std::size_t b) {
    return static_cast<std::size_t>(index_of_[static_cast<std::size_t>(
        dom_.index(dom_.mul(residues_[a], residues_[b])))]);
  };
  auto power = [&](std::size_t a, std::int64_t e) {
    std::size_t r = one_idx;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e > 0) a = mul(a, a);
    }
    return r;
  };

  const auto primes = rational_prime_factors(phi);
  std::vector<std::int64_t> order(static_cast<std::size_t>(phi));
  for (std::size_t j = 0; j < order.size(); ++j) {
    std::int64_t o = phi;
    for (auto q : primes) {
      while (o % q == 0 && power(j, o / q) == one_idx) o /= q;
    }
    order[j] = o;
  }

  std::vector<std::size_t> gen_idx;
  for (auto p : primes) {
    std::int64_t sylow_size = 1;
    for (std::int64_t n = phi; n % p == 0; n /= p) sylow_size *= p;

    std::vector<std::size_t> sylow;
    for (std::size_t j = 0; j < order.size(); ++j) {
      std::int64_t o = order[j];
      while (o % p == 0) o /= p;
      if (o == 1) sylow.push_back(j);
    }

    // Membership and coordinates in the subgroup H built so far (local gens).
    std::vector<std::int64_t> member(static_cast<std::size_t>(phi), -1);
    std::vector<std::vector<std::int64_t>> hcoords{{}};
    std::vector<std::size_t> hlist{one_idx};
    member[one_idx] = 0;
    std::vector<std::size_t> local_gens;
    std::vector<std::int64_t> local_orders;

    while (static_cast<std::int64_t>(hlist.size()) < sylow_size) {
      std::size_t best = 0;
      std::int64_t best_q = 0;
      for (auto x : sylow) {
        if (member[x] >= 0) continue;
        std::int64_t q = 1;
        std::size_t y = x;
        while (member[y] < 0) {
          y = power(y, p);
          q *= p;
        }
        if (q > best_q) {
          best_q = q;
          best = x;
        }
      }
      const std::size_t h = power(best, best_q);
      const auto& a = hcoords[static_cast<std::size_t>(member[h])];
      std::size_t corrected = best;
      for (std::size_t i = 0; i < local_gens.size(); ++i) {
        if (a[i] % best_q != 0) throw std::logic_error("CharGroup: non-split extension in decomposition");
        const std::int64_t shift = emod(-(a[i] / best_q), local_orders[i]);
        corrected = mul(corrected, power(local_gens[i], shift));
      }
      // Extend H by <corrected>.
      const std::size_t old = hlist.size();
      std::size_t step = corrected;
      for (std::int64_t j = 1; j < best_q; ++j) {
        for (std::size_t k = 0; k < old; ++k) {
          const std::size_t e = mul(hlist[k], step);
          auto c = hcoords[static_cast<std::size_t>(member[hlist[k]])];
          c.push_back(j);
          member[e] = static_cast<std::int64_t>(hcoords.size());
          hcoords.push_back(std::move(c));
          hlist.push_back(e);
        }
        step = mul(step, corrected);
      }
      for (auto& c : hcoords) {
        if (c.size() < local_gens.size() + 1) c.push_back(0);
      }
      local_gens.push_back(corrected);
      local_orders.push_back(best_q);
    }
    for (std::size_t i = 0; i < local_gens.size(); ++i) {
      gen_idx.push_back(local_gens[i]);
      gens_.push_back({residues_[local_gens[i]], local_orders[i]});
    }
  }

  // Discrete logarithms of all units by enumerating products of generators.
  const std::size_t k = gens_.size();
  coords_.assign(static_cast<std::size_t>(phi) * k, 0);
  std::vector<std::size_t> elems{one_idx};
  std::vector<std::vector<std::int64_t>> logs{std::vector<std::int64_t>(k, 0)};
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t old = elems.size();
    std::size_t step = gen_idx[i];
    for (std::int64_t j = 1; j < gens_[i].order; ++j) {
      for (std::size_t t = 0; t < old; ++t) {
        elems.push_back(mul(elems[t], step));
        auto l = logs[t];
        l[i] = j;
        logs.push_back(std::move(l));
      }
      step = mul(step, gen_idx[i]);
    }
  }
  if (static_cast<std::int64_t>(elems.size()) != phi) throw std::logic_error("CharGroup: generators do not span");
  std::vector<bool> seen(static_cast<std::size_t>(phi), false);
  for (std::size_t t = 0; t < elems.size(); ++t) {
    if (seen[elems[t]]) throw std::logic_error("CharGroup: generators are dependent");
    seen[elems[t]] = true;
    std::copy(logs[t].begin(), logs[t].end(), coords_.begin() + static_cast<std::ptrdiff_t>(elems[t] * k));
  }

  exponent_ = 1;
  for (const auto& g : gens_) exponent_ = std::lcm(exponent_, g.order);
  roots_ = RootTable(exponent_);
}

DirichletChar CharGroup::trivial() const {
  return DirichletChar(shared_from_this(), std::vector<std::int64_t>(gens_.size(), 0));
}

DirichletChar CharGroup::character(std::int64_t index) const {
  if (index < 0 || index >= size()) throw DomainError("character index out of range");
  std::vector<std::int64_t> e(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    e[i] = index % gens_[i].order;
    index /= gens_[i].order;
  }
  return DirichletChar(shared_from_this(), std::move(e));
}

std::vector<DirichletChar> CharGroup::characters() const {
  std::vector<DirichletChar> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::int64_t j = 0; j < size(); ++j) out.push_back(character(j));
  return out;
}

DirichletChar CharGroup::from_exponents(std::vector<std::int64_t> exponents) const {
  if (exponents.size() != gens_.size()) throw DomainError("exponent vector has wrong length");
  return DirichletChar(shared_from_this(), std::move(exponents));
}

DirichletChar CharGroup::from_phase_function(const std::function<Phase(const GaussianInt&)>& phase_at) const {
  std::vector<std::int64_t> e(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Phase ph = phase_at(gens_[i].residue);
    const std::int64_t o = gens_[i].order;
    if ((ph.num * o) % ph.den != 0) throw DomainError("phase function does not define a character");
    e[i] = ph.num * o / ph.den;
  }
  return DirichletChar(shared_from_this(), std::move(e));
}

// ---------------------------------------------------------------------------
// DirichletChar

const char* to_string(CharClass c) {
  switch (c) {
    case CharClass::kTrivial: return "trivial";
    case CharClass::kPrimitive: return "primitive";
    case CharClass::kSemiPrimitive: return "semi-primitive";
    case CharClass::kMixed: return "mixed";
  }
  return "?";
}

DirichletChar::DirichletChar(std::shared_ptr<const CharGroup> group, std::vector<std::int64_t> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
  const auto& gens = group_->generators();
  weights_.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    exps_[i] = emod(exps_[i], gens[i].order);
    weights_[i] = group_->exponent() / gens[i].order;
  }
}

std::int64_t DirichletChar::phase_index(std::size_t unit_idx) const {
  const auto x = group_->coords(unit_idx);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < exps_.size(); ++i) s += exps_[i] * x[i] % group_->generators()[i].order * weights_[i];
  return s % group_->exponent();
}

std::optional<Phase> DirichletChar::phase(const GaussianInt& z) const {
  const auto j = group_->unit_index(z);
  if (j < 0) return std::nullopt;
  return Phase::make(phase_index(static_cast<std::size_t>(j)), group_->exponent());
}

cplx DirichletChar::operator()(const GaussianInt& z) const {
  const auto j = group_->unit_index(z);
  if (j < 0) return 0.0;
  return group_->roots()[phase_index(static_cast<std::size_t>(j))];
}

bool DirichletChar::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(), [](std::int64_t e) { return e == 0; });
}

bool DirichletChar::is_real() const {
  const auto& gens = group_->generators();
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if ((2 * exps_[i]) % gens[i].order != 0) return false;
  }
  return true;
}

namespace {

// chi trivial on units congruent to 1 mod d.
bool trivial_on_kernel(const DirichletChar& chi, const GaussianInt& d) {
  const ResidueDomain dd(d);
  const GaussianInt one = dd.reduce(GaussianInt{1});
  const auto& res = chi.group().residues();
  for (std::size_t j = 0; j < res.size(); ++j) {
    if (dd.reduce(res[j]) == one && chi.phase_index(j) != 0) return false;
  }
  return true;
}

}  // namespace

GIdeal conductor(const DirichletChar& chi) {
  if (chi.is_trivial()) return GIdeal{};
  const GaussianInt c = chi.modulus().gen();
  GaussianInt cond{1};
  for (const auto& [p, k] : factor(c).factors) {
    // c = p^k * rest; find the least f with chi trivial on 1 + p^f * rest.
    const GaussianInt rest = exact_div(c, pow(p.gen(), static_cast<unsigned>(k)));
    int f = 0;
    while (f < k && !trivial_on_kernel(chi, rest * pow(p.gen(), static_cast<unsigned>(f)))) ++f;
    cond *= pow(p.gen(), static_cast<unsigned>(f));
  }
  return GIdeal(cond);
}

CharInfo classify(const DirichletChar& chi) {
  CharInfo info;
  info.conductor = conductor(chi);
  if (info.conductor.is_unit()) {
    info.kind = CharClass::kTrivial;
  } else if (info.conductor == chi.modulus()) {
    info.kind = CharClass::kPrimitive;
  } else if (satisfies_semi_primitive_condition(chi)) {
    info.kind = CharClass::kSemiPrimitive;
  } else {
    info.kind = CharClass::kMixed;
  }
  return info;
}

bool satisfies_semi_primitive_condition(const DirichletChar& chi) {
  const GIdeal cond = conductor(chi);
  for (const auto& [p, k] : factor(chi.modulus()).factors) {
    const int ks = valuation(cond, p);
    if (ks < 1 || ks >= k) return false;
  }
  return true;
}

DirichletChar lift(const DirichletChar& chi, const std::shared_ptr<const CharGroup>& target) {
  if (!divides(chi.modulus().gen(), target->modulus().gen())) {
    throw DomainError("lift: source modulus must divide target modulus");
  }
  return target->from_phase_function([&](const GaussianInt& z) {
    auto ph = chi.phase(z);
    if (!ph) throw std::logic_error("lift: unit mod c is not a unit mod d");
    return *ph;
  });
}

DirichletChar product_character(const DirichletChar& chi1, const DirichletChar& chi2) {
  const GaussianInt c1 = chi1.modulus().gen(), c2 = chi2.modulus().gen();
  if (!coprime(c1, c2)) throw DomainError("product_character requires coprime moduli");
  auto target = CharGroup::make(c1 * c2);
  return target->from_phase_function([&](const GaussianInt& z) { return *chi1.phase(z) + *chi2.phase(z); });
}

// ---------------------------------------------------------------------------
// Mellin transform

MellinTransform::MellinTransform(const GaussianInt& c) : MellinTransform(c, CharGroup::make(c)) {}

MellinTransform::MellinTransform(const GaussianInt& c, std::shared_ptr<const CharGroup> group)
    : ctx_(c), group_(std::move(group)), f_(ctx_.f_values()) {
  if (!(group_->modulus() == GIdeal(c))) throw DomainError("MellinTransform: group modulus mismatch");
}

cplx MellinTransform::hat(const DirichletChar& chi) const {
  if (!(chi.modulus() == group_->modulus())) throw DomainError("mellin_hat: character has a different modulus");
  const auto& roots = group_->roots();
  const std::int64_t l = group_->exponent();
  cplx acc = 0.0;
  for (std::size_t j = 0; j < f_.size(); ++j) {
    acc += roots[(l - chi.phase_index(j)) % l] * f_[j];
  }
  return acc / static_cast<double>(f_.size());
}

std::vector<cplx> MellinTransform::all_hats() const {
  std::vector<cplx> out;
  out.reserve(f_.size());
  for (std::int64_t k = 0; k < group_->size(); ++k) out.push_back(hat(group_->character(k)));
  return out;
}

std::shared_ptr<const CharGroup> char_group(const GaussianInt& c) {
  if (c.is_zero()) throw DomainError("char_group with zero modulus");
  return CharGroup::make(c);
}

cplx mellin_hat(const GaussianInt& c, const DirichletChar& chi) {
  return MellinTransform(c, chi.group_ptr()).hat(chi);
}

LemmaPrediction lemma_predicted_modulus(const DirichletChar& chi) {
  const auto fac = factor(chi.modulus());
  if (fac.factors.empty()) return {1.0, false};
  if (fac.factors.size() != 1) throw DomainError("lemma_predicted_modulus needs a prime-power modulus");
  const double np = static_cast<double>(fac.factors[0].prime.norm());
  const int k = fac.factors[0].exponent;
  const CharInfo info = classify(chi);
  switch (info.kind) {
    case CharClass::kTrivial:
      if (k == 1) return {1.0 / (np - 1.0), false};
      if (k % 2 == 0) return {std::pow(np, k / 2), false};
      return {0.0, false};
    case CharClass::kPrimitive:
      if (np == 2.0) return {0.0, false};
      if (chi.is_real()) return {std::sqrt(np) / (np - 1.0), false};
      return {np / (np - 1.0), false};
    case CharClass::kSemiPrimitive:
    case CharClass::kMixed: {
      // For a prime power every non-trivial, non-primitive character is
      // semi-primitive.
      const int ks = valuation(info.conductor, fac.factors[0].prime);
      if ((k - ks) % 2 != 0) return {0.0, false};
      if (chi.is_real()) return {std::pow(np, 0.5 * k), true};
      if (np == 2.0 && k == ks + 2) return {std::pow(2.0, 2.5), false};
      return {0.0, false};
    }
  }
  return {0.0, false};
}

cplx twisted_mult_residual(const DirichletChar& chi1, const DirichletChar& chi2) {
  const GaussianInt c1 = chi1.modulus().gen(), c2 = chi2.modulus().gen();
  if (!coprime(c1, c2)) throw DomainError("twisted_mult_residual requires coprime moduli");
  const DirichletChar chi = product_character(chi1, chi2);
  const cplx lhs = MellinTransform(c1 * c2, chi.group_ptr()).hat(chi);
  const cplx f1 = MellinTransform(c1, chi1.group_ptr()).hat(chi1);
  const cplx f2 = MellinTransform(c2, chi2.group_ptr()).hat(chi2);
  const cplx rhs = std::conj(chi1(c2)) * std::conj(chi2(c1)) * f1 * f2;
  return lhs - rhs;
}

double corollary_average(double bound, double gamma, CorollaryMode mode) {
  if (bound < 1) throw DomainError("corollary_average requires C >= 1");
  double total = 0.0;
  for (const auto& c : ideals_up_to_norm(bound)) {
    const double weight = std::pow(static_cast<double>(c.norm()), gamma);
    if (c.is_unit()) {
      total += weight;  // F^ = 1 on the zero ring
      continue;
    }
    if (mode == CorollaryMode::kTrivial) {
      const MellinTransform mt(c.gen());
      total += weight * std::abs(mt.hat(mt.group().trivial()));
      continue;
    }
    // Semi-primitive characters need v_p(c) >= 2 at every prime.
    const auto fac = factor(c);
    if (std::any_of(fac.factors.begin(), fac.factors.end(), [](const PrimePower& pp) { return pp.exponent < 2; })) {
      continue;
    }
    const MellinTransform mt(c.gen());
    double s = 0.0;
    for (std::int64_t k = 0; k < mt.group().size(); ++k) {
      const auto chi = mt.group().character(k);
      if (chi.is_trivial() || !satisfies_semi_primitive_condition(chi)) continue;
      s += std::abs(mt.hat(chi));
    }
    total += weight * s;
  }
  return total;
}

}  // namespace gsieve
