#pragma once

// Dirichlet characters modulo ideals of Z[i] and the finite Mellin transform
// of F(w; c).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gsieve/exp_sums.hpp"
#include "gsieve/gaussian.hpp"

namespace gsieve {

/// e[num/den], kept reduced with 0 <= num < den.
struct Phase {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Phase make(std::int64_t num, std::int64_t den);
  friend Phase operator+(const Phase& a, const Phase& b);
  Phase operator-() const { return make(-num, den); }
  friend bool operator==(const Phase&, const Phase&) = default;
  cplx value() const;
};

class DirichletChar;

struct CyclicGenerator {
  GaussianInt residue;
  std::int64_t order = 1;
};

/// (O/c)^x decomposed as a direct product of cyclic groups of prime-power
/// order, together with discrete logarithms of every unit.
class CharGroup : public std::enable_shared_from_this<CharGroup> {
 public:
  static std::shared_ptr<const CharGroup> make(const GaussianInt& c);

  const GIdeal& modulus() const { return modulus_; }
  const ResidueDomain& domain() const { return dom_; }
  const std::vector<GaussianInt>& residues() const { return residues_; }
  const std::vector<CyclicGenerator>& generators() const { return gens_; }
  std::int64_t size() const { return static_cast<std::int64_t>(residues_.size()); }
  /// Exponent of the group: lcm of generator orders.
  std::int64_t exponent() const { return exponent_; }
  const RootTable& roots() const { return roots_; }

  /// Index into residues() of z mod c, or -1 if z is not a unit mod c.
  std::int64_t unit_index(const GaussianInt& z) const;
  /// Exponents of residues()[unit_idx] with respect to generators().
  std::span<const std::int64_t> coords(std::size_t unit_idx) const;

  DirichletChar trivial() const;
  /// Characters are indexed 0..size()-1 by mixed radix over generator orders.
  DirichletChar character(std::int64_t index) const;
  std::vector<DirichletChar> characters() const;
  /// Character from its exponent vector (reduced mod the orders).
  DirichletChar from_exponents(std::vector<std::int64_t> exponents) const;
  /// Character whose value at each generator is given by `phase_at`; the
  /// function must define a character (checked on generators only).
  DirichletChar from_phase_function(const std::function<Phase(const GaussianInt&)>& phase_at) const;

 private:
  explicit CharGroup(const GaussianInt& c);
  void decompose();

  GIdeal modulus_;
  ResidueDomain dom_;
  std::vector<GaussianInt> residues_;
  std::vector<std::int64_t> index_of_;  // domain index -> unit index or -1
  std::vector<CyclicGenerator> gens_;
  std::vector<std::int64_t> coords_;  // residues_.size() x gens_.size()
  std::int64_t exponent_ = 1;
  RootTable roots_{1};
};

enum class CharClass { kTrivial, kPrimitive, kSemiPrimitive, kMixed };

const char* to_string(CharClass c);

struct CharInfo {
  GIdeal conductor;
  CharClass kind = CharClass::kTrivial;
};

class DirichletChar {
 public:
  DirichletChar(std::shared_ptr<const CharGroup> group, std::vector<std::int64_t> exponents);

  const CharGroup& group() const { return *group_; }
  std::shared_ptr<const CharGroup> group_ptr() const { return group_; }
  const GIdeal& modulus() const { return group_->modulus(); }
  const std::vector<std::int64_t>& exponents() const { return exps_; }

  /// Phase numerator over group().exponent() at residues()[unit_idx].
  std::int64_t phase_index(std::size_t unit_idx) const;
  /// chi(z) as a phase; nullopt when z is not coprime to the modulus.
  std::optional<Phase> phase(const GaussianInt& z) const;
  /// chi(z); 0 off (O/c)^x.
  cplx operator()(const GaussianInt& z) const;

  bool is_trivial() const;
  /// chi^2 = chi_0.
  bool is_real() const;

  friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
    return a.modulus() == b.modulus() && a.exps_ == b.exps_;
  }

 private:
  std::shared_ptr<const CharGroup> group_;
  std::vector<std::int64_t> exps_;
  std::vector<std::int64_t> weights_;  // exponent / order_i
};

/// Smallest d | c such that chi is trivial on ker((O/c)^x -> (O/d)^x).
GIdeal conductor(const DirichletChar& chi);
/// Conductor plus trivial / primitive / semi-primitive / mixed.
CharInfo classify(const DirichletChar& chi);
/// For every prime p | c: 1 <= v_p(conductor) < v_p(c).  Vacuously true for c = (1).
bool satisfies_semi_primitive_condition(const DirichletChar& chi);

/// chi mod d viewed as a character mod c for d | c.
DirichletChar lift(const DirichletChar& chi, const std::shared_ptr<const CharGroup>& target);
/// chi1 chi2 as a character mod c1 c2 (moduli must be coprime).
DirichletChar product_character(const DirichletChar& chi1, const DirichletChar& chi2);

/// Finite Mellin transform of F(.; c) on (O/c)^x for one concrete generator c.
class MellinTransform {
 public:
  explicit MellinTransform(const GaussianInt& c);
  MellinTransform(const GaussianInt& c, std::shared_ptr<const CharGroup> group);

  const GaussianInt& modulus() const { return ctx_.modulus(); }
  const CharGroup& group() const { return *group_; }
  std::shared_ptr<const CharGroup> group_ptr() const { return group_; }
  /// F(alpha; c) aligned with group().residues().
  const std::vector<cplx>& f_values() const { return f_; }

  /// (1/phi(c)) sum_alpha conj(chi(alpha)) F(alpha; c).
  cplx hat(const DirichletChar& chi) const;
  /// hat() for every character, in CharGroup::character(index) order.
  std::vector<cplx> all_hats() const;

 private:
  ModulusContext ctx_;
  std::shared_ptr<const CharGroup> group_;
  std::vector<cplx> f_;
};

std::shared_ptr<const CharGroup> char_group(const GaussianInt& c);
cplx mellin_hat(const GaussianInt& c, const DirichletChar& chi);

struct LemmaPrediction {
  double value = 0.0;
  bool is_bound = false;  // true: |F^(chi)| <= value only
};

/// Predicted |F^(chi)| for a prime-power modulus p^k from the local case
/// formulas (primitive, trivial, semi-primitive).  The modulus (1) predicts 1.
LemmaPrediction lemma_predicted_modulus(const DirichletChar& chi);

/// F^(chi1 chi2; c1 c2) - conj(chi1(c2)) conj(chi2(c1)) F^(chi1; c1) F^(chi2; c2)
/// using the canonical generators c1, c2 of the two moduli.
cplx twisted_mult_residual(const DirichletChar& chi1, const DirichletChar& chi2);

enum class CorollaryMode { kTrivial, kSemiPrimitive };

/// sum_{N(c) <= C} N(c)^gamma sum_chi |F^(chi)| over chi = chi_0 (kTrivial)
/// or over the semi-primitive characters mod c.
double corollary_average(double bound, double gamma, CorollaryMode mode);

}  // namespace gsieve
