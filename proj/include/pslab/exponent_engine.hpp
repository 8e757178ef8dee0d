#ifndef PSLAB_EXPONENT_ENGINE_HPP
#define PSLAB_EXPONENT_ENGINE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab {

// Type I/II admissibility parameters:
//   a = 31g/3 - 19/2 - t,  b = 313/44 - 388g/55 + t,  c = g.
Rational lemma5_a(const Rational& gamma, const Rational& theta);
Rational lemma5_b(const Rational& gamma, const Rational& theta);

// The closed-form level of distribution 443g/55 - 173/22. Lives here only
// as a golden cross-check; admissible_theta derives the value from the
// full constraint intersection instead of hard-coding it.
Rational theta_formula(const Rational& gamma);

struct ConstraintEval {
  std::string name;
  bool satisfied;
  Rational slack;
};

struct ThetaReport {
  Rational gamma;
  std::optional<Rational> theta_max;
  std::string binding_constraint;
  std::vector<std::pair<std::string, Rational>> slacks;
};

// Supremum of theta > 0 satisfying the full constraint list
//   (9) 0 < a < 1, b < 2/3    (10) 0 < b < c < 1
//   (11) 1 - c < c - b        (12) 1 - a < c/2
//   (18) theta <= 1/2         (26) gamma > 1/2 + theta
//   (36) theta <= 21/110      (37) gamma > 865/886 + 55 theta/443
//   (38) b < c
// theta-free conditions are admitted at their boundary (they carry a
// "- epsilon" in the source inequalities). Accepts 0 < gamma <= 1.
ThetaReport admissible_theta(const Rational& gamma);

// Evaluates (9)-(12) exactly at (gamma, theta); slack is the minimum
// margin over a condition's atomic inequalities.
std::vector<ConstraintEval> check_lemma5_admissibility(const Rational& gamma,
                                                       const Rational& theta);

// N-exponent tables of the closing bound chains. H-exponents are
// substituted at H = N^{1-g}, D-exponents at D = N^theta, and the Type II
// terms are halved to absorb the outer square root, so the target is
// uniformly "<= 1".
struct ChainTermTable {
  std::vector<LinearForm> s1_terms;
  std::vector<LinearForm> s2_terms;
  LinearForm t_form;  // N-exponent of the block parameter T, K at its max

  static const ChainTermTable& instance();
};

enum class Chain { S1, S2 };

struct ChainMax {
  Rational max_exponent;
  std::size_t argmax;
};

// Exact maximum N-exponent over the chosen table at (gamma, theta, mu).
// Rejects mu outside the admissible range: mu <= a for S1, b <= mu <= c
// for S2, naming the violated bound.
ChainMax chain_max_exponent(const ChainTermTable& table, Chain which,
                            const Rational& gamma, const Rational& theta,
                            const Rational& mu);

// N-exponent of the balancing parameter T:
//   (13g + 194)/207 - (83/69) mu + k_exp + (55/207) theta.
Rational t_choice_exponent(const Rational& gamma, const Rational& theta,
                           const Rational& k_exp, const Rational& mu);

}  // namespace pslab

#endif
