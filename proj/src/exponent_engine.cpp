#include "pslab/exponent_engine.hpp"

#include <limits>

namespace pslab {
namespace {

// Margin of one atomic inequality "slack(theta) = s0 + s1*theta > 0 (or
// >= 0)", tagged with the condition label it belongs to.
struct Atomic {
  const char* name;
  Rational s0;
  Rational s1;
};

// Atomic margins at a fixed gamma, in condition-label order.
std::vector<Atomic> atomics_at(const Rational& gamma) {
  Rational a0 = Rational(31) * gamma / 3 - Rational(19, 2);
  Rational b0 = Rational(313, 44) - Rational(388) * gamma / 55;
  std::vector<Atomic> v;
  v.push_back({"(9)", a0, -1});                               // a > 0
  v.push_back({"(9)", 1 - a0, 1});                            // a < 1
  v.push_back({"(9)", Rational(2, 3) - b0, -1});              // b < 2/3
  v.push_back({"(10)", b0, 1});                               // b > 0
  v.push_back({"(10)", gamma - b0, -1});                      // b < c
  v.push_back({"(10)", 1 - gamma, 0});                        // c < 1
  v.push_back({"(11)", 2 * gamma - b0 - 1, -1});              // 1-c < c-b
  v.push_back({"(12)", gamma / 2 - 1 + a0, -1});              // 1-a < c/2
  v.push_back({"(18)", Rational(1, 2), -1});                  // theta <= 1/2
  v.push_back({"(26)", gamma - Rational(1, 2), -1});          // gamma > 1/2+theta
  v.push_back({"(36)", Rational(21, 110), -1});               // theta <= 21/110
  v.push_back({"(37)", gamma - Rational(865, 886), Rational(-55, 443)});
  v.push_back({"(38)", gamma - b0, -1});                      // b < c
  return v;
}

void merge_slack(std::vector<std::pair<std::string, Rational>>& slacks,
                 const std::string& name, const Rational& value) {
  for (auto& [n, s] : slacks) {
    if (n == name) {
      if (value < s) s = value;
      return;
    }
  }
  slacks.emplace_back(name, value);
}

}  // namespace

Rational lemma5_a(const Rational& gamma, const Rational& theta) {
  return Rational(31) * gamma / 3 - Rational(19, 2) - theta;
}

Rational lemma5_b(const Rational& gamma, const Rational& theta) {
  return Rational(313, 44) - Rational(388) * gamma / 55 + theta;
}

Rational theta_formula(const Rational& gamma) {
  return Rational(443) * gamma / 55 - Rational(173, 22);
}

ThetaReport admissible_theta(const Rational& gamma) {
  if (gamma <= 0 || gamma > 1) {
    throw std::invalid_argument("admissible_theta requires 0 < gamma <= 1");
  }
  auto atoms = atomics_at(gamma);

  bool free_ok = true;
  bool has_upper = false;
  Rational upper;
  std::string binding;
  Rational lower = 0;  // theta must be positive
  for (const auto& at : atoms) {
    if (at.s1 == 0) {
      // theta-free; boundary admitted (the source condition carries -eps).
      if (at.s0 < 0) free_ok = false;
    } else if (at.s1 < 0) {
      Rational bound = checked_div(at.s0, -at.s1);
      if (!has_upper || bound < upper) {
        upper = bound;
        binding = at.name;
        has_upper = true;
      }
    } else {
      Rational bound = checked_div(-at.s0, at.s1);
      if (bound > lower) lower = bound;
    }
  }

  ThetaReport report;
  report.gamma = gamma;
  bool feasible = free_ok && has_upper && upper > lower && upper > 0;
  Rational at_theta = feasible ? upper : Rational(0);
  if (feasible) {
    report.theta_max = upper;
    report.binding_constraint = binding;
  }
  for (const auto& at : atoms) {
    merge_slack(report.slacks, at.name, at.s0 + at.s1 * at_theta);
  }
  return report;
}

std::vector<ConstraintEval> check_lemma5_admissibility(const Rational& gamma,
                                                       const Rational& theta) {
  Rational a = lemma5_a(gamma, theta);
  Rational b = lemma5_b(gamma, theta);
  const Rational& c = gamma;

  auto entry = [](std::string name, std::vector<Rational> margins) {
    Rational slack = margins.front();
    for (const auto& m : margins) {
      if (m < slack) slack = m;
    }
    return ConstraintEval{std::move(name), slack > 0, slack};
  };

  return {
      entry("(9)", {a, 1 - a, Rational(2, 3) - b}),
      entry("(10)", {b, c - b, 1 - c}),
      entry("(11)", {2 * c - b - 1}),
      entry("(12)", {c / 2 - (1 - a)}),
  };
}

const ChainTermTable& ChainTermTable::instance() {
  static const ChainTermTable table = [] {
    ChainTermTable t;
    t.s1_terms = {
        // N^{1-g}
        {1, -1, 0, 0},
        // H^{63/62} M^{3/31} N^{(g+56)/62} D^{3/31}, H = N^{1-g}, D = N^t
        {Rational(119, 62), -1, Rational(3, 31), Rational(3, 31)},
    };
    auto halved = [](Rational c0, Rational cg, Rational ct, Rational cm) {
      return LinearForm{c0 / 2, cg / 2, ct / 2, cm / 2};
    };
    t.s2_terms = {
        halved(Rational(1022, 207), Rational(-608, 207), Rational(55, 207),
               Rational(-83, 69)),
        halved(Rational(815, 207), Rational(-401, 207), Rational(55, 207),
               Rational(-14, 69)),
        halved(Rational(3117, 776), -2, Rational(55, 194), Rational(-55, 194)),
        halved(Rational(635131, 160632), Rational(-311176, 160632),
               Rational(22055, 40158), Rational(-6511, 13386)),
        halved(Rational(802, 207), Rational(-388, 207), Rational(110, 207),
               Rational(-28, 69)),
        halved(3, -2, 0, 0),
        halved(2, -1, 0, 1),
        halved(Rational(1565, 776), -1, Rational(55, 194), Rational(139, 194)),
        halved(Rational(401, 194), -1, Rational(55, 194), Rational(139, 194)),
    };
    t.t_form = {Rational(401, 207), Rational(-194, 207), Rational(55, 207),
                Rational(-83, 69)};
    return t;
  }();
  return table;
}

ChainMax chain_max_exponent(const ChainTermTable& table, Chain which,
                            const Rational& gamma, const Rational& theta,
                            const Rational& mu) {
  const std::vector<LinearForm>* terms = nullptr;
  if (which == Chain::S1) {
    Rational a = lemma5_a(gamma, theta);
    if (mu > a) {
      throw std::invalid_argument(
          "chain_max_exponent: (34) violated, mu > 31g/3 - 19/2 - theta = " +
          rational_to_string(a));
    }
    terms = &table.s1_terms;
  } else {
    Rational b = lemma5_b(gamma, theta);
    if (mu < b) {
      throw std::invalid_argument(
          "chain_max_exponent: (38) violated, mu < 313/44 - 388g/55 + theta "
          "= " +
          rational_to_string(b));
    }
    if (mu > gamma) {
      throw std::invalid_argument(
          "chain_max_exponent: (38) violated, mu > gamma");
    }
    terms = &table.s2_terms;
  }

  ChainMax result{terms->front().eval(gamma, theta, mu), 0};
  for (std::size_t i = 1; i < terms->size(); ++i) {
    Rational e = (*terms)[i].eval(gamma, theta, mu);
    if (e > result.max_exponent) {
      result.max_exponent = e;
      result.argmax = i;
    }
  }
  return result;
}

Rational t_choice_exponent(const Rational& gamma, const Rational& theta,
                           const Rational& k_exp, const Rational& mu) {
  return (Rational(13) * gamma + 194) / 207 - Rational(83, 69) * mu + k_exp +
         Rational(55, 207) * theta;
}

}  // namespace pslab
