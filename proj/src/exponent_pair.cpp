#include "pslab/exponent_pair.hpp"

#include <cmath>
#include <utility>

namespace pslab {

ExponentPair::ExponentPair(Rational kappa, Rational lambda)
    : kappa_(std::move(kappa)), lambda_(std::move(lambda)) {
  if (kappa_ < 0 || kappa_ > Rational(1, 2)) {
    throw std::invalid_argument("exponent pair: kappa outside [0, 1/2]: " +
                                rational_to_string(kappa_));
  }
  if (lambda_ < Rational(1, 2) || lambda_ > 1) {
    throw std::invalid_argument("exponent pair: lambda outside [1/2, 1]: " +
                                rational_to_string(lambda_));
  }
  if (kappa_ + lambda_ > 1) {
    throw std::invalid_argument("exponent pair: kappa + lambda > 1");
  }
}

ExponentPair a_process(const ExponentPair& p) {
  Rational den = 2 * p.kappa() + 2;
  return ExponentPair(p.kappa() / den, (p.kappa() + p.lambda() + 1) / den);
}

ExponentPair b_process(const ExponentPair& p) {
  return ExponentPair(p.lambda() - Rational(1, 2), p.kappa() + Rational(1, 2));
}

ExponentPair apply_word(std::string_view word, const ExponentPair& start) {
  ExponentPair cur = start;
  // Right-to-left: the rightmost letter acts first.
  for (std::size_t i = word.size(); i-- > 0;) {
    char letter = word[i];
    try {
      if (letter == 'A') {
        cur = a_process(cur);
      } else if (letter == 'B') {
        cur = b_process(cur);
      } else {
        throw std::invalid_argument(std::string("process word letter must be "
                                                "A or B, got '") +
                                    letter + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(
          "apply_word failed after suffix \"" + std::string(word.substr(i)) +
          "\": " + e.what());
    }
  }
  return cur;
}

double vdc_bound(const ExponentPair& pair, double Y, double X) {
  if (!(Y > 0) || !(X >= 1)) {
    throw std::invalid_argument("vdc_bound requires Y > 0 and X >= 1");
  }
  double k = pair.kappa().convert_to<double>();
  double l = pair.lambda().convert_to<double>();
  return std::pow(Y, k) * std::pow(X, l) + 1.0 / Y;
}

double lemma7_bound(const ExponentPair& pair, std::uint64_t d, double X,
                    double h1, double h2, double c, double gamma) {
  if (d < 1 || static_cast<double>(d) > X) {
    throw std::invalid_argument("lemma7_bound requires 1 <= d <= X");
  }
  if (!(c > 1 && c < 3) || c == 2) {
    throw std::invalid_argument("lemma7_bound requires 1 < c < 3, c != 2");
  }
  if (!(gamma > 0.5 && gamma < 1)) {
    throw std::invalid_argument("lemma7_bound requires 1/2 < gamma < 1");
  }
  double trivial = X / static_cast<double>(d);
  double a1 = std::fabs(h1);
  double a2 = std::fabs(h2);
  if (a1 == 0 && a2 == 0) {
    return trivial;
  }
  double k = pair.kappa().convert_to<double>();
  double l = pair.lambda().convert_to<double>();
  double dd = static_cast<double>(d);
  double deriv = a1 * dd * std::pow(X, c - 1) + a2 * dd * std::pow(X, gamma - 1);
  double dkl = std::pow(dd, k - l);
  double bound = 1.0 / deriv;
  if (a1 > 0) {
    bound += dkl * std::pow(a1, k) * std::pow(X, k * c - k + l);
  }
  if (a2 > 0) {
    bound += dkl * std::pow(a2, k) * std::pow(X, k * gamma - k + l);
  }
  return std::min(trivial, bound);
}

}  // namespace pslab
