#ifndef PSLAB_EXPONENT_PAIR_HPP
#define PSLAB_EXPONENT_PAIR_HPP

#include <cstdint>
#include <string_view>

#include "pslab/rational.hpp"

namespace pslab {

// Exact (kappa, lambda) in the classical region
//   0 <= kappa <= 1/2,  1/2 <= lambda <= 1,  kappa + lambda <= 1.
// Validated on construction, so every process application re-checks the
// region invariants.
class ExponentPair {
 public:
  ExponentPair(Rational kappa, Rational lambda);

  const Rational& kappa() const { return kappa_; }
  const Rational& lambda() const { return lambda_; }

  bool operator==(const ExponentPair& o) const {
    return kappa_ == o.kappa_ && lambda_ == o.lambda_;
  }

 private:
  Rational kappa_;
  Rational lambda_;
};

// A(k, l) = (k/(2k+2), (k+l+1)/(2k+2))
ExponentPair a_process(const ExponentPair& p);

// B(k, l) = (l - 1/2, k + 1/2); an involution.
ExponentPair b_process(const ExponentPair& p);

// Applies a word over {A, B} to a pair. The usual notation A^4 B(0,1)
// reads as A∘A∘A∘A∘B applied to (0,1), so letters are applied
// right-to-left. A region violation after any step is reported with the
// failing prefix.
ExponentPair apply_word(std::string_view word, const ExponentPair& start);

// Van der Corput bound Y^kappa X^lambda + Y^{-1} for a phase sum over
// (X, 2X] with |f'| of size about Y/X.
double vdc_bound(const ExponentPair& pair, double Y, double X);

// Bound for sums of e(h1 n^c + h2 n^gamma) over X < n <= 2X, n = a (mod d):
//   min(X/d, (|h1| d X^{c-1} + |h2| d X^{g-1})^{-1}
//            + d^{k-l} |h1|^k X^{kc-k+l} + d^{k-l} |h2|^k X^{kg-k+l}).
// Both h1 = h2 = 0 degenerates to X/d.
double lemma7_bound(const ExponentPair& pair, std::uint64_t d, double X,
                    double h1, double h2, double c, double gamma);

}  // namespace pslab

#endif
