#ifndef PSLAB_RATIONAL_HPP
#define PSLAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace pslab {

// Exact arbitrary-precision arithmetic. GMP keeps rationals canonical
// (reduced, positive denominator) after every operation.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Division with division-by-zero reported as an error instead of SIGFPE.
Rational checked_div(const Rational& x, const Rational& y);

// Parses "num/den" or "num". Throws std::invalid_argument on malformed
// input or zero denominator.
Rational parse_rational(std::string_view s);

// "num/den" when den != 1, plain integer otherwise.
std::string rational_to_string(const Rational& r);

// Least m >= 0 with m^v >= n. Exact for arbitrarily large n.
BigInt int_nth_root_ceil(const BigInt& n, unsigned v);

// Affine function of (gamma, theta, mu); the N-exponent of one term in a
// bound chain, with M = N^mu.
struct LinearForm {
  Rational constant;
  Rational coeff_gamma;
  Rational coeff_theta;
  Rational coeff_mu;

  Rational eval(const Rational& gamma, const Rational& theta,
                const Rational& mu) const {
    return constant + coeff_gamma * gamma + coeff_theta * theta +
           coeff_mu * mu;
  }

  bool operator==(const LinearForm&) const = default;
};

}  // namespace pslab

#endif
