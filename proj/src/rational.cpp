#include "pslab/rational.hpp"

namespace pslab {

Rational checked_div(const Rational& x, const Rational& y) {
  if (y == 0) {
    throw std::domain_error("rational division by zero");
  }
  return x / y;
}

Rational parse_rational(std::string_view s) {
  if (s.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  auto slash = s.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(s)));
    }
    BigInt num(std::string(s.substr(0, slash)));
    BigInt den(std::string(s.substr(slash + 1)));
    if (den == 0) {
      throw std::invalid_argument("zero denominator");
    }
    return checked_div(Rational(num), Rational(den));
  } catch (const std::domain_error&) {
    throw std::invalid_argument("zero denominator in rational literal: " +
                                std::string(s));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: " +
                                std::string(s));
  }
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) {
    return numerator(r).str();
  }
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt int_nth_root_ceil(const BigInt& n, unsigned v) {
  if (v == 0) {
    throw std::invalid_argument("nth root requires v >= 1");
  }
  if (n < 0) {
    throw std::invalid_argument("nth root requires n >= 0");
  }
  if (n == 0) {
    return 0;
  }
  BigInt r;
  int exact = mpz_root(r.backend().data(), n.backend().data(), v);
  return exact ? r : r + 1;
}

}  // namespace pslab
