#ifndef PSLAB_PS_ARITH_HPP
#define PSLAB_PS_ARITH_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab {

// Raised when a request exceeds the configured work budget (sieve range,
// Lambda table size, brute-force oracle size).
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSieveBudget = std::uint64_t(1) << 31;

// Exactly the primes in [lo, hi], ascending. Throws BudgetError when the
// range exceeds the per-call budget.
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t budget = kDefaultSieveBudget);

// Streaming variant; segments internally, never materializes the range.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    std::uint64_t budget = kDefaultSieveBudget);

std::uint64_t euler_phi(std::uint64_t d);
std::uint64_t divisor_tau(std::uint64_t n);

// log p when n = p^k, else 0.
double von_mangoldt(std::uint64_t n);

// Nonzero values of the von Mangoldt function on [lo, hi] as (n, log p)
// pairs, ascending in n. Prime powers are enumerated directly.
std::vector<std::pair<std::uint64_t, double>> von_mangoldt_in(
    std::uint64_t lo, std::uint64_t hi,
    std::uint64_t budget = kDefaultSieveBudget);

// gamma = u/v in lowest terms with 1/2 < u/v <= 1. Rational gamma keeps
// Piatetski-Shapiro membership a big-integer comparison.
struct PsGamma {
  std::uint64_t u;
  std::uint64_t v;

  PsGamma(std::uint64_t u_, std::uint64_t v_);

  Rational as_rational() const { return Rational(u, v); }
  bool is_one() const { return u == v; }
  bool operator==(const PsGamma&) const = default;
};

// ceil(n^{u/v}) computed exactly from n^u.
BigInt ps_ceil_root(std::uint64_t n, const PsGamma& gamma);

// ceil((n+1)^g) - ceil(n^g); 0 or 1 for g < 1, and 1 exactly when
// n = [m^{1/g}] for some integer m. Always 1 at g = 1.
int ps_indicator(std::uint64_t n, const PsGamma& gamma);

struct PsCount {
  std::uint64_t count;   // primes p <= X with ps_indicator(p) = 1
  double smooth;         // sum over p <= X of (p+1)^g - p^g
};

PsCount count_ps_primes(std::uint64_t X, const PsGamma& gamma,
                        std::uint64_t budget = kDefaultSieveBudget);

// One sieved block; the bitmap marks primality of lo + i.
struct SieveSegment {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::vector<std::uint8_t> is_prime;
};

SieveSegment sieve_segment(std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t budget = kDefaultSieveBudget);

// Advisory binary cache: magic, version, bounds, bitmap.
void save_segment(const SieveSegment& seg, const std::string& path);
SieveSegment load_segment(const std::string& path);

// Compares the bitmap against trial division on `samples` random points.
bool self_check_segment(const SieveSegment& seg, unsigned samples,
                        std::uint64_t seed);

}  // namespace pslab

#endif
