#include "pslab/ps_arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>

namespace pslab {
namespace {

constexpr std::uint64_t kSegmentSize = std::uint64_t(1) << 20;

// Primes up to n by a plain sieve; used for the base primes of the
// segmented sieve and as the trial-division oracle's complement.
std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<std::uint8_t> is_prime(n + 1, 1);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!is_prime[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) is_prime[j] = 0;
  }
  return primes;
}

std::uint64_t isqrt64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void sieve_into(std::uint64_t lo, std::uint64_t hi,
                const std::vector<std::uint64_t>& base,
                std::vector<std::uint8_t>& bitmap) {
  bitmap.assign(hi - lo + 1, 1);
  for (std::uint64_t i = lo; i < std::min<std::uint64_t>(hi + 1, 2); ++i) {
    bitmap[i - lo] = 0;
  }
  for (std::uint64_t p : base) {
    if (p * p > hi) break;
    std::uint64_t first = std::max(p * p, ((lo + p - 1) / p) * p);
    for (std::uint64_t j = first; j <= hi; j += p) bitmap[j - lo] = 0;
  }
}

bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t i = 3; i * i <= n; i += 2) {
    if (n % i == 0) return false;
  }
  return true;
}

// Factorization into (prime, multiplicity), trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> fac;
  for (std::uint64_t p : {std::uint64_t(2), std::uint64_t(3), std::uint64_t(5)}) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      fac.emplace_back(p, e);
    }
  }
  static constexpr unsigned wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
  std::uint64_t p = 7;
  unsigned w = 0;
  while (p * p <= n) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      fac.emplace_back(p, e);
    }
    p += wheel[w];
    w = (w + 1) & 7;
  }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn,
                    std::uint64_t budget) {
  if (lo > hi) return;
  if (hi - lo > budget) {
    throw BudgetError("prime range exceeds sieve budget");
  }
  auto base = small_primes(std::max<std::uint64_t>(isqrt64(hi), 2));
  std::vector<std::uint8_t> bitmap;
  for (std::uint64_t seg_lo = lo; seg_lo <= hi;) {
    std::uint64_t seg_hi = std::min(hi, seg_lo + kSegmentSize - 1);
    sieve_into(seg_lo, seg_hi, base, bitmap);
    for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
      if (bitmap[n - seg_lo]) fn(n);
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::uint64_t budget) {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, [&](std::uint64_t p) { out.push_back(p); }, budget);
  return out;
}

std::uint64_t euler_phi(std::uint64_t d) {
  if (d == 0) throw std::invalid_argument("euler_phi requires d >= 1");
  std::uint64_t result = d;
  for (auto [p, e] : factorize(d)) {
    result -= result / p;
  }
  return result;
}

std::uint64_t divisor_tau(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisor_tau requires n >= 1");
  std::uint64_t t = 1;
  for (auto [p, e] : factorize(n)) t *= e + 1;
  return t;
}

double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  auto fac = factorize(n);
  if (fac.size() != 1) return 0.0;
  return std::log(static_cast<double>(fac.front().first));
}

std::vector<std::pair<std::uint64_t, double>> von_mangoldt_in(
    std::uint64_t lo, std::uint64_t hi, std::uint64_t budget) {
  std::vector<std::pair<std::uint64_t, double>> out;
  for_each_prime(lo, hi,
                 [&](std::uint64_t p) {
                   out.emplace_back(p, std::log(static_cast<double>(p)));
                 },
                 budget);
  // Proper prime powers p^k <= hi exist only for p <= sqrt(hi).
  for (std::uint64_t p = 2; p * p <= hi; ++p) {
    if (!trial_is_prime(p)) continue;
    double logp = std::log(static_cast<double>(p));
    for (std::uint64_t q = p * p;; q *= p) {
      if (q >= lo && q <= hi) out.emplace_back(q, logp);
      if (q > hi / p) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PsGamma::PsGamma(std::uint64_t u_, std::uint64_t v_) : u(u_), v(v_) {
  if (u == 0 || v == 0 || std::gcd(u, v) != 1) {
    throw std::invalid_argument("PsGamma requires gcd(u, v) = 1, u, v >= 1");
  }
  if (2 * u <= v || u > v) {
    throw std::invalid_argument("PsGamma requires 1/2 < u/v <= 1");
  }
}

BigInt ps_ceil_root(std::uint64_t n, const PsGamma& gamma) {
  BigInt base(n);
  return int_nth_root_ceil(pow(base, static_cast<unsigned>(gamma.u)),
                           static_cast<unsigned>(gamma.v));
}

int ps_indicator(std::uint64_t n, const PsGamma& gamma) {
  if (n == 0) throw std::invalid_argument("ps_indicator requires n >= 1");
  if (gamma.is_one()) return 1;
  BigInt lo = ps_ceil_root(n, gamma);
  BigInt hi = ps_ceil_root(n + 1, gamma);
  return static_cast<int>(hi - lo);
}

PsCount count_ps_primes(std::uint64_t X, const PsGamma& gamma,
                        std::uint64_t budget) {
  if (X < 2) throw std::invalid_argument("count_ps_primes requires X >= 2");
  PsCount result{0, 0.0};
  double g = static_cast<double>(gamma.u) / static_cast<double>(gamma.v);
  for_each_prime(
      2, X,
      [&](std::uint64_t p) {
        if (ps_indicator(p, gamma)) ++result.count;
        double pd = static_cast<double>(p);
        result.smooth += std::pow(pd + 1.0, g) - std::pow(pd, g);
      },
      budget);
  return result;
}

SieveSegment sieve_segment(std::uint64_t lo, std::uint64_t hi,
                           std::uint64_t budget) {
  if (lo > hi || hi - lo > budget) {
    throw BudgetError("segment range exceeds sieve budget");
  }
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  auto base = small_primes(std::max<std::uint64_t>(isqrt64(hi), 2));
  sieve_into(lo, hi, base, seg.is_prime);
  return seg;
}

namespace {
constexpr char kCacheMagic[4] = {'P', 'S', 'S', 'G'};
constexpr std::uint32_t kCacheVersion = 1;
}  // namespace

void save_segment(const SieveSegment& seg, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write segment cache: " + path);
  out.write(kCacheMagic, 4);
  out.write(reinterpret_cast<const char*>(&kCacheVersion), 4);
  out.write(reinterpret_cast<const char*>(&seg.lo), 8);
  out.write(reinterpret_cast<const char*>(&seg.hi), 8);
  out.write(reinterpret_cast<const char*>(seg.is_prime.data()),
            static_cast<std::streamsize>(seg.is_prime.size()));
  if (!out) throw std::runtime_error("short write to segment cache: " + path);
}

SieveSegment load_segment(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read segment cache: " + path);
  char magic[4];
  std::uint32_t version = 0;
  SieveSegment seg;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&seg.lo), 8);
  in.read(reinterpret_cast<char*>(&seg.hi), 8);
  if (!in || std::memcmp(magic, kCacheMagic, 4) != 0) {
    throw std::runtime_error("bad segment cache header: " + path);
  }
  if (version != kCacheVersion) {
    throw std::runtime_error("unsupported segment cache version");
  }
  if (seg.hi < seg.lo) throw std::runtime_error("corrupt segment bounds");
  seg.is_prime.resize(seg.hi - seg.lo + 1);
  in.read(reinterpret_cast<char*>(seg.is_prime.data()),
          static_cast<std::streamsize>(seg.is_prime.size()));
  if (!in) throw std::runtime_error("truncated segment cache: " + path);
  return seg;
}

bool self_check_segment(const SieveSegment& seg, unsigned samples,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(seg.lo, seg.hi);
  for (unsigned i = 0; i < samples; ++i) {
    std::uint64_t n = dist(rng);
    if ((seg.is_prime[n - seg.lo] != 0) != trial_is_prime(n)) return false;
  }
  return true;
}

}  // namespace pslab
