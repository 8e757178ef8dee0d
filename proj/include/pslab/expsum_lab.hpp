#ifndef PSLAB_EXPSUM_LAB_HPP
#define PSLAB_EXPSUM_LAB_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <vector>

#include "pslab/exponent_pair.hpp"
#include "pslab/ps_arith.hpp"
#include "pslab/rational.hpp"

namespace pslab {

// Variable-precision float; precision is process-wide, see ScopedPrecision.
using MpFloat = boost::multiprecision::mpfr_float;

// Sets the working significand size for MpFloat for the guard's lifetime.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_digits_;
};

struct MpComplex {
  MpFloat re;
  MpFloat im;

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
  MpFloat abs() const;
};

// Sawtooth {t} - 1/2 with {t} in [0, 1); -1/2 at integers.
double psi(double t);
MpFloat psi_mp(const MpFloat& t);

struct PsiTruncation {
  double series;    // -sum_{1<=|h|<=H} e(ht)/(2 pi i h), real by symmetry
  double error;     // series - psi(t)
  double envelope;  // min(1, 1/(H ||t||)), clamped to 1 at ||t|| = 0
};

PsiTruncation psi_truncation_error(double t, unsigned H,
                                   unsigned prec_bits = 128);

// Integral of e(t y^c) over [2, X] by adaptive panel quadrature with at
// least 8 nodes per unit of phase change; absolute error target
// 1e-8 * (X - 2). Throws std::runtime_error if refinement fails to
// converge within the depth limit.
MpComplex main_term_integral(std::uint64_t X, double t, double c,
                             unsigned prec_bits = 128, int max_depth = 40);

// Full parameter set of the discrepancy statistic.
struct SumSpec {
  std::uint64_t X;
  PsGamma gamma;
  double c;
  double t;
  std::int64_t a;
  std::uint64_t D;
  double A = 1.0;               // log power of the normalization
  unsigned precision_bits = 128;
  unsigned workers = 1;

  void validate() const;  // throws std::invalid_argument
};

enum class WeightKind {
  PsIndicator,  // delta_g(p) * p^{1-g} log p
  SmoothDelta,  // ((p+1)^g - p^g) * p^{1-g} log p
  PsiDelta,     // (psi(-(p+1)^g) - psi(-p^g)) * p^{1-g} log p
};

// Sum of weight(p) * e(t p^c) over primes p <= X with p = a (mod d).
// Deterministic ordered accumulation regardless of worker count.
MpComplex ps_progression_sum(const SumSpec& spec, std::uint64_t d,
                             WeightKind kind = WeightKind::PsIndicator);

struct ModulusRow {
  std::uint64_t d;
  std::uint64_t phi_d;
  MpComplex sum;       // indicator-weighted progression sum
  MpComplex main;      // (g / phi(d)) * integral
  MpFloat abs_err;     // |sum - main|
  MpComplex err_smooth;  // smooth-weight sum minus main term
  MpComplex err_psi;     // psi-weight sum (no main term)
};

struct DiscrepancyReport {
  std::vector<ModulusRow> rows;
  MpFloat total;           // sum over rows of |E(d)|
  double normalized_logA;  // total * log^A X / X
  double normalized;       // total / X
};

DiscrepancyReport bv_statistic(const SumSpec& spec);

// Sum over n in (N, 2N], n = a (mod d) of
//   Lambda(n) e(t n^c) (psi(-(n+1)^g) - psi(-n^g)).
MpComplex psi_component_sum(std::uint64_t N, std::uint64_t d, std::int64_t a,
                            double t, double c, const PsGamma& gamma,
                            unsigned prec_bits = 128,
                            std::uint64_t budget = std::uint64_t(1) << 26);

struct NDeltaQuery {
  std::uint64_t H;
  std::uint64_t N;
  double Delta;
  PsGamma gamma;
};

struct NDeltaResult {
  std::uint64_t count;
  double bound_ratio;  // count / (Delta H N^{2-g} + H N log(2HN))
};

// Exact count of |h1 n1^g - h2 n2^g| <= Delta over h ~ H, n ~ N by brute
// force over all quadruples; budget caps H*N.
NDeltaResult ndelta_count(const NDeltaQuery& q, std::uint64_t budget = 10000);

struct Lemma7Result {
  double direct_abs;
  double bound;
  double ratio;
};

// Direct |sum over X < n <= 2X, n = a (mod d) of e(h1 n^c + h2 n^g)|
// against lemma7_bound; the implicit constant is the reported ratio.
Lemma7Result lemma7_check(const ExponentPair& pair, std::uint64_t d,
                          std::int64_t a, std::uint64_t X, double h1,
                          double h2, double c, const PsGamma& gamma,
                          unsigned prec_bits = 128);

}  // namespace pslab

#endif
