#include "pslab/expsum_lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <thread>

namespace pslab {
namespace {

unsigned bits_to_digits10(unsigned bits) {
  if (bits < 24) bits = 24;
  return static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 2;
}

MpFloat two_pi() {
  return 8 * atan(MpFloat(1));
}

// e(x) = exp(2 pi i x); the argument is reduced mod 1 before sin/cos.
// Callers in hot loops pass a precomputed 2 pi.
MpComplex unit_phase(const MpFloat& x, const MpFloat& tp) {
  MpFloat frac = x - floor(x);
  MpFloat ang = tp * frac;
  return {cos(ang), sin(ang)};
}

}  // namespace

ScopedPrecision::ScopedPrecision(unsigned bits)
    : saved_digits_(MpFloat::default_precision()) {
  MpFloat::default_precision(bits_to_digits10(bits));
}

ScopedPrecision::~ScopedPrecision() {
  MpFloat::default_precision(saved_digits_);
}

MpFloat MpComplex::abs() const {
  return sqrt(re * re + im * im);
}

double psi(double t) {
  double f = t - std::floor(t);
  if (f >= 1.0) f = 0.0;
  return f - 0.5;
}

MpFloat psi_mp(const MpFloat& t) {
  MpFloat f = t - floor(t);
  if (f >= 1) f = 0;
  return f - MpFloat(1) / 2;
}

PsiTruncation psi_truncation_error(double t, unsigned H, unsigned prec_bits) {
  if (H < 1) throw std::invalid_argument("psi truncation requires H >= 1");
  ScopedPrecision guard(prec_bits);
  double f = t - std::floor(t);
  if (f >= 1.0) f = 0.0;
  // Conjugate h and -h terms pair to -sin(2 pi h t)/(pi h).
  MpFloat fm(f);
  MpFloat pi = two_pi() / 2;
  MpFloat series = 0;
  for (unsigned h = 1; h <= H; ++h) {
    MpFloat arg = 2 * pi * h * fm;
    series -= sin(arg) / (pi * h);
  }
  MpFloat err = series - (fm - MpFloat(1) / 2);
  double dist = std::min(f, 1.0 - f);
  double envelope =
      dist == 0.0 ? 1.0 : std::min(1.0, 1.0 / (static_cast<double>(H) * dist));
  return {series.convert_to<double>(), err.convert_to<double>(), envelope};
}

namespace {

MpComplex simpson(const MpFloat& h, const MpComplex& fa, const MpComplex& fm,
                  const MpComplex& fb) {
  return {(fa.re + 4 * fm.re + fb.re) * h / 6,
          (fa.im + 4 * fm.im + fb.im) * h / 6};
}

template <typename F>
MpComplex adaptive_simpson(const F& f, const MpFloat& a, const MpFloat& b,
                           const MpComplex& fa, const MpComplex& fm,
                           const MpComplex& fb, const MpComplex& whole,
                           const MpFloat& tol, int depth) {
  if (depth <= 0) {
    throw std::runtime_error(
        "main_term_integral: refinement did not converge within depth limit");
  }
  MpFloat m = (a + b) / 2;
  MpFloat lm = (a + m) / 2;
  MpFloat rm = (m + b) / 2;
  MpComplex flm = f(lm);
  MpComplex frm = f(rm);
  MpFloat h2 = (m - a);
  MpComplex left = simpson(h2, fa, flm, fm);
  MpComplex right = simpson(h2, fm, frm, fb);
  MpComplex sum{left.re + right.re, left.im + right.im};
  MpComplex err = sum - whole;
  if (boost::multiprecision::abs(err.re) +
          boost::multiprecision::abs(err.im) <=
      15 * tol) {
    return {sum.re + err.re / 15, sum.im + err.im / 15};
  }
  MpFloat half_tol = tol / 2;
  MpComplex l = adaptive_simpson(f, a, m, fa, flm, fm, left, half_tol,
                                 depth - 1);
  MpComplex r = adaptive_simpson(f, m, b, fm, frm, fb, right, half_tol,
                                 depth - 1);
  return {l.re + r.re, l.im + r.im};
}

}  // namespace

MpComplex main_term_integral(std::uint64_t X, double t, double c,
                             unsigned prec_bits, int max_depth) {
  if (X < 3) throw std::invalid_argument("main_term_integral requires X >= 3");
  ScopedPrecision guard(prec_bits);
  MpFloat lo(2), hi(static_cast<double>(X));
  if (t == 0.0) {
    return {hi - lo, MpFloat(0)};
  }
  MpFloat tm(t), cm(c), tp = two_pi();
  auto f = [&](const MpFloat& y) { return unit_phase(tm * pow(y, cm), tp); };

  double total_phase =
      std::fabs(t) * (std::pow(static_cast<double>(X), c) - std::pow(2.0, c));
  auto panels = static_cast<std::uint64_t>(
      std::clamp(std::ceil(8.0 * (total_phase + 1.0)), 16.0, 1048576.0));
  MpFloat width = (hi - lo) / panels;
  MpFloat panel_tol = MpFloat(1e-8) * (hi - lo) / panels;

  MpComplex total{MpFloat(0), MpFloat(0)};
  MpComplex fa = f(lo);
  for (std::uint64_t i = 0; i < panels; ++i) {
    MpFloat a = lo + width * i;
    MpFloat b = (i + 1 == panels) ? hi : lo + width * (i + 1);
    MpFloat m = (a + b) / 2;
    MpComplex fm = f(m);
    MpComplex fb = f(b);
    MpComplex whole = simpson(b - a, fa, fm, fb);
    total += adaptive_simpson(f, a, b, fa, fm, fb, whole, panel_tol, max_depth);
    fa = fb;
  }
  return total;
}

void SumSpec::validate() const {
  if (X < 3) throw std::invalid_argument("SumSpec: X >= 3 required");
  if (!(c > 1 && c < 3) || c == 2) {
    throw std::invalid_argument("SumSpec: c must lie in (1,3) with c != 2");
  }
  double ceiling = std::pow(static_cast<double>(X), 0.25 - c);
  if (!(std::fabs(t) < ceiling)) {
    throw std::invalid_argument("SumSpec: |t| must be below X^{1/4-c}");
  }
  if (a == 0) throw std::invalid_argument("SumSpec: a must be nonzero");
  if (D < 1) throw std::invalid_argument("SumSpec: D >= 1 required");
  if (workers < 1) throw std::invalid_argument("SumSpec: workers >= 1");
}

namespace {

constexpr std::uint64_t kScanSegment = std::uint64_t(1) << 17;

// Per-prime contributions for the three weight conventions, already
// multiplied by p^{1-g} log p and the phase factor e(t p^c).
struct Contribution {
  bool is_ps;  // indicator value
  MpComplex ind;
  MpComplex smooth;
  MpComplex psi_part;
};

// Shared scan: one pass over primes p <= X computing, per modulus in
// `mods`, ordered totals for all three weight kinds. Work is split into
// fixed segments; workers own disjoint segments and results are merged
// in segment order, so output is independent of the worker count.
std::vector<std::array<MpComplex, 3>> scan_progressions(
    const SumSpec& spec, const std::vector<std::uint64_t>& mods) {
  const PsGamma& g = spec.gamma;
  MpFloat gm = MpFloat(g.u) / g.v;
  MpFloat one_minus_g = 1 - gm;
  MpFloat tm(spec.t), cm(spec.c), tp = two_pi();
  bool have_phase = spec.t != 0.0;

  std::vector<std::uint64_t> residues(mods.size());
  for (std::size_t i = 0; i < mods.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(mods[i]);
    residues[i] = static_cast<std::uint64_t>(((spec.a % d) + d) % d);
  }

  std::uint64_t nseg = (spec.X - 2) / kScanSegment + 1;
  using Accum = std::vector<std::array<MpComplex, 3>>;
  std::vector<Accum> partial(nseg);

  auto run_segment = [&](std::uint64_t s) {
    std::uint64_t lo = 2 + s * kScanSegment;
    std::uint64_t hi = std::min(spec.X, lo + kScanSegment - 1);
    Accum acc(mods.size());
    SieveSegment seg = sieve_segment(lo, hi);
    for (std::uint64_t p = lo; p <= hi; ++p) {
      if (!seg.is_prime[p - lo]) continue;
      MpFloat lp = log(MpFloat(p));
      MpFloat pg, p1g;
      std::int64_t ind;
      MpFloat psid;
      if (g.is_one()) {
        pg = p;
        p1g = p + 1;
        ind = 1;
        psid = 0;
      } else {
        pg = exp(gm * lp);
        p1g = exp(gm * log(MpFloat(p + 1)));
        std::uint64_t m1 =
            ps_ceil_root(p, g).convert_to<std::uint64_t>();
        std::uint64_t m2 =
            ps_ceil_root(p + 1, g).convert_to<std::uint64_t>();
        ind = static_cast<std::int64_t>(m2 - m1);
        // psi(-x) = m - x - 1/2 when m-1 < x <= m with m decided by the
        // exact integer-root bracket, so the discontinuity side is never
        // misclassified in floating point.
        psid = (MpFloat(m2) - p1g) - (MpFloat(m1) - pg);
      }
      MpFloat w = exp(one_minus_g * lp) * lp;
      MpComplex e{MpFloat(1), MpFloat(0)};
      if (have_phase) e = unit_phase(tm * exp(cm * lp), tp);
      MpFloat delta = p1g - pg;
      for (std::size_t i = 0; i < mods.size(); ++i) {
        if (p % mods[i] != residues[i]) continue;
        if (ind != 0) {
          acc[i][0] += {w * e.re, w * e.im};
        }
        MpFloat ws = w * delta;
        acc[i][1] += {ws * e.re, ws * e.im};
        MpFloat wp = w * psid;
        acc[i][2] += {wp * e.re, wp * e.im};
      }
    }
    partial[s] = std::move(acc);
  };

  unsigned workers = std::max(1u, spec.workers);
  if (workers == 1 || nseg == 1) {
    for (std::uint64_t s = 0; s < nseg; ++s) run_segment(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t s = w; s < nseg; s += workers) run_segment(s);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<std::array<MpComplex, 3>> totals(mods.size());
  for (std::uint64_t s = 0; s < nseg; ++s) {
    for (std::size_t i = 0; i < mods.size(); ++i) {
      for (int k = 0; k < 3; ++k) totals[i][k] += partial[s][i][k];
    }
  }
  return totals;
}

}  // namespace

MpComplex ps_progression_sum(const SumSpec& spec, std::uint64_t d,
                             WeightKind kind) {
  if (d < 1) throw std::invalid_argument("ps_progression_sum requires d >= 1");
  ScopedPrecision guard(spec.precision_bits);
  auto totals = scan_progressions(spec, {d});
  return totals.front()[static_cast<int>(kind)];
}

DiscrepancyReport bv_statistic(const SumSpec& spec) {
  spec.validate();
  ScopedPrecision guard(spec.precision_bits);

  std::uint64_t abs_a = static_cast<std::uint64_t>(
      spec.a < 0 ? -spec.a : spec.a);
  std::vector<std::uint64_t> mods;
  for (std::uint64_t d = 1; d <= spec.D; ++d) {
    if (std::gcd(d, abs_a) == 1) mods.push_back(d);
  }

  auto totals = scan_progressions(spec, mods);
  MpComplex integral = main_term_integral(spec.X, spec.t, spec.c,
                                          spec.precision_bits);
  MpFloat gm = MpFloat(spec.gamma.u) / spec.gamma.v;

  DiscrepancyReport report;
  report.total = 0;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    ModulusRow row;
    row.d = mods[i];
    row.phi_d = euler_phi(mods[i]);
    row.sum = totals[i][0];
    MpFloat scale = gm / row.phi_d;
    row.main = {scale * integral.re, scale * integral.im};
    MpComplex err = row.sum - row.main;
    row.abs_err = err.abs();
    row.err_smooth = totals[i][1] - row.main;
    row.err_psi = totals[i][2];
    report.total += row.abs_err;
    report.rows.push_back(std::move(row));
  }
  double total_d = report.total.convert_to<double>();
  double logx = std::log(static_cast<double>(spec.X));
  report.normalized = total_d / static_cast<double>(spec.X);
  report.normalized_logA =
      total_d * std::pow(logx, spec.A) / static_cast<double>(spec.X);
  return report;
}

MpComplex psi_component_sum(std::uint64_t N, std::uint64_t d, std::int64_t a,
                            double t, double c, const PsGamma& gamma,
                            unsigned prec_bits, std::uint64_t budget) {
  if (N < 1 || d < 1) {
    throw std::invalid_argument("psi_component_sum requires N, d >= 1");
  }
  if (2 * N > budget) {
    throw BudgetError("psi_component_sum: 2N exceeds Lambda table budget");
  }
  ScopedPrecision guard(prec_bits);
  MpComplex total{MpFloat(0), MpFloat(0)};
  if (gamma.is_one()) {
    // Both psi arguments are integers; the difference vanishes.
    return total;
  }
  std::int64_t dd = static_cast<std::int64_t>(d);
  auto residue = static_cast<std::uint64_t>(((a % dd) + dd) % dd);
  MpFloat gm = MpFloat(gamma.u) / gamma.v;
  MpFloat tm(t), cm(c), tp = two_pi();
  bool have_phase = t != 0.0;
  for (const auto& [n, lam] : von_mangoldt_in(N + 1, 2 * N)) {
    if (n % d != residue) continue;
    MpFloat ng = exp(gm * log(MpFloat(n)));
    MpFloat n1g = exp(gm * log(MpFloat(n + 1)));
    std::uint64_t m1 = ps_ceil_root(n, gamma).convert_to<std::uint64_t>();
    std::uint64_t m2 = ps_ceil_root(n + 1, gamma).convert_to<std::uint64_t>();
    MpFloat psid = (MpFloat(m2) - n1g) - (MpFloat(m1) - ng);
    MpComplex e{MpFloat(1), MpFloat(0)};
    if (have_phase) e = unit_phase(tm * exp(cm * log(MpFloat(n))), tp);
    MpFloat w = MpFloat(lam) * psid;
    total += {w * e.re, w * e.im};
  }
  return total;
}

NDeltaResult ndelta_count(const NDeltaQuery& q, std::uint64_t budget) {
  if (q.H < 1 || q.N < 1 || !(q.Delta > 0)) {
    throw std::invalid_argument("ndelta_count requires H, N >= 1, Delta > 0");
  }
  if (q.H * q.N > budget) {
    throw BudgetError("ndelta_count: H*N exceeds brute-force budget");
  }
  long double g = static_cast<long double>(q.gamma.u) / q.gamma.v;
  std::vector<long double> npow(q.N);
  for (std::uint64_t i = 0; i < q.N; ++i) {
    npow[i] = powl(static_cast<long double>(q.N + 1 + i), g);
  }
  auto delta = static_cast<long double>(q.Delta);
  std::uint64_t count = 0;
  for (std::uint64_t h1 = q.H + 1; h1 <= 2 * q.H; ++h1) {
    for (std::uint64_t i1 = 0; i1 < q.N; ++i1) {
      long double lhs = h1 * npow[i1];
      for (std::uint64_t h2 = q.H + 1; h2 <= 2 * q.H; ++h2) {
        for (std::uint64_t i2 = 0; i2 < q.N; ++i2) {
          if (fabsl(lhs - h2 * npow[i2]) <= delta) ++count;
        }
      }
    }
  }
  double H = static_cast<double>(q.H);
  double N = static_cast<double>(q.N);
  double gd = static_cast<double>(g);
  double envelope =
      q.Delta * H * std::pow(N, 2.0 - gd) + H * N * std::log(2.0 * H * N);
  return {count, static_cast<double>(count) / envelope};
}

Lemma7Result lemma7_check(const ExponentPair& pair, std::uint64_t d,
                          std::int64_t a, std::uint64_t X, double h1,
                          double h2, double c, const PsGamma& gamma,
                          unsigned prec_bits) {
  if (d < 1 || X < 1) {
    throw std::invalid_argument("lemma7_check requires d, X >= 1");
  }
  if (X > 10000000ull / d) {
    throw BudgetError("lemma7_check: X exceeds direct-summation budget");
  }
  ScopedPrecision guard(prec_bits);
  std::int64_t dd = static_cast<std::int64_t>(d);
  auto residue = static_cast<std::uint64_t>(((a % dd) + dd) % dd);
  MpFloat gm = MpFloat(gamma.u) / gamma.v;
  MpFloat h1m(h1), h2m(h2), cm(c), tp = two_pi();
  MpComplex sum{MpFloat(0), MpFloat(0)};
  std::uint64_t n = X + 1;
  if (n % d != residue) n += (residue + d - n % d) % d;
  for (; n <= 2 * X; n += d) {
    MpFloat ln = log(MpFloat(n));
    MpFloat ph = h1m * exp(cm * ln) + h2m * exp(gm * ln);
    sum += unit_phase(ph, tp);
  }
  double direct = sum.abs().convert_to<double>();
  double gd = static_cast<double>(gamma.u) / gamma.v;
  double bound = lemma7_bound(pair, d, static_cast<double>(X), h1, h2, c, gd);
  return {direct, bound, direct / bound};
}

}  // namespace pslab
