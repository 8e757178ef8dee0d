#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "pslab/expsum_lab.hpp"
#include "pslab/ps_arith.hpp"

using namespace pslab;

namespace {

double dbl(const MpFloat& x) { return x.convert_to<double>(); }

SumSpec base_spec() {
  SumSpec s{1000, PsGamma(9, 10), 1.5, 0.0, 1, 1};
  return s;
}

}  // namespace

TEST_CASE("psi goldens") {
  CHECK(psi(0.75) == 0.25);
  CHECK(psi(7.0) == -0.5);
  CHECK(psi(0.0) == -0.5);
  CHECK(psi(-0.25) == 0.25);
  CHECK(dbl(psi_mp(MpFloat(3) / 4)) == 0.25);
  CHECK(dbl(psi_mp(MpFloat(7))) == -0.5);
}

TEST_CASE("psi odd symmetry off the integers") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 10000; ++i) {
    double t = dist(rng) + static_cast<double>(i % 7) - 3.0;
    CHECK(std::fabs(psi(t) + psi(-t)) < 1e-12);
  }
}

TEST_CASE("psi truncation at integer points") {
  for (double t : {0.0, 1.0, -3.0, 42.0}) {
    PsiTruncation r = psi_truncation_error(t, 16);
    CHECK(r.series == 0.0);
    CHECK(r.error == 0.5);
    CHECK(r.envelope == 1.0);
  }
  CHECK_THROWS_AS(psi_truncation_error(0.5, 0), std::invalid_argument);
}

TEST_CASE("psi truncation converges at t = 1/2 and 1/3") {
  PsiTruncation half = psi_truncation_error(0.5, 100);
  CHECK(std::fabs(half.series) < 1e-20);
  CHECK(std::fabs(half.error) < 1e-20);

  double prev = 1.0;
  for (unsigned H : {8u, 64u, 512u, 4096u}) {
    PsiTruncation r = psi_truncation_error(1.0 / 3.0, H);
    CHECK(std::fabs(r.error) < prev);
    prev = std::fabs(r.error);
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("psi truncation error stays within a small multiple of the envelope") {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double sup = 0.0;
  for (int i = 0; i < 2000; ++i) {
    PsiTruncation r = psi_truncation_error(dist(rng), 64);
    sup = std::max(sup, std::fabs(r.error) / r.envelope);
  }
  MESSAGE("sup |error|/envelope at H=64: " << sup);
  CHECK(sup <= 4.0);
}

TEST_CASE("main_term_integral at t = 0 is exactly X - 2") {
  MpComplex v = main_term_integral(1000, 0.0, 1.5);
  CHECK(v.re == 998);
  CHECK(v.im == 0);
  CHECK_THROWS_AS(main_term_integral(2, 0.0, 1.5), std::invalid_argument);
}

TEST_CASE("main_term_integral conjugation symmetry") {
  double t = 1e-5;
  MpComplex plus = main_term_integral(10000, t, 1.5);
  MpComplex minus = main_term_integral(10000, -t, 1.5);
  CHECK(dbl(plus.re - minus.re) == doctest::Approx(0.0).epsilon(1e-18));
  CHECK(dbl(plus.im + minus.im) == doctest::Approx(0.0).epsilon(1e-18));
}

TEST_CASE("main_term_integral matches a fine Riemann oracle") {
  std::uint64_t X = 10000;
  double c = 1.5;
  double t = std::pow(static_cast<double>(X), 0.25 - c) / 2;
  MpComplex fine = main_term_integral(X, t, c);

  const std::uint64_t steps = 10000000;
  double h = (static_cast<double>(X) - 2.0) / steps;
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t i = 0; i < steps; ++i) {
    double y = 2.0 + (static_cast<double>(i) + 0.5) * h;
    double phase = 2.0 * M_PI * t * std::pow(y, c);
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  acc *= h;

  double mag = std::abs(acc);
  REQUIRE(mag > 0);
  CHECK(std::fabs(dbl(fine.re) - acc.real()) / mag < 1e-6);
  CHECK(std::fabs(dbl(fine.im) - acc.imag()) / mag < 1e-6);
}

TEST_CASE("SumSpec validation") {
  CHECK_NOTHROW(base_spec().validate());
  SumSpec s = base_spec();
  s.X = 2;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.c = 2.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.c = 3.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.t = 1.0;  // far above X^{1/4-c}
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.a = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_spec();
  s.D = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("ps_progression_sum four-prime golden") {
  SumSpec s{10, PsGamma(1, 1), 1.5, 0.0, 1, 1};
  MpComplex v = ps_progression_sum(s, 1);
  double expect = std::log(2.0) + std::log(3.0) + std::log(5.0) + std::log(7.0);
  CHECK(dbl(v.re) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(dbl(v.re) == doctest::Approx(5.34710753).epsilon(1e-8));
  CHECK(v.im == 0);
}

TEST_CASE("ps_progression_sum empty residue class") {
  SumSpec s{10, PsGamma(1, 1), 1.5, 0.0, 99, 1};
  MpComplex v = ps_progression_sum(s, 100);
  CHECK(v.re == 0);
  CHECK(v.im == 0);
}

TEST_CASE("residue classes partition the d = 1 sum") {
  SumSpec s{2000, PsGamma(9, 10), 1.5, 1e-5, 1, 1};
  MpComplex whole = ps_progression_sum(s, 1);
  MpComplex parts{MpFloat(0), MpFloat(0)};
  std::uint64_t d = 3;
  for (std::uint64_t a = 1; a <= d; ++a) {
    SumSpec sa = s;
    sa.a = static_cast<std::int64_t>(a);
    parts += ps_progression_sum(sa, d);
  }
  CHECK(std::fabs(dbl(whole.re - parts.re)) < 1e-25);
  CHECK(std::fabs(dbl(whole.im - parts.im)) < 1e-25);
}

TEST_CASE("ps_progression_sum is deterministic and worker independent") {
  SumSpec s{300000, PsGamma(9, 10), 1.5, 1e-7, 1, 1};
  MpComplex once = ps_progression_sum(s, 3);
  MpComplex twice = ps_progression_sum(s, 3);
  CHECK(once.re == twice.re);
  CHECK(once.im == twice.im);
  SumSpec par = s;
  par.workers = 4;
  MpComplex parallel = ps_progression_sum(par, 3);
  CHECK(once.re == parallel.re);
  CHECK(once.im == parallel.im);
}

TEST_CASE("bv_statistic reduces to the classical discrepancy at gamma=1, t=0") {
  SumSpec s{1000, PsGamma(1, 1), 1.5, 0.0, 1, 5};
  DiscrepancyReport report = bv_statistic(s);
  REQUIRE(report.rows.size() == 5);

  // independent recomputation: trial-division primes, gcd-counted phi
  double check_total = 0.0;
  for (std::uint64_t d = 1; d <= 5; ++d) {
    double logsum = 0.0;
    for (std::uint64_t n = 2; n <= 1000; ++n) {
      bool prime = true;
      for (std::uint64_t k = 2; k * k <= n; ++k) {
        if (n % k == 0) { prime = false; break; }
      }
      if (prime && n % d == 1 % d) logsum += std::log(static_cast<double>(n));
    }
    std::uint64_t phi = 0;
    for (std::uint64_t r = 1; r <= d; ++r) {
      if (std::gcd(r, d) == 1) ++phi;
    }
    double err = logsum - 998.0 / static_cast<double>(phi);
    const ModulusRow& row = report.rows[d - 1];
    CHECK(row.d == d);
    CHECK(row.phi_d == phi);
    CHECK(std::fabs(dbl(row.sum.re) - logsum) / logsum < 1e-12);
    CHECK(std::fabs(dbl(row.abs_err) - std::fabs(err)) <=
          1e-12 * (std::fabs(err) + 1.0));
    check_total += std::fabs(err);
  }
  CHECK(std::fabs(dbl(report.total) - check_total) / check_total < 1e-12);
}

TEST_CASE("bv_statistic drops moduli sharing a factor with a") {
  SumSpec s{1000, PsGamma(1, 1), 1.5, 0.0, 2, 6};
  DiscrepancyReport report = bv_statistic(s);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].d == 1);
  CHECK(report.rows[1].d == 3);
  CHECK(report.rows[2].d == 5);
}

TEST_CASE("bv_statistic splits exactly into smooth and psi parts") {
  SumSpec s{50000, PsGamma(9, 10), 1.5, 0.0, 1, 4};
  s.t = std::pow(50000.0, 0.25 - s.c) / 2;
  DiscrepancyReport report = bv_statistic(s);
  for (const ModulusRow& row : report.rows) {
    MpComplex err = row.sum - row.main;
    MpComplex recombined = row.err_smooth;
    recombined += row.err_psi;
    double scale = dbl(err.abs()) + 1.0;
    CHECK(std::fabs(dbl(err.re - recombined.re)) / scale < 1e-9);
    CHECK(std::fabs(dbl(err.im - recombined.im)) / scale < 1e-9);
  }
  // total is the sum of listed |E(d)|
  MpFloat total = 0;
  for (const ModulusRow& row : report.rows) total += row.abs_err;
  CHECK(std::fabs(dbl(total - report.total)) <= 1e-12 * (dbl(total) + 1.0));
}

TEST_CASE("bv_statistic conjugation symmetry in t") {
  SumSpec s{20000, PsGamma(9, 10), 1.5, 0.0, 1, 3};
  s.t = std::pow(20000.0, 0.25 - s.c) / 3;
  DiscrepancyReport plus = bv_statistic(s);
  s.t = -s.t;
  DiscrepancyReport minus = bv_statistic(s);
  REQUIRE(plus.rows.size() == minus.rows.size());
  for (std::size_t i = 0; i < plus.rows.size(); ++i) {
    CHECK(std::fabs(dbl(plus.rows[i].sum.re - minus.rows[i].sum.re)) < 1e-20);
    CHECK(std::fabs(dbl(plus.rows[i].sum.im + minus.rows[i].sum.im)) < 1e-20);
    CHECK(std::fabs(dbl(plus.rows[i].abs_err - minus.rows[i].abs_err)) <
          1e-15 * (dbl(plus.rows[i].abs_err) + 1.0));
  }
}

TEST_CASE("psi_component_sum vanishes at gamma = 1") {
  MpComplex v = psi_component_sum(100, 1, 1, 0.01, 1.5, PsGamma(1, 1));
  CHECK(v.re == 0);
  CHECK(v.im == 0);
}

TEST_CASE("psi_component_sum block additivity") {
  PsGamma g(9, 10);
  double t = 1e-6, c = 1.5;
  MpComplex first = psi_component_sum(1000, 3, 1, t, c, g);
  MpComplex second = psi_component_sum(2000, 3, 1, t, c, g);
  MpComplex both = first;
  both += second;

  // independent direct loop over (1000, 4000]
  ScopedPrecision guard(128);
  MpFloat gm = MpFloat(9) / 10;
  MpFloat pi = 8 * atan(MpFloat(1)) / 2;
  MpComplex direct{MpFloat(0), MpFloat(0)};
  for (const auto& [n, lam] : von_mangoldt_in(1001, 4000)) {
    if (n % 3 != 1) continue;
    MpFloat ng = exp(gm * log(MpFloat(n)));
    MpFloat n1g = exp(gm * log(MpFloat(n + 1)));
    MpFloat m1(ps_ceil_root(n, g).convert_to<std::uint64_t>());
    MpFloat m2(ps_ceil_root(n + 1, g).convert_to<std::uint64_t>());
    MpFloat psid = (m2 - n1g) - (m1 - ng);
    MpFloat ang = 2 * pi * MpFloat(t) * exp(MpFloat(c) * log(MpFloat(n)));
    MpFloat w = MpFloat(lam) * psid;
    direct += {w * cos(ang), w * sin(ang)};
  }
  CHECK(std::fabs(dbl(both.re - direct.re)) < 1e-20);
  CHECK(std::fabs(dbl(both.im - direct.im)) < 1e-20);
}

TEST_CASE("psi_component_sum stable under precision increase") {
  PsGamma g(9, 10);
  MpComplex lo = psi_component_sum(10000, 3, 1, 0.0, 1.5, g, 128);
  MpComplex hi = psi_component_sum(10000, 3, 1, 0.0, 1.5, g, 256);
  CHECK(std::fabs(dbl(lo.re) - dbl(hi.re)) < 1e-9);
  CHECK(std::fabs(dbl(lo.im) - dbl(hi.im)) < 1e-9);
}

TEST_CASE("psi_component_sum budget") {
  CHECK_THROWS_AS(
      psi_component_sum(1000, 1, 1, 0.0, 1.5, PsGamma(9, 10), 128, 100),
      BudgetError);
}

TEST_CASE("ndelta_count goldens") {
  CHECK(ndelta_count({1, 1, 0.5, PsGamma(9, 10)}).count == 1);
  CHECK(ndelta_count({1, 2, 2.0, PsGamma(9, 10)}).count == 4);

  // Delta beyond the full range captures every tuple
  NDeltaQuery all{3, 5, 1000.0, PsGamma(9, 10)};
  CHECK(ndelta_count(all).count == 15 * 15);

  CHECK_THROWS_AS(ndelta_count({0, 1, 1.0, PsGamma(9, 10)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ndelta_count({200, 200, 1.0, PsGamma(9, 10)}), BudgetError);
}

TEST_CASE("ndelta_count monotone in Delta with a diagonal floor") {
  for (const PsGamma& g : {PsGamma(9, 10), PsGamma(99, 100)}) {
    for (std::uint64_t H : {std::uint64_t(1), std::uint64_t(4)}) {
      for (std::uint64_t N : {std::uint64_t(3), std::uint64_t(16)}) {
        std::uint64_t prev = 0;
        for (double Delta : {1e-3, 1e-1, 1.0, 10.0}) {
          NDeltaResult r = ndelta_count({H, N, Delta, g});
          CHECK(r.count >= H * N);
          CHECK(r.count >= prev);
          CHECK(r.bound_ratio > 0);
          prev = r.count;
        }
      }
    }
  }
}

TEST_CASE("lemma7_check degenerate phase gives ratio 1") {
  ExponentPair p(Rational(13, 194), Rational(152, 194));
  Lemma7Result r = lemma7_check(p, 1, 1, 1000, 0.0, 0.0, 1.5, PsGamma(9, 10));
  CHECK(r.direct_abs == 1000.0);
  CHECK(r.bound == 1000.0);
  CHECK(r.ratio == 1.0);
}

TEST_CASE("lemma7_check reported ratios stay modest") {
  ExponentPair p(Rational(13, 194), Rational(152, 194));
  Lemma7Result a = lemma7_check(p, 1, 0, 10000, 0.0, 1.0, 1.5, PsGamma(9, 10));
  MESSAGE("d=1 h2=1 ratio: " << a.ratio);
  CHECK(a.ratio <= 8.0);
  Lemma7Result b = lemma7_check(p, 7, 3, 10000, 1.0, 1.0, 1.5, PsGamma(9, 10));
  MESSAGE("d=7 a=3 ratio: " << b.ratio);
  CHECK(b.ratio <= 8.0);
  CHECK_THROWS_AS(lemma7_check(p, 2, 1, 10000000, 1.0, 1.0, 1.5,
                               PsGamma(9, 10)),
                  BudgetError);
}
