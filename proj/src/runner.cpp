#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "pslab/cli.hpp"
#include "pslab/exponent_engine.hpp"
#include "pslab/exponent_pair.hpp"
#include "pslab/expsum_lab.hpp"
#include "pslab/ps_arith.hpp"

namespace pslab {
namespace {

using nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::string& req(const ExperimentConfig& c, const std::string& key) {
  const std::string* v = c.find(key);
  if (!v) {
    throw std::invalid_argument("missing required parameter: " + key);
  }
  return *v;
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.find('/') != std::string::npos) {
    try {
      return parse_rational(s).convert_to<double>();
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid number for " + what + ": " + s);
    }
  }
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number for " + what + ": " + s);
  }
}

std::int64_t parse_i64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid integer for " + what + ": " + s);
  }
}

std::uint64_t parse_u64p(const std::string& s, const std::string& what) {
  std::int64_t v = parse_i64(s, what);
  if (v < 0) throw std::invalid_argument(what + " must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

PsGamma parse_gamma(const std::string& s) {
  Rational r = parse_rational(s);
  if (r <= 0) throw std::invalid_argument("gamma must be positive");
  return PsGamma(numerator(r).convert_to<std::uint64_t>(),
                 denominator(r).convert_to<std::uint64_t>());
}

ordered_json complex_json(const MpComplex& z) {
  return {{"re", z.re.convert_to<double>()}, {"im", z.im.convert_to<double>()}};
}

SumSpec build_sum_spec(const ExperimentConfig& c) {
  std::uint64_t X = parse_u64p(req(c, "X"), "X");
  PsGamma gamma = parse_gamma(req(c, "gamma"));
  double cc = parse_double(req(c, "c"), "c");
  double t = 0.0;
  const std::string* t_lit = c.find("t");
  const std::string* t_frac = c.find("t_frac");
  if (t_lit && t_frac) {
    throw std::invalid_argument("give either t or t_frac, not both");
  }
  if (t_frac) {
    Rational r = parse_rational(*t_frac);
    if (abs(r) >= 1) {
      throw std::invalid_argument("t_frac must satisfy |r| < 1");
    }
    t = r.convert_to<double>() * std::pow(static_cast<double>(X), 0.25 - cc);
  } else if (t_lit) {
    t = parse_double(*t_lit, "t");
  }
  std::int64_t a = parse_i64(req(c, "a"), "a");
  std::uint64_t D = 0;
  const std::string* d_lit = c.find("D");
  const std::string* theta = c.find("theta");
  if (d_lit && theta) {
    throw std::invalid_argument("give either D or theta, not both");
  }
  if (theta) {
    Rational th = parse_rational(*theta);
    if (th <= 0) throw std::invalid_argument("theta must be positive");
    D = static_cast<std::uint64_t>(std::floor(
        std::pow(static_cast<double>(X), th.convert_to<double>())));
  } else if (d_lit) {
    D = parse_u64p(*d_lit, "D");
  } else {
    throw std::invalid_argument("missing required parameter: D (or theta)");
  }
  SumSpec spec{X, gamma, cc, t, a, D};
  if (const std::string* A = c.find("A")) {
    spec.A = parse_double(*A, "A");
  }
  spec.precision_bits = c.precision_bits;
  spec.workers = c.workers;
  spec.validate();
  return spec;
}

ordered_json run_pairs(const ExperimentConfig& c) {
  const std::string& word = req(c, "word");
  const std::string& start = req(c, "start");
  auto comma = start.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("start must be \"kappa,lambda\"");
  }
  ExponentPair p(parse_rational(start.substr(0, comma)),
                 parse_rational(start.substr(comma + 1)));
  ExponentPair result = apply_word(word, p);
  return {{"word", word},
          {"start",
           {{"kappa", rational_to_string(p.kappa())},
            {"lambda", rational_to_string(p.lambda())}}},
          {"result",
           {{"kappa", rational_to_string(result.kappa())},
            {"lambda", rational_to_string(result.lambda())}}}};
}

ordered_json run_theta(const ExperimentConfig& c) {
  Rational gamma = parse_rational(req(c, "gamma"));
  ThetaReport report = admissible_theta(gamma);
  ordered_json slacks = ordered_json::array();
  for (const auto& [name, slack] : report.slacks) {
    slacks.push_back({{"constraint", name}, {"slack", rational_to_string(slack)}});
  }
  ordered_json payload{{"gamma", rational_to_string(report.gamma)}};
  if (report.theta_max) {
    payload["theta_max"] = rational_to_string(*report.theta_max);
    payload["binding"] = report.binding_constraint;
  } else {
    payload["theta_max"] = nullptr;
    payload["binding"] = nullptr;
  }
  payload["slacks"] = std::move(slacks);
  return payload;
}

ordered_json run_psprimes(const ExperimentConfig& c) {
  std::uint64_t X = parse_u64p(req(c, "X"), "X");
  if (X < 2) throw std::invalid_argument("psprimes requires X >= 2");
  PsGamma gamma = parse_gamma(req(c, "gamma"));

  PsCount count{0, 0.0};
  bool cached = false;
  const std::string* cache_path = c.find("sieve_cache");
  if (cache_path) {
    SieveSegment seg;
    bool ok = false;
    try {
      seg = load_segment(*cache_path);
      ok = seg.lo == 2 && seg.hi == X &&
           self_check_segment(seg, 1000, c.seed ^ 0x5eedULL);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      seg = sieve_segment(2, X);
      save_segment(seg, *cache_path);
    } else {
      cached = true;
    }
    double g = static_cast<double>(gamma.u) / gamma.v;
    for (std::uint64_t p = seg.lo; p <= seg.hi; ++p) {
      if (!seg.is_prime[p - seg.lo]) continue;
      if (ps_indicator(p, gamma)) ++count.count;
      double pd = static_cast<double>(p);
      count.smooth += std::pow(pd + 1.0, g) - std::pow(pd, g);
    }
  } else {
    count = count_ps_primes(X, gamma);
  }

  double rel_gap =
      count.count == 0
          ? 0.0
          : std::fabs(static_cast<double>(count.count) - count.smooth) /
                static_cast<double>(count.count);
  return {{"X", X},
          {"gamma", req(c, "gamma")},
          {"count", count.count},
          {"smooth", count.smooth},
          {"rel_gap", rel_gap},
          {"cache_hit", cached}};
}

ordered_json run_bvstat(const ExperimentConfig& c) {
  SumSpec spec = build_sum_spec(c);
  DiscrepancyReport report = bv_statistic(spec);
  ordered_json rows = ordered_json::array();
  for (const ModulusRow& row : report.rows) {
    ordered_json r{{"d", row.d},
                   {"phi_d", row.phi_d},
                   {"sum", complex_json(row.sum)},
                   {"main", complex_json(row.main)},
                   {"abs_err", row.abs_err.convert_to<double>()}};
    r["err_smooth"] = complex_json(row.err_smooth);
    r["err_psi"] = complex_json(row.err_psi);
    rows.push_back(std::move(r));
  }
  return {{"X", spec.X},
          {"gamma", req(c, "gamma")},
          {"c", spec.c},
          {"t", spec.t},
          {"a", spec.a},
          {"D", spec.D},
          {"A", spec.A},
          {"rows", std::move(rows)},
          {"total", report.total.convert_to<double>()},
          {"normalized", report.normalized},
          {"normalized_logA", report.normalized_logA}};
}

ordered_json run_psicheck(const ExperimentConfig& c) {
  auto H = static_cast<unsigned>(parse_u64p(req(c, "H"), "H"));
  if (H < 1) throw std::invalid_argument("psicheck requires H >= 1");
  std::uint64_t samples = 10000;
  if (const std::string* s = c.find("samples")) {
    samples = parse_u64p(*s, "samples");
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double sup_ratio = 0.0;
  double worst_t = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    double t = dist(rng);
    PsiTruncation r = psi_truncation_error(t, H, c.precision_bits);
    double ratio = std::fabs(r.error) / r.envelope;
    if (ratio > sup_ratio) {
      sup_ratio = ratio;
      worst_t = t;
    }
  }
  PsiTruncation at_integer = psi_truncation_error(0.0, H, c.precision_bits);
  return {{"H", H},
          {"samples", samples},
          {"seed", c.seed},
          {"sup_ratio", sup_ratio},
          {"worst_t", worst_t},
          {"integer_error", at_integer.error},
          {"integer_envelope", at_integer.envelope}};
}

ordered_json run_ndelta(const ExperimentConfig& c) {
  NDeltaQuery q{parse_u64p(req(c, "H"), "H"), parse_u64p(req(c, "N"), "N"),
                parse_double(req(c, "Delta"), "Delta"),
                parse_gamma(req(c, "gamma"))};
  NDeltaResult r = ndelta_count(q);
  return {{"H", q.H},          {"N", q.N},
          {"Delta", q.Delta},  {"gamma", req(c, "gamma")},
          {"count", r.count},  {"bound_ratio", r.bound_ratio}};
}

ordered_json run_lemma7(const ExperimentConfig& c) {
  ExponentPair pair(parse_rational(req(c, "kappa")),
                    parse_rational(req(c, "lambda")));
  std::uint64_t d = parse_u64p(req(c, "d"), "d");
  std::int64_t a = parse_i64(req(c, "a"), "a");
  std::uint64_t X = parse_u64p(req(c, "X"), "X");
  double h1 = parse_double(req(c, "h1"), "h1");
  double h2 = parse_double(req(c, "h2"), "h2");
  double cc = parse_double(req(c, "c"), "c");
  PsGamma gamma = parse_gamma(req(c, "gamma"));
  Lemma7Result r =
      lemma7_check(pair, d, a, X, h1, h2, cc, gamma, c.precision_bits);
  return {{"kappa", req(c, "kappa")},
          {"lambda", req(c, "lambda")},
          {"d", d},
          {"a", a},
          {"X", X},
          {"h1", h1},
          {"h2", h2},
          {"c", cc},
          {"gamma", req(c, "gamma")},
          {"direct_abs", r.direct_abs},
          {"bound", r.bound},
          {"ratio", r.ratio}};
}

ordered_json run_chain(const ExperimentConfig& c) {
  const std::string& which_s = req(c, "which");
  Chain which;
  if (which_s == "S1") {
    which = Chain::S1;
  } else if (which_s == "S2") {
    which = Chain::S2;
  } else {
    throw std::invalid_argument("which must be S1 or S2");
  }
  Rational gamma = parse_rational(req(c, "gamma"));
  Rational theta = parse_rational(req(c, "theta"));
  Rational mu = parse_rational(req(c, "mu"));
  const ChainTermTable& table = ChainTermTable::instance();
  ChainMax result = chain_max_exponent(table, which, gamma, theta, mu);
  const auto& terms = which == Chain::S1 ? table.s1_terms : table.s2_terms;
  ordered_json exps = ordered_json::array();
  for (const LinearForm& f : terms) {
    exps.push_back(rational_to_string(f.eval(gamma, theta, mu)));
  }
  return {{"which", which_s},
          {"gamma", rational_to_string(gamma)},
          {"theta", rational_to_string(theta)},
          {"mu", rational_to_string(mu)},
          {"exponents", std::move(exps)},
          {"max_exponent", rational_to_string(result.max_exponent)},
          {"argmax", result.argmax}};
}

}  // namespace

ordered_json run_experiment(const ExperimentConfig& config) {
  const std::string& sub = config.subcommand;
  if (sub == "pairs") return run_pairs(config);
  if (sub == "theta") return run_theta(config);
  if (sub == "psprimes") return run_psprimes(config);
  if (sub == "bvstat") return run_bvstat(config);
  if (sub == "psicheck") return run_psicheck(config);
  if (sub == "ndelta") return run_ndelta(config);
  if (sub == "lemma7") return run_lemma7(config);
  if (sub == "chain") return run_chain(config);
  throw std::invalid_argument("unknown subcommand: " + sub);
}

ordered_json make_envelope(const ExperimentConfig& config, double wall_clock_s,
                           const ordered_json& payload) {
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : config.params) params[k] = v;
  return {{"tool_version", kToolVersion},
          {"config",
           {{"subcommand", config.subcommand},
            {"precision_bits", config.precision_bits},
            {"workers", config.workers},
            {"seed", config.seed},
            {"format", config.format},
            {"output", config.output_path},
            {"params", std::move(params)}}},
          {"wall_clock_s", wall_clock_s},
          {"payload", payload}};
}

std::string payload_to_csv(const std::string& subcommand,
                           const ordered_json& payload) {
  std::ostringstream out;
  if (subcommand == "bvstat") {
    out << "d,phi_d,sum_re,sum_im,main_re,main_im,abs_err\n";
    for (const auto& row : payload.at("rows")) {
      out << row.at("d").get<std::uint64_t>() << ','
          << row.at("phi_d").get<std::uint64_t>() << ','
          << fmt17(row.at("sum").at("re").get<double>()) << ','
          << fmt17(row.at("sum").at("im").get<double>()) << ','
          << fmt17(row.at("main").at("re").get<double>()) << ','
          << fmt17(row.at("main").at("im").get<double>()) << ','
          << fmt17(row.at("abs_err").get<double>()) << '\n';
    }
  } else if (subcommand == "pairs") {
    out << "kappa,lambda\n";
    out << payload.at("result").at("kappa").get<std::string>() << ','
        << payload.at("result").at("lambda").get<std::string>() << '\n';
  } else if (subcommand == "theta") {
    out << "gamma,theta_max,binding\n";
    out << payload.at("gamma").get<std::string>() << ',';
    if (payload.at("theta_max").is_null()) {
      out << ",\n";
    } else {
      out << payload.at("theta_max").get<std::string>() << ','
          << payload.at("binding").get<std::string>() << '\n';
    }
  } else if (subcommand == "psprimes") {
    out << "X,gamma,count,smooth,rel_gap\n";
    out << payload.at("X").get<std::uint64_t>() << ','
        << payload.at("gamma").get<std::string>() << ','
        << payload.at("count").get<std::uint64_t>() << ','
        << fmt17(payload.at("smooth").get<double>()) << ','
        << fmt17(payload.at("rel_gap").get<double>()) << '\n';
  } else if (subcommand == "psicheck") {
    out << "H,samples,sup_ratio,integer_error\n";
    out << payload.at("H").get<std::uint64_t>() << ','
        << payload.at("samples").get<std::uint64_t>() << ','
        << fmt17(payload.at("sup_ratio").get<double>()) << ','
        << fmt17(payload.at("integer_error").get<double>()) << '\n';
  } else if (subcommand == "ndelta") {
    out << "H,N,Delta,gamma,count,bound_ratio\n";
    out << payload.at("H").get<std::uint64_t>() << ','
        << payload.at("N").get<std::uint64_t>() << ','
        << fmt17(payload.at("Delta").get<double>()) << ','
        << payload.at("gamma").get<std::string>() << ','
        << payload.at("count").get<std::uint64_t>() << ','
        << fmt17(payload.at("bound_ratio").get<double>()) << '\n';
  } else if (subcommand == "lemma7") {
    out << "d,a,X,h1,h2,c,gamma,direct_abs,bound,ratio\n";
    out << payload.at("d").get<std::uint64_t>() << ','
        << payload.at("a").get<std::int64_t>() << ','
        << payload.at("X").get<std::uint64_t>() << ','
        << fmt17(payload.at("h1").get<double>()) << ','
        << fmt17(payload.at("h2").get<double>()) << ','
        << fmt17(payload.at("c").get<double>()) << ','
        << payload.at("gamma").get<std::string>() << ','
        << fmt17(payload.at("direct_abs").get<double>()) << ','
        << fmt17(payload.at("bound").get<double>()) << ','
        << fmt17(payload.at("ratio").get<double>()) << '\n';
  } else if (subcommand == "chain") {
    out << "which,gamma,theta,mu,max_exponent,argmax\n";
    out << payload.at("which").get<std::string>() << ','
        << payload.at("gamma").get<std::string>() << ','
        << payload.at("theta").get<std::string>() << ','
        << payload.at("mu").get<std::string>() << ','
        << payload.at("max_exponent").get<std::string>() << ','
        << payload.at("argmax").get<std::uint64_t>() << '\n';
  } else {
    throw std::invalid_argument("no CSV schema for subcommand: " + subcommand);
  }
  return out.str();
}

int run_and_emit(const ExperimentConfig& config) {
  try {
    auto start = std::chrono::steady_clock::now();
    ordered_json payload = run_experiment(config);
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::string body;
    if (config.format == "csv") {
      body = payload_to_csv(config.subcommand, payload);
    } else {
      body = make_envelope(config, wall, payload).dump(2);
      body.push_back('\n');
    }
    std::ofstream out(config.output_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::fprintf(stderr, "error: validation: unwritable output path %s\n",
                   config.output_path.c_str());
      return kExitValidation;
    }
    out << body;
    std::printf("ok: %s -> %s (%.3fs)\n", config.subcommand.c_str(),
                config.output_path.c_str(), wall);
    return kExitOk;
  } catch (const BudgetError& e) {
    std::fprintf(stderr, "error: budget: %s\n", e.what());
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return kExitValidation;
  }
}

}  // namespace pslab
