#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "pslab/cli.hpp"

namespace {

struct ParamBind {
  std::string key;
  std::string* value;
  CLI::Option* option;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential-sum laboratory over Piatetski-Shapiro primes"};
  app.set_version_flag("--version", pslab::kToolVersion);
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path,
                 "config file; command-line flags override its values");

  unsigned precision_bits = 128;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output_path = "report.json";
  auto* opt_prec =
      app.add_option("--precision-bits", precision_bits, "MPFR significand bits");
  auto* opt_workers = app.add_option("--workers", workers, "scan worker threads");
  auto* opt_seed = app.add_option("--seed", seed, "RNG seed for sampled checks");
  auto* opt_format = app.add_option("--format", format, "report format: json|csv")
                         ->check(CLI::IsMember({"json", "csv"}));
  auto* opt_output = app.add_option("--output", output_path, "report path");

  std::deque<std::string> storage;
  std::vector<std::pair<CLI::App*, std::vector<ParamBind>>> subs;
  auto sub = [&](const char* name, const char* desc) -> CLI::App* {
    CLI::App* s = app.add_subcommand(name, desc);
    subs.emplace_back(s, std::vector<ParamBind>{});
    return s;
  };
  auto param = [&](CLI::App* s, const char* flag, const char* key,
                   const char* desc) {
    storage.emplace_back();
    CLI::Option* o = s->add_option(flag, storage.back(), desc);
    subs.back().second.push_back({key, &storage.back(), o});
  };

  CLI::App* pairs = sub("pairs", "apply an A/B word to an exponent pair");
  param(pairs, "--word", "word", "letters A and B, applied right to left");
  param(pairs, "--start", "start", "starting pair as \"kappa,lambda\"");

  CLI::App* theta = sub("theta", "maximal admissible level of distribution");
  param(theta, "--gamma", "gamma", "rational gamma in (0, 1]");

  CLI::App* psprimes = sub("psprimes", "count Piatetski-Shapiro primes");
  param(psprimes, "--X", "X", "upper limit");
  param(psprimes, "--gamma", "gamma", "rational gamma in (1/2, 1]");
  param(psprimes, "--sieve-cache", "sieve_cache",
        "path of a reusable sieve bitmap");

  CLI::App* bvstat = sub("bvstat", "discrepancy statistic over moduli d <= D");
  param(bvstat, "--X", "X", "upper limit");
  param(bvstat, "--gamma", "gamma", "rational gamma in (1/2, 1]");
  param(bvstat, "--c", "c", "phase exponent, c in (1,3), c != 2");
  param(bvstat, "--t", "t", "phase frequency (literal)");
  param(bvstat, "--t-frac", "t_frac",
        "phase frequency as a rational multiple of X^{1/4-c}");
  param(bvstat, "--a", "a", "residue class, coprime to each d");
  param(bvstat, "--D", "D", "largest modulus");
  param(bvstat, "--theta", "theta", "set D = floor(X^theta)");
  param(bvstat, "--A", "A", "log power of the normalization");

  CLI::App* psicheck = sub("psicheck", "truncated sawtooth series error scan");
  param(psicheck, "--H", "H", "truncation length");
  param(psicheck, "--samples", "samples", "random sample count");

  CLI::App* ndelta = sub("ndelta", "near-coincidence count of h n^gamma pairs");
  param(ndelta, "--H", "H", "h ranges over (H, 2H]");
  param(ndelta, "--N", "N", "n ranges over (N, 2N]");
  param(ndelta, "--Delta", "Delta", "closeness threshold");
  param(ndelta, "--gamma", "gamma", "rational gamma in (1/2, 1]");

  CLI::App* lemma7 = sub("lemma7", "bilinear phase sum against its bound");
  param(lemma7, "--kappa", "kappa", "exponent pair kappa");
  param(lemma7, "--lambda", "lambda", "exponent pair lambda");
  param(lemma7, "--d", "d", "modulus");
  param(lemma7, "--a", "a", "residue class");
  param(lemma7, "--X", "X", "n ranges over (X, 2X]");
  param(lemma7, "--h1", "h1", "coefficient of n^c");
  param(lemma7, "--h2", "h2", "coefficient of n^gamma");
  param(lemma7, "--c", "c", "first phase exponent");
  param(lemma7, "--gamma", "gamma", "second phase exponent, rational");

  CLI::App* chain = sub("chain", "closing bound chain exponents at a point");
  param(chain, "--which", "which", "S1 or S2");
  param(chain, "--gamma", "gamma", "rational gamma");
  param(chain, "--theta", "theta", "rational theta");
  param(chain, "--mu", "mu", "rational block exponent mu");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? pslab::kExitOk : pslab::kExitValidation;
  }

  pslab::ExperimentConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::fprintf(stderr, "error: validation: cannot read config file %s\n",
                   config_path.c_str());
      return pslab::kExitValidation;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      config = pslab::parse_config(text.str());
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "error: validation: %s\n", e.what());
      return pslab::kExitValidation;
    }
  }

  for (const auto& [s, binds] : subs) {
    if (!s->parsed()) continue;
    config.subcommand = s->get_name();
    for (const ParamBind& b : binds) {
      if (b.option->count() > 0) config.set(b.key, *b.value);
    }
  }
  if (config.subcommand.empty()) {
    std::fprintf(stderr, "error: validation: no subcommand given\n");
    return pslab::kExitValidation;
  }

  if (opt_prec->count() || config_path.empty()) config.precision_bits = precision_bits;
  if (opt_workers->count() || config_path.empty()) config.workers = workers;
  if (opt_seed->count() || config_path.empty()) config.seed = seed;
  if (opt_format->count() || config_path.empty()) config.format = format;
  if (opt_output->count() || config_path.empty()) config.output_path = output_path;

  return pslab::run_and_emit(config);
}
