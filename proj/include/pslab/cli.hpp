#ifndef PSLAB_CLI_HPP
#define PSLAB_CLI_HPP

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pslab {

inline constexpr const char* kToolVersion = "pslab 0.1.0";

// Exit codes of the batch runner.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

// Resolved experiment description. Subcommand parameters are kept as
// canonical strings (rationals as "num/den", reals as decimal strings) so
// the config round-trips losslessly through its text form.
struct ExperimentConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> params;
  unsigned precision_bits = 128;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string format = "json";  // csv | json
  std::string output_path = "report.json";

  const std::string* find(const std::string& key) const;
  void set(const std::string& key, std::string value);

  bool operator==(const ExperimentConfig&) const = default;
};

// "[experiment]" / "[params]" sections of "key = value" lines.
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig parse_config(const std::string& text);

struct ReportEnvelope {
  std::string tool_version;
  ExperimentConfig config;
  double wall_clock_s = 0.0;
  nlohmann::ordered_json payload;
};

// Executes the configured experiment and returns the payload. Throws
// std::invalid_argument for validation failures and BudgetError when a
// work budget is exceeded.
nlohmann::ordered_json run_experiment(const ExperimentConfig& config);

// Full envelope as JSON (tool version, resolved config, wall clock,
// payload).
nlohmann::ordered_json make_envelope(const ExperimentConfig& config,
                                     double wall_clock_s,
                                     const nlohmann::ordered_json& payload);

// Fixed per-subcommand CSV schema; header row, LF endings, 17 significant
// digits, rationals as "num/den" strings.
std::string payload_to_csv(const std::string& subcommand,
                           const nlohmann::ordered_json& payload);

// Runs, writes the report to config.output_path in the configured format,
// prints a one-line summary to stdout, and returns the exit code.
int run_and_emit(const ExperimentConfig& config);

}  // namespace pslab

#endif
