#include "pslab/cli.hpp"

#include <sstream>
#include <stdexcept>

namespace pslab {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid unsigned integer for " + what + ": " +
                                s);
  }
}

}  // namespace

const std::string* ExperimentConfig::find(const std::string& key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return &v;
  }
  return nullptr;
}

void ExperimentConfig::set(const std::string& key, std::string value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  params.emplace_back(key, std::move(value));
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "subcommand = " << config.subcommand << "\n";
  out << "precision_bits = " << config.precision_bits << "\n";
  out << "workers = " << config.workers << "\n";
  out << "seed = " << config.seed << "\n";
  out << "format = " << config.format << "\n";
  out << "output = " << config.output_path << "\n";
  out << "[params]\n";
  for (const auto& [k, v] : config.params) {
    out << k << " = " << v << "\n";
  }
  return out.str();
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  config.params.clear();
  std::istringstream in(text);
  std::string line;
  enum class Section { None, Experiment, Params } section = Section::None;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[experiment]") {
      section = Section::Experiment;
      continue;
    }
    if (line == "[params]") {
      section = Section::Params;
      continue;
    }
    if (line.front() == '[') {
      throw std::invalid_argument("unknown config section: " + line);
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not 'key = value': " + line);
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == Section::Experiment) {
      if (key == "subcommand") {
        config.subcommand = value;
      } else if (key == "precision_bits") {
        config.precision_bits =
            static_cast<unsigned>(parse_u64(value, "precision_bits"));
      } else if (key == "workers") {
        config.workers = static_cast<unsigned>(parse_u64(value, "workers"));
      } else if (key == "seed") {
        config.seed = parse_u64(value, "seed");
      } else if (key == "format") {
        config.format = value;
      } else if (key == "output") {
        config.output_path = value;
      } else {
        throw std::invalid_argument("unknown [experiment] key: " + key);
      }
    } else if (section == Section::Params) {
      config.set(key, value);
    } else {
      throw std::invalid_argument("config key outside any section: " + key);
    }
  }
  if (config.subcommand.empty()) {
    throw std::invalid_argument("config missing subcommand");
  }
  if (config.format != "csv" && config.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  return config;
}

}  // namespace pslab
