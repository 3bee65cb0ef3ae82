#ifndef RELAYIA_CLI_CONFIG_HPP
#define RELAYIA_CLI_CONFIG_HPP

// Experiment config document and result emitters for the relayia CLI.
// Header-only so the test suite can exercise parsing and formatting without
// linking the tool.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace relayia_cli {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  std::string scheme = "x-theorem1";  // x-theorem1 | partial-ia | ic-theorem3
  int m = 0;
  int n = 0;
  int k = 0;
  int relays = 1;
  int antennas = 0;  // 0: resolved from the scheme defaults
  std::uint64_t seed = 1;
  int trials = 0;  // 0: subcommand default
  double snr_start_db = 40.0;
  double snr_stop_db = 80.0;
  double snr_step_db = 10.0;
  bool time_varying = true;
  bool joint_beamforming = true;
  bool null_space = false;
  std::string out;  // empty: stdout
  std::string format = "csv";
};

// Shortest round-trip decimal form; deterministic for identical doubles.
inline std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

inline bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("bad boolean for '" + key + "': " + text);
}

inline void apply_config_key(ExperimentConfig& config, const std::string& key,
                             const std::string& value) {
  const auto to_int = [&](const std::string& v) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw ConfigError("bad integer for '" + key + "': " + v);
    }
  };
  const auto to_double = [&](const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw ConfigError("bad number for '" + key + "': " + v);
    }
  };
  if (key == "scheme") config.scheme = value;
  else if (key == "m") config.m = to_int(value);
  else if (key == "n") config.n = to_int(value);
  else if (key == "k") config.k = to_int(value);
  else if (key == "relays") config.relays = to_int(value);
  else if (key == "antennas") config.antennas = to_int(value);
  else if (key == "seed") config.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "trials") config.trials = to_int(value);
  else if (key == "snr-start") config.snr_start_db = to_double(value);
  else if (key == "snr-stop") config.snr_stop_db = to_double(value);
  else if (key == "snr-step") config.snr_step_db = to_double(value);
  else if (key == "time-varying") config.time_varying = parse_bool(value, key);
  else if (key == "joint-beamforming") config.joint_beamforming = parse_bool(value, key);
  else if (key == "null-space") config.null_space = parse_bool(value, key);
  else if (key == "out") config.out = value;
  else if (key == "format") config.format = value;
  else throw ConfigError("unknown config key: " + key);
}

// Flat key = value document; '#' starts a comment, blank lines ignored.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto begin = s.find_first_not_of(" \t\r");
      const auto end = s.find_last_not_of(" \t\r");
      return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
    apply_config_key(config, trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
  }
  return config;
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

// Canonical form: fixed key order, one 'key = value' per line.
inline std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "scheme = " << config.scheme << "\n";
  out << "m = " << config.m << "\n";
  out << "n = " << config.n << "\n";
  out << "k = " << config.k << "\n";
  out << "relays = " << config.relays << "\n";
  out << "antennas = " << config.antennas << "\n";
  out << "seed = " << config.seed << "\n";
  out << "trials = " << config.trials << "\n";
  out << "snr-start = " << format_double(config.snr_start_db) << "\n";
  out << "snr-stop = " << format_double(config.snr_stop_db) << "\n";
  out << "snr-step = " << format_double(config.snr_step_db) << "\n";
  out << "time-varying = " << (config.time_varying ? "true" : "false") << "\n";
  out << "joint-beamforming = " << (config.joint_beamforming ? "true" : "false") << "\n";
  out << "null-space = " << (config.null_space ? "true" : "false") << "\n";
  out << "out = " << config.out << "\n";
  out << "format = " << config.format << "\n";
  return out.str();
}

inline nlohmann::json config_to_json(const ExperimentConfig& config) {
  return {{"scheme", config.scheme},
          {"m", config.m},
          {"n", config.n},
          {"k", config.k},
          {"relays", config.relays},
          {"antennas", config.antennas},
          {"seed", config.seed},
          {"trials", config.trials},
          {"snr_start_db", config.snr_start_db},
          {"snr_stop_db", config.snr_stop_db},
          {"snr_step_db", config.snr_step_db},
          {"time_varying", config.time_varying},
          {"joint_beamforming", config.joint_beamforming},
          {"null_space", config.null_space},
          {"format", config.format}};
}

// --- result documents ------------------------------------------------------

struct SweepPoint {
  double snr_db = 0.0;
  double mean_sum_rate_bits = 0.0;  // per channel use
  int trials_used = 0;
  int skipped = 0;
};

struct SweepSummary {
  double slope = 0.0;
  double fit_residual = 0.0;
  double reference_dof = 0.0;
  int trials_used = 0;
  int skipped = 0;
};

struct VerifyRow {
  int trial = 0;
  int receiver = 0;
  int interference_rank = 0;
  int desired_rank = 0;
  int total_rank = 0;
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
  bool pass = false;
};

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline std::string sweep_to_csv(const ExperimentConfig& config,
                                const std::vector<SweepPoint>& points,
                                const SweepSummary& summary) {
  std::ostringstream out;
  const char* crlf = "\r\n";
  out << "record,scheme,m,n,k,relays,antennas,snr_db,mean_sum_rate_bits,trials_used,skipped,"
         "slope,fit_residual,reference_dof"
      << crlf;
  const std::string prefix = csv_escape(config.scheme) + "," + std::to_string(config.m) + "," +
                             std::to_string(config.n) + "," + std::to_string(config.k) + "," +
                             std::to_string(config.relays) + "," +
                             std::to_string(config.antennas);
  for (const auto& p : points) {
    out << "point," << prefix << "," << format_double(p.snr_db) << ","
        << format_double(p.mean_sum_rate_bits) << "," << p.trials_used << "," << p.skipped
        << ",,," << crlf;
  }
  out << "summary," << prefix << ",,," << summary.trials_used << "," << summary.skipped << ","
      << format_double(summary.slope) << "," << format_double(summary.fit_residual) << ","
      << format_double(summary.reference_dof) << crlf;
  return out.str();
}

inline std::string sweep_to_json(const ExperimentConfig& config,
                                 const std::vector<SweepPoint>& points,
                                 const SweepSummary& summary) {
  nlohmann::json doc;
  doc["config"] = config_to_json(config);
  doc["points"] = nlohmann::json::array();
  for (const auto& p : points) {
    doc["points"].push_back({{"snr_db", p.snr_db},
                             {"mean_sum_rate_bits", p.mean_sum_rate_bits},
                             {"trials_used", p.trials_used},
                             {"skipped", p.skipped}});
  }
  doc["summary"] = {{"slope", summary.slope},
                    {"fit_residual", summary.fit_residual},
                    {"reference_dof", summary.reference_dof},
                    {"trials_used", summary.trials_used},
                    {"skipped", summary.skipped}};
  return doc.dump(2) + "\n";
}

inline std::string verify_to_csv(const ExperimentConfig& config,
                                 const std::vector<VerifyRow>& rows) {
  std::ostringstream out;
  const char* crlf = "\r\n";
  out << "scheme,trial,receiver,interference_rank,desired_rank,total_rank,"
         "smallest_retained,largest_discarded,pass"
      << crlf;
  for (const auto& r : rows) {
    out << csv_escape(config.scheme) << "," << r.trial << "," << r.receiver << ","
        << r.interference_rank
        << "," << r.desired_rank << "," << r.total_rank << ","
        << format_double(r.smallest_retained) << "," << format_double(r.largest_discarded)
        << "," << (r.pass ? "true" : "false") << crlf;
  }
  return out.str();
}

inline std::string verify_to_json(const ExperimentConfig& config,
                                  const std::vector<VerifyRow>& rows, bool all_pass) {
  nlohmann::json doc;
  doc["config"] = config_to_json(config);
  doc["receivers"] = nlohmann::json::array();
  for (const auto& r : rows) {
    doc["receivers"].push_back({{"trial", r.trial},
                                {"receiver", r.receiver},
                                {"interference_rank", r.interference_rank},
                                {"desired_rank", r.desired_rank},
                                {"total_rank", r.total_rank},
                                {"smallest_retained", r.smallest_retained},
                                {"largest_discarded", r.largest_discarded},
                                {"pass", r.pass}});
  }
  doc["pass"] = all_pass;
  return doc.dump(2) + "\n";
}

// Whole-file write via temp + rename; no partial output on failure.
inline void write_file_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file: " + tmp);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("failed to move output into place: " + path);
}

}  // namespace relayia_cli

#endif
