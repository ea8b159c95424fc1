#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "dualgraph/adversary.hpp"
#include "dualgraph/algorithms.hpp"
#include "dualgraph/io.hpp"

namespace dualgraph {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using NumberParams = std::map<std::string, double>;

struct NetworkSpec {
  /// ring, path, complete, random-connected, geometric, cds-hard, barbell,
  /// g-kappa, or file.
  std::string builder = "ring";
  NumberParams params;
  /// complete (G' = K_n) or none (G' = G); ignored by geometric and file.
  std::string overlay = "complete";
  std::string file;
};

struct AdversarySpec {
  std::string kind = "static_none";  // static_all, static_none, threshold
  double c = 3.0;
};

struct AlgorithmSpec {
  std::string name = "decay-mis";
  AlgorithmParams params;
};

/// Named round-count presets evaluated at the network size n:
/// fixed (value), log, log-squared, sqrt-over-log, linear, n-squared.
/// `scale` multiplies the preset and `min` floors the result.
struct RoundsSpec {
  std::string name = "log-squared";
  NumberParams params;
};

struct GameSpec {
  /// isolation: uniform, exclusion, constant, sequential, barbell.
  /// bit-reveal: read-then-guess, zeros, g-kappa.
  /// ring-coloring: mis-coloring.
  std::string player = "uniform";
  NumberParams params;  // k, n, max_rounds, reads, guess, epsilon, budget_scale, verify
  std::string accounting = "mis-phase";
};

struct OutputSpec {
  std::string dir;  // empty: $DUALGRAPH_OUTPUT_DIR or "out"
  std::string jsonl = "trials.jsonl";
  std::string csv = "summary.csv";
};

/// kind: execution (alias silent-set), ring-coloring, isolation, bit-reveal.
struct ExperimentConfig {
  std::string kind = "execution";
  NetworkSpec network;
  AdversarySpec adversary;
  AlgorithmSpec algorithm;
  KnowledgeMode knowledge = KnowledgeMode::advance;
  RoundsSpec rounds;
  GameSpec game;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  OutputSpec output;
};

Json config_to_json(const ExperimentConfig& config);
/// Missing fields take defaults; unknown names raise ConfigError.
ExperimentConfig config_from_json(const Json& doc);
ExperimentConfig read_config_file(const std::filesystem::path& path);
void validate_config(const ExperimentConfig& config);

Round evaluate_rounds(const RoundsSpec& spec, std::size_t n);
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec);
/// Builds the trial's network. `network_seed` feeds randomized builders.
DualGraph build_network(const NetworkSpec& spec, const AlgorithmSpec& algorithm, std::uint64_t network_seed);

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

/// One per-trial JSON record. Keys are sorted on output. `violations`
/// counts structural invariant failures seen in the trial.
Json run_trial(const ExperimentConfig& config, std::size_t trial);

struct SummaryRow {
  std::string metric;
  std::size_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool binary = false;
  std::size_t successes = 0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};

/// Aggregates every numeric or boolean field except trial and seed.
std::vector<SummaryRow> summarize(const std::vector<Json>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);
const SummaryRow* find_metric(const std::vector<SummaryRow>& rows, const std::string& metric);

struct ExperimentResult {
  std::vector<Json> records;  // in trial order
  std::vector<SummaryRow> summary;
  std::size_t violations = 0;
  int exit_code() const { return violations ? 2 : 0; }
};

/// Runs all trials (concurrently with jobs > 1); records stay keyed by trial.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs = 1);

std::string records_jsonl(const std::vector<Json>& records);
std::filesystem::path output_directory(const OutputSpec& spec);
/// Writes the JSONL records and CSV summary; returns the directory used.
std::filesystem::path write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

}  // namespace dualgraph
