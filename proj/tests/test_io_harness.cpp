#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dualgraph/engine.hpp"
#include "dualgraph/harness.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/seed.hpp"
#include "dualgraph/stats.hpp"
#include "dualgraph/structures.hpp"

using namespace dualgraph;

namespace {

ExperimentConfig small_execution(std::size_t trials) {
  ExperimentConfig c;
  c.kind = "execution";
  c.network.builder = "random-connected";
  c.network.params = {{"n", 20}, {"p", 0.15}};
  c.adversary.kind = "threshold";
  c.adversary.c = 1.0;
  c.algorithm.name = "decay-cds";
  c.rounds.name = "log-squared";
  c.trials = trials;
  c.seed = 42;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dualgraph_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("graph JSON round-trips, including embeddings") {
  const std::vector<Point> pts{{0, 0}, {0.8, 0}, {1.9, 0}, {0.4, 0.6}};
  const auto g = geometric_dualgraph(pts, 2.0);
  const auto back = graph_from_json(Json::parse(graph_to_json(g).dump()));
  CHECK(back.reliable_edges() == g.reliable_edges());
  CHECK(back.unreliable_edges() == g.unreliable_edges());
  CHECK(back.gamma() == g.gamma());
  REQUIRE(back.embedding().has_value());
  CHECK(back.embedding()->at(2).x == 1.9);

  const auto dir = scratch("graph");
  write_graph_file(dir / "g.json", g, {{"note", "x"}});
  CHECK(read_graph_file(dir / "g.json").reliable_edges() == g.reliable_edges());
  CHECK_THROWS(graph_from_json(Json::parse(R"({"reliable": []})")));
  CHECK_THROWS(graph_from_json(Json::parse(R"({"n": 3, "reliable": [[1,2]], "unreliable": [[1,2]]})")));
}

TEST_CASE("transcripts round-trip through JSONL") {
  const auto g = DualGraph::complete_overlay(Graph::ring(std::vector<NodeId>{1, 2, 3, 4, 5, 6}));
  const auto alg = make_algorithm("decay-mis", {}, 6);
  const auto adv = threshold_adversary(0.5);
  const auto run = run_execution(g, *adv, *alg, KnowledgeMode::passive, 12, 3);
  std::stringstream buf;
  write_transcript_jsonl(buf, run.transcript);
  CHECK(read_transcript_jsonl(buf) == run.transcript);
  CHECK(from_hex(to_hex(Payload{'\0', '\xff', 'a'})) == Payload{'\0', '\xff', 'a'});
  CHECK_THROWS(from_hex("abc"));
}

TEST_CASE("config round-trip and validation") {
  auto c = small_execution(3);
  c.game.params = {{"k", 8}};
  c.output.dir = "somewhere";
  const auto back = config_from_json(config_to_json(c));
  CHECK(config_to_json(back) == config_to_json(c));

  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"network": {"builder": "moebius"}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"algorithm": {"name": "nope"}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"trials": 0})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"adversary": {"kind": "sometimes"}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"kind": "isolation", "game": {"player": "psychic"}})")), ConfigError);
  CHECK_NOTHROW(config_from_json(Json::parse(R"({"adversary": {"kind": "threshold", "c": 2}})")));
}

TEST_CASE("rounds presets") {
  RoundsSpec s{"sqrt-over-log", {}};
  CHECK(evaluate_rounds(s, 64) == 0);
  CHECK(evaluate_rounds(s, 256) == 1);
  CHECK(evaluate_rounds({"log-squared", {}}, 64) == 36);
  CHECK(evaluate_rounds({"log", {{"scale", 2}}}, 1000) == 20);
  CHECK(evaluate_rounds({"fixed", {{"value", 16}}}, 5) == 16);
  CHECK(evaluate_rounds({"sqrt-over-log", {{"min", 1}}}, 64) == 1);
}

TEST_CASE("experiments are deterministic and independent of --jobs and trial order") {
  const auto c = small_execution(12);
  const auto serial = run_experiment(c, 1);
  const auto parallel = run_experiment(c, 4);
  CHECK(records_jsonl(serial.records) == records_jsonl(parallel.records));
  CHECK(summary_csv(serial.summary) == summary_csv(parallel.summary));
  CHECK(serial.exit_code() == 0);

  // Reverse order: each record depends only on (config, t).
  for (std::size_t t = c.trials; t-- > 0;) CHECK(run_trial(c, t) == serial.records[t]);

  auto other = c;
  other.seed = 43;
  CHECK(records_jsonl(run_experiment(other).records) != records_jsonl(serial.records));
}

TEST_CASE("summary re-aggregates from the JSONL records") {
  const auto c = small_execution(8);
  const auto result = run_experiment(c, 2);
  std::istringstream in(records_jsonl(result.records));
  std::vector<Json> parsed;
  for (std::string line; std::getline(in, line);) parsed.push_back(Json::parse(line));
  CHECK(summary_csv(summarize(parsed)) == summary_csv(result.summary));
  const auto* valid = find_metric(result.summary, "valid");
  REQUIRE(valid != nullptr);
  CHECK(valid->binary);
  CHECK(valid->count == 8);
}

TEST_CASE("outputs land in the configured or environment directory") {
  auto c = small_execution(2);
  const auto dir = scratch("outputs");
  c.output.dir = dir.string();
  const auto result = run_experiment(c);
  CHECK(write_outputs(c, result) == dir);
  std::ifstream jsonl(dir / "trials.jsonl");
  std::stringstream text;
  text << jsonl.rdbuf();
  CHECK(text.str() == records_jsonl(result.records));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  CHECK(output_directory({"", "a", "b"}) != std::filesystem::path());
}

TEST_CASE("golden record") {
  ExperimentConfig c;
  c.kind = "execution";
  c.network.builder = "ring";
  c.network.params = {{"n", 6}};
  c.adversary.kind = "static_none";
  c.algorithm.name = "round-robin";
  c.rounds = {"fixed", {{"value", 36}}};
  c.seed = 7;
  const auto rec = run_trial(c, 0);
  // Ring of 6, one transmitter per round, both ring neighbours hear it:
  // 36 rounds x 2 receptions; the greedy MIS is {1, 3, 5}.
  CHECK(rec.dump() ==
        "{\"max_receivers\":2,\"max_receivers_per_log_n\":0.7737056144690833,\"n\":6,\"rounds\":36,"
        "\"saturated_multi_receptions\":0,\"saturated_multi_rounds\":0,\"saturated_rounds\":0,"
        "\"seed\":" + std::to_string(trial_seed(7, 0)) +
        ",\"size\":3,\"structure\":\"mis\",\"tag_violations\":0,\"total_receptions\":72,\"trial\":0,"
        "\"valid\":true,\"violations\":0}");
}

TEST_CASE("structural violations yield exit code 2") {
  ExperimentConfig c;
  c.kind = "isolation";
  c.game.player = "barbell";
  c.game.params = {{"k", 8}};
  c.rounds = {"fixed", {{"value", 6}}};
  c.trials = 3;
  const auto ok = run_experiment(c);
  CHECK(ok.exit_code() == 0);
  ExperimentResult tampered = ok;
  tampered.records[1]["violations"] = 1;
  tampered.violations = 1;
  CHECK(tampered.exit_code() == 2);
}

TEST_CASE("seed derivation: collisions and equidistribution") {
  Rng rng(2024);
  std::size_t equal = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const std::uint64_t m = rng();
    equal += derive_seed(m, {1}) == derive_seed(m, {2});
  }
  CHECK(equal == 0);
  CHECK(derive_seed(5, StreamTag::trial, {3}) == derive_seed(5, StreamTag::trial, {3}));

  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100'000; ++t) seen.insert(trial_seed(1, t));
  CHECK(seen.size() == 100'000);

  Rng stream = make_rng(11, StreamTag::trial, {0});
  double sum = 0;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) sum += uniform01(stream());
  const double sigma = std::sqrt(1.0 / 12.0 / draws);
  CHECK(std::abs(sum / draws - 0.5) < 3 * sigma);
}
