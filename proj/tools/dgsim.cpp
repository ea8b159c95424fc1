// dgsim: command-line front end for the dual graph simulator.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dualgraph/engine.hpp"
#include "dualgraph/harness.hpp"
#include "dualgraph/io.hpp"
#include "dualgraph/linial.hpp"
#include "dualgraph/structures.hpp"

using namespace dualgraph;

namespace {

NumberParams parse_params(const std::vector<std::string>& items) {
  NumberParams params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + item + "'");
    try {
      params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigError("parameter '" + item + "' is not numeric");
    }
  }
  return params;
}

IdSet parse_ids(const std::string& text) {
  IdSet ids;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');)
    if (!part.empty()) ids.push_back(static_cast<NodeId>(std::stoul(part)));
  return normalize_ids(ids);
}

int finish(const ExperimentConfig& config, unsigned jobs) {
  const auto result = run_experiment(config, jobs);
  const auto dir = write_outputs(config, result);
  std::cout << summary_csv(result.summary);
  std::cerr << "wrote " << (dir / config.output.jsonl).string() << " and " << (dir / config.output.csv).string()
            << '\n';
  if (result.violations) std::cerr << result.violations << " structural invariant violation(s)\n";
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual graph radio network simulator"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out_dir;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master seed (overrides the config)");
    sub->add_option("--jobs", jobs, "Concurrent trials")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory (default: $DUALGRAPH_OUTPUT_DIR or ./out)");
  };

  // run
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  std::optional<std::size_t> trials;
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--trials", trials, "Override the trial count");
  add_common(run);

  // build-net
  auto* build = app.add_subcommand("build-net", "Build a network and write it as graph JSON");
  NetworkSpec net;
  AlgorithmSpec net_alg;
  std::vector<std::string> net_params;
  std::vector<std::string> alg_params;
  std::string graph_out = "-";
  build->add_option("builder", net.builder, "ring, path, complete, random-connected, geometric, cds-hard, barbell, g-kappa")
      ->required();
  build->add_option("-p,--param", net_params, "Builder parameter key=value");
  build->add_option("--overlay", net.overlay, "complete or none");
  build->add_option("--algorithm", net_alg.name, "Algorithm the cds-hard builder probes");
  build->add_option("--alg-param", alg_params, "Algorithm parameter key=value");
  build->add_option("-o,--output", graph_out, "Output file, - for stdout");
  build->add_option("--seed", seed, "Network seed");

  // play-game
  auto* play = app.add_subcommand("play-game", "Play a guessing or coloring game over many trials");
  ExperimentConfig game;
  std::vector<std::string> game_params;
  std::vector<std::string> game_alg_params;
  std::string rounds_name;
  std::vector<std::string> rounds_params;
  play->add_option("game", game.kind, "isolation, bit-reveal or ring-coloring")
      ->required()
      ->check(CLI::IsMember({"isolation", "bit-reveal", "ring-coloring"}));
  play->add_option("--player", game.game.player, "Player strategy");
  play->add_option("-p,--param", game_params, "Game parameter key=value (k, n, max_rounds, reads, ...)");
  play->add_option("--algorithm", game.algorithm.name, "Simulated algorithm for reduction players");
  play->add_option("--alg-param", game_alg_params, "Algorithm parameter key=value");
  play->add_option("--rounds", rounds_name, "Round preset for reduction players");
  play->add_option("--rounds-param", rounds_params, "Round preset parameter key=value");
  play->add_option("--c", game.adversary.c, "Threshold adversary constant");
  play->add_option("--accounting", game.game.accounting, "mis-phase or full");
  play->add_option("--trials", game.trials, "Trials")->check(CLI::PositiveNumber);
  add_common(play);

  // linial
  auto* linial = app.add_subcommand("linial", "Chromatic numbers of view graphs B_{t,m}");
  std::size_t t = 1;
  std::size_t m_min = 5;
  std::size_t m_max = 8;
  std::uint64_t node_limit = ColoringBudget{}.node_limit;
  linial->add_option("--t", t, "Radius");
  linial->add_option("--m-min", m_min, "Smallest id range");
  linial->add_option("--m-max", m_max, "Largest id range");
  linial->add_option("--node-limit", node_limit, "Search nodes per colorability decision");

  // verify
  auto* verify = app.add_subcommand("verify", "Check an MIS/CDS or replay a transcript against a graph");
  std::string graph_path;
  std::string members;
  std::string structure = "mis";
  std::string transcript_path;
  verify->add_option("graph", graph_path, "Graph JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--set", members, "Comma-separated ids");
  verify->add_option("--structure", structure, "mis or cds")->check(CLI::IsMember({"mis", "cds"}));
  verify->add_option("--transcript", transcript_path, "JSONL transcript to replay")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = read_config_file(config_path);
      if (seed) config.seed = *seed;
      if (trials) config.trials = *trials;
      if (!out_dir.empty()) config.output.dir = out_dir;
      return finish(config, jobs);
    }

    if (*build) {
      net.params = parse_params(net_params);
      net_alg.params = parse_params(alg_params);
      const auto graph = build_network(net, net_alg, seed.value_or(1));
      Json annotations{{"builder", net.builder}, {"seed", seed.value_or(1)}};
      if (graph_out == "-") {
        Json doc = graph_to_json(graph);
        for (const auto& [k, v] : annotations.items()) doc[k] = v;
        std::cout << doc.dump(1) << '\n';
      } else {
        write_graph_file(graph_out, graph, annotations);
      }
      return 0;
    }

    if (*play) {
      if (game.kind == "ring-coloring" && !play->count("--player")) game.game.player = "mis-coloring";
      if (game.kind == "bit-reveal" && !play->count("--player")) game.game.player = "read-then-guess";
      game.game.params = parse_params(game_params);
      game.algorithm.params = parse_params(game_alg_params);
      game.adversary.kind = "threshold";
      if (!rounds_name.empty()) game.rounds.name = rounds_name;
      game.rounds.params = parse_params(rounds_params);
      if (seed) game.seed = *seed;
      if (!out_dir.empty()) game.output.dir = out_dir;
      validate_config(game);
      return finish(game, jobs);
    }

    if (*linial) {
      std::cout << "t,m,vertices,edges,chi,status,refuted_below,seconds\n";
      ColoringBudget budget;
      budget.node_limit = node_limit;
      budget.max_vertices = 1'000'000;
      for (std::size_t m = m_min; m <= m_max; ++m) {
        const auto start = std::chrono::steady_clock::now();
        const auto vg = build_view_graph(t, m);
        const auto chi = chromatic_number_exact(vg.graph(), budget);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool certified = chi.status == ChromaticResult::Status::exact && is_proper_coloring(vg.graph(), chi.coloring);
        std::cout << t << ',' << m << ',' << vg.vertex_count() << ',' << vg.graph().edge_count() << ','
                  << chi.chromatic_number << ',' << (certified ? "exact" : "lower-bound") << ','
                  << chi.refuted_below << ',' << secs << std::endl;
      }
      return 0;
    }

    if (*verify) {
      const auto graph = read_graph_file(graph_path);
      int code = 0;
      if (!members.empty()) {
        const auto ids = parse_ids(members);
        const auto report = structure == "cds" ? verify_cds(graph.reliable(), ids) : verify_mis(graph.reliable(), ids);
        std::cout << structure << ": " << (report.valid ? "valid" : "invalid") << " (size " << report.size << ")\n";
        for (const auto& v : report.violations) std::cout << "  " << to_string(v.kind) << ' ' << v.a << ' ' << v.b << '\n';
        code = report.valid ? 0 : 1;
      }
      if (!transcript_path.empty()) {
        std::ifstream in(transcript_path);
        const auto rounds = read_transcript_jsonl(in);
        std::size_t mismatches = 0;
        for (const auto& r : rounds)
          mismatches += resolve_round(graph, r.adversary, r.broadcasts, r.round) != r.receptions;
        std::cout << "transcript: " << rounds.size() << " rounds, " << mismatches << " mismatching\n";
        if (mismatches) code = 2;
      }
      return code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
