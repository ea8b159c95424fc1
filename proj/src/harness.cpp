#include "dualgraph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "dualgraph/games.hpp"
#include "dualgraph/reductions.hpp"
#include "dualgraph/stats.hpp"
#include "dualgraph/structures.hpp"

namespace dualgraph {

namespace {

const std::vector<std::string> kKinds{"execution", "silent-set", "ring-coloring", "isolation", "bit-reveal"};
const std::vector<std::string> kBuilders{"ring",  "path",    "complete", "random-connected", "geometric",
                                         "cds-hard", "barbell", "g-kappa",  "file"};
const std::vector<std::string> kRounds{"fixed", "log", "log-squared", "sqrt-over-log", "linear", "n-squared"};
const std::vector<std::string> kAdversaries{"static_all", "static_none", "threshold"};
const std::vector<std::string> kIsolationPlayers{"uniform", "exclusion", "constant", "sequential", "barbell"};
const std::vector<std::string> kBitPlayers{"read-then-guess", "zeros", "g-kappa"};

bool one_of(const std::string& value, const std::vector<std::string>& options) {
  return std::find(options.begin(), options.end(), value) != options.end();
}

void require_name(const std::string& what, const std::string& value, const std::vector<std::string>& options) {
  if (!one_of(value, options)) throw ConfigError("unknown " + what + " '" + value + "'");
}

double get(const NumberParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t get_size(const NumberParams& params, const std::string& key, std::size_t fallback) {
  const double v = get(params, key, static_cast<double>(fallback));
  if (!(v >= 0) || v != std::floor(v)) throw ConfigError("parameter '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

NumberParams params_from_json(const Json& doc) {
  NumberParams params;
  if (doc.is_null()) return params;
  if (!doc.is_object()) throw ConfigError("params must be an object of numbers");
  for (const auto& [key, value] : doc.items()) {
    if (value.is_boolean()) params[key] = value.get<bool>() ? 1.0 : 0.0;
    else if (value.is_number()) params[key] = value.get<double>();
    else throw ConfigError("parameter '" + key + "' must be numeric");
  }
  return params;
}

Json params_to_json(const NumberParams& params) {
  Json out = Json::object();
  for (const auto& [k, v] : params) out[k] = v;
  return out;
}

template <typename T>
T field(const Json& doc, const char* key, T fallback) {
  if (!doc.is_object() || !doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

double log2n(std::size_t n) { return n > 1 ? std::log2(static_cast<double>(n)) : 1.0; }

Graph random_connected_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId u = 2; u <= n; ++u) edges.push_back(Edge::make(static_cast<NodeId>(1 + uniform_below(rng, u - 1)), u));
  std::sort(edges.begin(), edges.end());
  std::vector<Edge> extra;
  for (NodeId u = 1; u <= n; ++u)
    for (NodeId v = u + 1; v <= n; ++v)
      if (uniform01(rng()) < p && !std::binary_search(edges.begin(), edges.end(), Edge{u, v})) extra.push_back({u, v});
  edges.insert(edges.end(), extra.begin(), extra.end());
  return Graph(n, edges);
}

DualGraph with_overlay(const Graph& g, const std::string& overlay) {
  if (overlay == "complete") return DualGraph::complete_overlay(g);
  if (overlay == "none") return DualGraph::classical(g);
  throw ConfigError("unknown overlay '" + overlay + "'");
}

Bits random_bits(std::size_t k, std::uint64_t seed) {
  Rng rng = make_rng(seed, StreamTag::network, {k});
  Bits bits(k);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return bits;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- trial kinds ----

Json execution_trial(const ExperimentConfig& config, std::uint64_t seed, std::size_t& violations) {
  const std::uint64_t net_seed = derive_seed(seed, StreamTag::network);
  std::optional<HardNetworkLayout> layout;
  std::unique_ptr<Algorithm> hard_alg;
  DualGraph graph = [&] {
    if (config.network.builder == "cds-hard") {
      const std::size_t n = get_size(config.network.params, "n", 64);
      hard_alg = make_algorithm(config.algorithm.name, config.algorithm.params, n);
      layout = build_cds_hard_network(*hard_alg, n);
      return layout->graph;
    }
    return build_network(config.network, config.algorithm, net_seed);
  }();
  const std::size_t n = graph.size();
  const Round rounds = evaluate_rounds(config.rounds, n);
  const auto alg = make_algorithm(config.algorithm.name, config.algorithm.params, n);
  const auto adversary = make_adversary(config.adversary);
  const auto run = run_execution(graph, *adversary, *alg, config.knowledge, rounds, seed);

  Json rec;
  rec["n"] = n;
  rec["rounds"] = rounds;
  const bool cds = config.algorithm.name == "decay-cds";
  const auto joined = run.joined();
  const auto report = cds ? verify_cds(graph.reliable(), joined) : verify_mis(graph.reliable(), joined);
  rec["structure"] = cds ? "cds" : "mis";
  rec["valid"] = report.valid;
  rec["size"] = joined.size();
  if (cds && report.valid && n <= kMinCdsLimit && is_connected(graph.reliable()))
    rec["approx_ratio"] = approximation_ratio(graph.reliable(), joined);

  std::size_t max_receivers = 0;
  std::size_t total = 0;
  std::size_t saturated = 0;
  std::size_t saturated_multi = 0;
  std::size_t saturated_multi_receptions = 0;
  std::size_t tag_violations = 0;
  std::vector<bool> heard(n, false);
  for (const auto& round : run.transcript) {
    const std::size_t receivers = round.receiver_count();
    max_receivers = std::max(max_receivers, receivers);
    total += receivers;
    const bool all = round.adversary.kind() == EdgeChoice::Kind::all;
    saturated += all;
    if (all && round.broadcasts.size() >= 2) {
      ++saturated_multi;
      saturated_multi_receptions += receivers;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = round.receptions[i];
      if (!r) continue;
      heard[i] = true;
      if (r->reliable_tag != graph.is_reliable(r->sender, static_cast<NodeId>(i + 1))) ++tag_violations;
    }
  }
  rec["max_receivers"] = max_receivers;
  rec["max_receivers_per_log_n"] = static_cast<double>(max_receivers) / log2n(n);
  rec["total_receptions"] = total;
  rec["saturated_rounds"] = saturated;
  rec["saturated_multi_rounds"] = saturated_multi;
  rec["saturated_multi_receptions"] = saturated_multi_receptions;
  rec["tag_violations"] = tag_violations;
  violations += tag_violations;

  if (layout) {
    const auto issues = layout_violations(*layout, hard_alg.get());
    violations += issues.size();
    rec["layout_violations"] = issues.size();
    std::size_t silent = 0;
    std::size_t case1_silent = 0;
    for (const auto& part : layout->parts) {
      const bool quiet = std::none_of(part.members.begin(), part.members.end(), [&](NodeId id) { return heard[id - 1]; });
      silent += quiet;
      case1_silent += quiet && part.case_tag == 1;
    }
    rec["silent_point_sets"] = silent;
    rec["silent_case1_point_sets"] = case1_silent;
    rec["silent_fraction"] = static_cast<double>(silent) / static_cast<double>(layout->parts.size());
  }
  return rec;
}

Json ring_coloring_trial(const ExperimentConfig& config, std::uint64_t seed, std::size_t&) {
  const auto& p = config.game.params;
  const std::size_t n = get_size(p, "n", 64);
  const Round g = evaluate_rounds(config.rounds, n);
  const double epsilon = get(p, "epsilon", 1.0);
  const auto accounting = parse_exception_accounting(config.game.accounting);
  const auto alg = make_algorithm(config.algorithm.name, config.algorithm.params, n);
  MisColoringPlayer player(*alg, g, config.adversary.c, derive_seed(seed, StreamTag::player), accounting);
  BlockShuffleReferee referee(epsilon, derive_seed(seed, StreamTag::referee));
  const double bound = static_cast<double>(g) * log2n(n);
  const double scale = get(p, "budget_scale", 0.0);
  const std::size_t budget = scale > 0 ? static_cast<std::size_t>(std::floor(scale * bound)) : n;
  const auto game = play_selective_ring_coloring(player, referee, n, [budget](std::size_t) { return budget; });
  const auto& run = *player.last_run();

  Json rec;
  rec["n"] = n;
  rec["rounds"] = g;
  rec["exceptions"] = game.exceptions.size();
  rec["exceptions_mis_phase"] = run.heard_mis_phase.size();
  rec["exceptions_full"] = run.heard_any.size();
  rec["g_log_n"] = bound;
  rec["exceptions_per_g_log_n"] = static_cast<double>(game.exceptions.size()) / bound;
  rec["win"] = game.transcript.win;
  rec["conflicts"] = game.verdict.conflicts.size();
  return rec;
}

Json isolation_trial(const ExperimentConfig& config, std::uint64_t seed, std::size_t& violations) {
  const auto& p = config.game.params;
  const std::size_t k = get_size(p, "k", 64);
  const std::uint64_t player_seed = derive_seed(seed, StreamTag::player);
  const std::uint64_t referee_seed = derive_seed(seed, StreamTag::referee);
  Json rec;
  rec["k"] = k;
  const std::string& name = config.game.player;
  if (name == "barbell") {
    const Round f = evaluate_rounds(config.rounds, k);
    const auto alg = make_algorithm(config.algorithm.name, config.algorithm.params, k);
    const std::size_t max_rounds = get_size(p, "max_rounds", 2 * f + k);
    BarbellIsolationPlayer player(*alg, f, player_seed);
    const auto game = play_isolation(player, k, max_rounds, referee_seed);
    rec["max_rounds"] = max_rounds;
    rec["win"] = game.transcript.win;
    rec["guesses"] = game.guesses;
    rec["target"] = game.target;
    rec["rounds"] = f;
    rec["simulated_rounds"] = player.simulated().size();
    if (get(p, "verify", 1.0) != 0.0) {
      const auto all = static_all_edges();
      const auto truth = run_execution(barbell_graph(k, game.target), *all, *alg, KnowledgeMode::passive, f, player_seed);
      const auto& sim = player.simulated();
      bool match = sim.size() <= truth.transcript.size() && std::equal(sim.begin(), sim.end(), truth.transcript.begin());
      if (player.outputs()) match = match && *player.outputs() == truth.outputs;
      rec["transcript_match"] = match;
      violations += match ? 0 : 1;
    }
    return rec;
  }
  const std::size_t max_rounds = get_size(p, "max_rounds", k);
  std::unique_ptr<IsolationPlayer> player;
  if (name == "uniform") player = std::make_unique<UniformGuessPlayer>(player_seed);
  else if (name == "exclusion") player = std::make_unique<ExclusionPlayer>(player_seed);
  else if (name == "constant") player = std::make_unique<ConstantGuessPlayer>(static_cast<NodeId>(get_size(p, "guess", 1)));
  else player = std::make_unique<SequentialGuessPlayer>();
  const auto game = play_isolation(*player, k, max_rounds, referee_seed);
  rec["max_rounds"] = max_rounds;
  rec["win"] = game.transcript.win;
  rec["guesses"] = game.guesses;
  rec["target"] = game.target;
  return rec;
}

Json bit_reveal_trial(const ExperimentConfig& config, std::uint64_t seed, std::size_t& violations) {
  const auto& p = config.game.params;
  const std::size_t k = get_size(p, "k", 16);
  const std::uint64_t player_seed = derive_seed(seed, StreamTag::player);
  const std::uint64_t referee_seed = derive_seed(seed, StreamTag::referee);
  Json rec;
  rec["k"] = k;
  const std::string& name = config.game.player;
  if (name == "g-kappa") {
    const std::size_t n = (kGKappaSetSize + 1) * k;
    const Round f = evaluate_rounds(config.rounds, n);
    const auto alg = make_algorithm(config.algorithm.name, config.algorithm.params, n);
    GKappaBitRevealPlayer player(*alg, f, player_seed);
    const auto game = play_bit_revealing(player, k, get_size(p, "max_rounds", f), referee_seed);
    rec["rounds"] = f;
    rec["win"] = game.transcript.win;
    rec["requests"] = game.requests;
    if (get(p, "verify", 1.0) != 0.0) {
      const auto all = static_all_edges();
      const auto truth = run_execution(build_g_kappa(game.secret), *all, *alg, KnowledgeMode::passive, f, player_seed);
      const auto& sim = player.simulated();
      bool match = sim.size() <= truth.transcript.size() && std::equal(sim.begin(), sim.end(), truth.transcript.begin());
      if (player.outputs()) match = match && *player.outputs() == truth.outputs;
      rec["transcript_match"] = match;
      violations += match ? 0 : 1;
    }
    return rec;
  }
  const std::size_t reads = get_size(p, "reads", 0);
  const std::size_t max_rounds = get_size(p, "max_rounds", std::max(reads, k));
  std::unique_ptr<BitRevealPlayer> player;
  if (name == "zeros") player = std::make_unique<FixedGuessPlayer>(Bits(k, 0));
  else player = std::make_unique<ReadThenGuessPlayer>(reads, player_seed);
  const auto game = play_bit_revealing(*player, k, max_rounds, referee_seed);
  rec["reads"] = reads;
  rec["win"] = game.transcript.win;
  rec["requests"] = game.requests;
  return rec;
}

}  // namespace

// ---- config ----

Json config_to_json(const ExperimentConfig& c) {
  Json doc;
  doc["kind"] = c.kind;
  doc["network"] = {{"builder", c.network.builder},
                    {"params", params_to_json(c.network.params)},
                    {"overlay", c.network.overlay},
                    {"file", c.network.file}};
  doc["adversary"] = {{"kind", c.adversary.kind}, {"c", c.adversary.c}};
  doc["algorithm"] = {{"name", c.algorithm.name}, {"params", params_to_json(c.algorithm.params)}};
  doc["knowledge"] = to_string(c.knowledge);
  doc["rounds"] = {{"name", c.rounds.name}, {"params", params_to_json(c.rounds.params)}};
  doc["game"] = {{"player", c.game.player}, {"params", params_to_json(c.game.params)}, {"accounting", c.game.accounting}};
  doc["trials"] = c.trials;
  doc["seed"] = c.seed;
  doc["output"] = {{"dir", c.output.dir}, {"jsonl", c.output.jsonl}, {"csv", c.output.csv}};
  return doc;
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.kind = field<std::string>(doc, "kind", c.kind);
  if (doc.contains("network")) {
    const auto& n = doc.at("network");
    c.network.builder = field<std::string>(n, "builder", c.network.builder);
    c.network.params = params_from_json(n.value("params", Json()));
    c.network.overlay = field<std::string>(n, "overlay", c.network.overlay);
    c.network.file = field<std::string>(n, "file", c.network.file);
  }
  if (doc.contains("adversary")) {
    const auto& a = doc.at("adversary");
    c.adversary.kind = field<std::string>(a, "kind", c.adversary.kind);
    c.adversary.c = field<double>(a, "c", c.adversary.c);
  }
  if (doc.contains("algorithm")) {
    const auto& a = doc.at("algorithm");
    c.algorithm.name = field<std::string>(a, "name", c.algorithm.name);
    c.algorithm.params = params_from_json(a.value("params", Json()));
  }
  try {
    c.knowledge = parse_knowledge_mode(field<std::string>(doc, "knowledge", to_string(c.knowledge)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (doc.contains("rounds")) {
    const auto& r = doc.at("rounds");
    c.rounds.name = field<std::string>(r, "name", c.rounds.name);
    c.rounds.params = params_from_json(r.value("params", Json()));
  }
  if (doc.contains("game")) {
    const auto& g = doc.at("game");
    c.game.player = field<std::string>(g, "player", c.game.player);
    c.game.params = params_from_json(g.value("params", Json()));
    c.game.accounting = field<std::string>(g, "accounting", c.game.accounting);
  }
  c.trials = field<std::size_t>(doc, "trials", c.trials);
  c.seed = field<std::uint64_t>(doc, "seed", c.seed);
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    c.output.dir = field<std::string>(o, "dir", c.output.dir);
    c.output.jsonl = field<std::string>(o, "jsonl", c.output.jsonl);
    c.output.csv = field<std::string>(o, "csv", c.output.csv);
  }
  validate_config(c);
  return c;
}

ExperimentConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return config_from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

void validate_config(const ExperimentConfig& c) {
  require_name("experiment kind", c.kind, kKinds);
  require_name("network builder", c.network.builder, kBuilders);
  require_name("adversary kind", c.adversary.kind, kAdversaries);
  require_name("algorithm", c.algorithm.name, algorithm_names());
  require_name("rounds preset", c.rounds.name, kRounds);
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.network.overlay != "complete" && c.network.overlay != "none")
    throw ConfigError("unknown overlay '" + c.network.overlay + "'");
  if (c.network.builder == "file" && c.network.file.empty()) throw ConfigError("file builder needs network.file");
  if (c.adversary.kind == "threshold" && !(c.adversary.c > 0)) throw ConfigError("threshold c must be positive");
  if (c.kind == "isolation") require_name("isolation player", c.game.player, kIsolationPlayers);
  if (c.kind == "bit-reveal") require_name("bit-reveal player", c.game.player, kBitPlayers);
  if (c.kind == "ring-coloring") {
    if (c.game.player != "mis-coloring") throw ConfigError("unknown ring-coloring player '" + c.game.player + "'");
    try {
      parse_exception_accounting(c.game.accounting);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

Round evaluate_rounds(const RoundsSpec& spec, std::size_t n) {
  const double scale = get(spec.params, "scale", 1.0);
  const double lg = log2n(n);
  const double dn = static_cast<double>(n);
  double value = 0;
  if (spec.name == "fixed") value = get(spec.params, "value", 0.0);
  else if (spec.name == "log") value = std::ceil(scale * std::ceil(lg));
  else if (spec.name == "log-squared") value = std::ceil(scale * std::ceil(lg) * std::ceil(lg));
  else if (spec.name == "sqrt-over-log") value = std::floor(scale * std::sqrt(dn) / (2.0 * lg) + 1e-9);
  else if (spec.name == "linear") value = std::ceil(scale * dn);
  else if (spec.name == "n-squared") value = std::ceil(scale * dn * dn);
  else throw ConfigError("unknown rounds preset '" + spec.name + "'");
  value = std::max(value, get(spec.params, "min", 0.0));
  if (!(value >= 0)) throw ConfigError("round count must be non-negative");
  return static_cast<Round>(value);
}

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec) {
  if (spec.kind == "static_all") return static_all_edges();
  if (spec.kind == "static_none") return static_no_edges();
  if (spec.kind == "threshold") return threshold_adversary(spec.c);
  throw ConfigError("unknown adversary kind '" + spec.kind + "'");
}

DualGraph build_network(const NetworkSpec& spec, const AlgorithmSpec& algorithm, std::uint64_t network_seed) {
  const auto& p = spec.params;
  Rng rng = make_rng(network_seed, StreamTag::network);
  if (spec.builder == "file") return read_graph_file(spec.file);
  if (spec.builder == "ring" || spec.builder == "path") {
    const std::size_t n = get_size(p, "n", 16);
    std::vector<NodeId> ids(n);
    std::iota(ids.begin(), ids.end(), NodeId{1});
    if (get(p, "shuffle", 0.0) != 0.0) portable_shuffle(ids.begin(), ids.end(), rng);
    return with_overlay(spec.builder == "ring" ? Graph::ring(ids) : Graph::path(ids), spec.overlay);
  }
  if (spec.builder == "complete") return with_overlay(Graph::complete(get_size(p, "n", 16)), spec.overlay);
  if (spec.builder == "random-connected")
    return with_overlay(random_connected_graph(get_size(p, "n", 16), get(p, "p", 0.1), rng), spec.overlay);
  if (spec.builder == "geometric") {
    const std::size_t n = get_size(p, "n", 32);
    const double side = get(p, "side", std::sqrt(static_cast<double>(n)));
    std::vector<Point> pts(n);
    for (auto& pt : pts) pt = {side * uniform01(rng()), side * uniform01(rng())};
    return geometric_dualgraph(pts, get(p, "gamma", 2.0));
  }
  if (spec.builder == "cds-hard") {
    const std::size_t n = get_size(p, "n", 64);
    const auto alg = make_algorithm(algorithm.name, algorithm.params, n);
    return build_cds_hard_network(*alg, n).graph;
  }
  if (spec.builder == "barbell") {
    const std::size_t k = get_size(p, "k", 16);
    std::size_t t = get_size(p, "t", 0);
    if (t == 0) t = 1 + uniform_below(rng, k);
    return barbell_graph(k, static_cast<NodeId>(t));
  }
  if (spec.builder == "g-kappa") return build_g_kappa(random_bits(get_size(p, "k", 8), network_seed));
  throw ConfigError("unknown network builder '" + spec.builder + "'");
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return derive_seed(master, StreamTag::trial, {trial});
}

Json run_trial(const ExperimentConfig& config, std::size_t trial) {
  const std::uint64_t seed = trial_seed(config.seed, trial);
  std::size_t violations = 0;
  Json rec;
  if (config.kind == "execution" || config.kind == "silent-set") rec = execution_trial(config, seed, violations);
  else if (config.kind == "ring-coloring") rec = ring_coloring_trial(config, seed, violations);
  else if (config.kind == "isolation") rec = isolation_trial(config, seed, violations);
  else if (config.kind == "bit-reveal") rec = bit_reveal_trial(config, seed, violations);
  else throw ConfigError("unknown experiment kind '" + config.kind + "'");
  rec["trial"] = trial;
  rec["seed"] = seed;
  rec["violations"] = violations;
  return rec;
}

std::vector<SummaryRow> summarize(const std::vector<Json>& records) {
  std::map<std::string, std::vector<double>> values;
  std::map<std::string, bool> binary;
  for (const auto& rec : records) {
    for (const auto& [key, value] : rec.items()) {
      if (key == "trial" || key == "seed") continue;
      if (value.is_boolean()) {
        values[key].push_back(value.get<bool>() ? 1.0 : 0.0);
        binary.emplace(key, true);
      } else if (value.is_number()) {
        values[key].push_back(value.get<double>());
        binary[key] = false;
      }
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, xs] : values) {
    SummaryRow row;
    row.metric = key;
    row.count = xs.size();
    row.mean = mean(xs);
    row.min = *std::min_element(xs.begin(), xs.end());
    row.max = *std::max_element(xs.begin(), xs.end());
    row.binary = binary[key];
    if (row.binary) {
      row.successes = static_cast<std::size_t>(std::count(xs.begin(), xs.end(), 1.0));
      const auto ci = wilson_interval(row.successes, row.count);
      row.wilson_low = ci.low;
      row.wilson_high = ci.high;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "metric,count,mean,min,max,successes,wilson_low,wilson_high\n";
  for (const auto& r : rows) {
    out << r.metric << ',' << r.count << ',' << format_double(r.mean) << ',' << format_double(r.min) << ','
        << format_double(r.max) << ',';
    if (r.binary) out << r.successes << ',' << format_double(r.wilson_low) << ',' << format_double(r.wilson_high);
    else out << ",,";
    out << '\n';
  }
  return out.str();
}

const SummaryRow* find_metric(const std::vector<SummaryRow>& rows, const std::string& metric) {
  for (const auto& r : rows)
    if (r.metric == metric) return &r;
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned jobs) {
  validate_config(config);
  ExperimentResult result;
  result.records.resize(config.trials);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(config.trials)));
  if (jobs == 1) {
    for (std::size_t t = 0; t < config.trials; ++t) result.records[t] = run_trial(config, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t t = next++; t < config.trials; t = next++) {
          try {
            result.records[t] = run_trial(config, t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (const auto& rec : result.records) result.violations += rec.at("violations").get<std::size_t>();
  result.summary = summarize(result.records);
  return result;
}

std::string records_jsonl(const std::vector<Json>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += rec.dump();
    out += '\n';
  }
  return out;
}

std::filesystem::path output_directory(const OutputSpec& spec) {
  if (!spec.dir.empty()) return spec.dir;
  if (const char* env = std::getenv("DUALGRAPH_OUTPUT_DIR"); env && *env) return env;
  return "out";
}

std::filesystem::path write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  const auto dir = output_directory(config.output);
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
  };
  write(dir / config.output.jsonl, records_jsonl(result.records));
  write(dir / config.output.csv, summary_csv(result.summary));
  return dir;
}

}  // namespace dualgraph
