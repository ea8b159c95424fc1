#include "dualgraph/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dualgraph {

std::size_t decay_phase_length(const DecayParams& params, std::size_t n) {
  if (params.phase_length > 0) return params.phase_length;
  if (n <= 2) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
}

namespace {

struct DecayState {
  bool covered = false;
  bool joined = false;
  bool knows_enough = false;
  NodeId dominator = 0;
  std::set<NodeId> join_senders;
  std::set<NodeId> known;    // known reliable neighbors
  std::set<NodeId> removed;  // reliable neighbors heard as covered
  std::vector<NodeId> foreign_dominators;  // from "C:<id>" messages
};

bool from_reliable_neighbor(const OutInput& in, const Reception& rx) {
  if (in.neighbors) return std::binary_search(in.neighbors->begin(), in.neighbors->end(), rx.sender);
  return rx.reliable_tag;
}

DecayState decay_state(const OutInput& in) {
  DecayState s;
  if (in.neighbors) s.known.insert(in.neighbors->begin(), in.neighbors->end());
  for (const Reception& rx : in.history) {
    if (!from_reliable_neighbor(in, rx) || rx.payload.empty()) continue;
    s.known.insert(rx.sender);
    switch (rx.payload.front()) {
      case kJoinTag:
        if (s.join_senders.empty()) s.dominator = rx.sender;
        s.join_senders.insert(rx.sender);
        break;
      case kCoveredTag: {
        s.removed.insert(rx.sender);
        if (rx.payload.size() > 2 && rx.payload[1] == ':') {
          NodeId other = 0;
          const char* begin = rx.payload.data() + 2;
          const char* end = rx.payload.data() + rx.payload.size();
          if (std::from_chars(begin, end, other).ec == std::errc{}) s.foreign_dominators.push_back(other);
        }
        break;
      }
      default:
        break;
    }
  }
  s.covered = !s.join_senders.empty();
  s.knows_enough = in.neighbors != nullptr || in.n == 1 || !s.known.empty();
  if (!s.covered && s.knows_enough) {
    s.joined = std::all_of(s.known.begin(), s.known.end(),
                           [&](NodeId v) { return v > in.id || s.removed.count(v) > 0; });
  }
  return s;
}

}  // namespace

Payload DecayMis::covered_payload(const OutInput&) const { return Payload(1, kCoveredTag); }

std::unique_ptr<NodeProcess> DecayMis::spawn(const NodeContext& context) const {
  return std::make_unique<HistoryProcess>(
      context, [this](const NodeContext& ctx, Round round, std::span<const Reception> history) {
        const OutInput in{ctx.id, ctx.n, ctx.neighbors ? &*ctx.neighbors : nullptr, history};
        const DecayState s = decay_state(in);
        const std::size_t phase = decay_phase_length(params_, ctx.n);
        const double p = std::ldexp(1.0, -static_cast<int>((round - 1) % phase));
        if (s.joined) return BroadcastIntent{p, Payload(1, kJoinTag)};
        if (s.covered) return BroadcastIntent{p, covered_payload(in)};
        if (ctx.mode == KnowledgeMode::passive) return BroadcastIntent{p, Payload(1, kHelloTag)};
        return BroadcastIntent{0.0, {}};
      });
}

double DecayMis::out(const OutInput& input) const {
  const DecayState s = decay_state(input);
  if (s.joined) return 1.0;
  if (s.covered) return 0.0;
  return params_.prior;
}

Payload DecayCds::covered_payload(const OutInput& input) const {
  const DecayState s = decay_state(input);
  return std::string(1, kCoveredTag) + ":" + std::to_string(s.dominator);
}

double DecayCds::out(const OutInput& input) const {
  const DecayState s = decay_state(input);
  if (s.joined) return 1.0;
  if (s.covered) {
    if (s.join_senders.size() >= 2) return 1.0;
    for (NodeId other : s.foreign_dominators) {
      if (other != 0 && s.join_senders.count(other) == 0 && other != input.id) return 1.0;
    }
    return 0.0;
  }
  return params_.prior;
}

// Round robin ---------------------------------------------------------------

namespace {

using Knowledge = std::map<NodeId, IdSet>;

Payload encode_knowledge(const Knowledge& known) {
  std::ostringstream os;
  os << "RR";
  for (const auto& [id, nbrs] : known) {
    os << '|' << id << ':';
    for (std::size_t i = 0; i < nbrs.size(); ++i) os << (i ? "," : "") << nbrs[i];
  }
  return os.str();
}

void absorb_knowledge(const Payload& payload, Knowledge& known) {
  if (payload.rfind("RR", 0) != 0) return;
  std::size_t pos = 2;
  while (pos < payload.size() && payload[pos] == '|') {
    const std::size_t colon = payload.find(':', pos);
    const std::size_t next = payload.find('|', pos + 1);
    const std::size_t end = next == std::string::npos ? payload.size() : next;
    if (colon == std::string::npos || colon > end) return;
    const NodeId id = static_cast<NodeId>(std::stoul(payload.substr(pos + 1, colon - pos - 1)));
    IdSet nbrs;
    std::size_t cursor = colon + 1;
    while (cursor < end) {
      std::size_t comma = payload.find(',', cursor);
      if (comma == std::string::npos || comma > end) comma = end;
      nbrs.push_back(static_cast<NodeId>(std::stoul(payload.substr(cursor, comma - cursor))));
      cursor = comma + 1;
    }
    known.emplace(id, std::move(nbrs));
    pos = end;
  }
}

Knowledge round_robin_knowledge(NodeId id, const IdSet& own, std::span<const Reception> history) {
  Knowledge known;
  known.emplace(id, own);
  for (const Reception& rx : history) absorb_knowledge(rx.payload, known);
  return known;
}

}  // namespace

std::unique_ptr<NodeProcess> RoundRobin::spawn(const NodeContext& context) const {
  if (context.mode != KnowledgeMode::advance || !context.neighbors) {
    throw std::invalid_argument("round-robin requires advance neighborhood knowledge");
  }
  if (context.n != n_) {
    throw std::invalid_argument("round-robin built for n=" + std::to_string(n_) +
                                " but the network has n=" + std::to_string(context.n));
  }
  return std::make_unique<HistoryProcess>(
      context, [](const NodeContext& ctx, Round round, std::span<const Reception> history) {
        const auto slot = static_cast<NodeId>((round - 1) % ctx.n + 1);
        if (slot != ctx.id) return BroadcastIntent{0.0, {}};
        return BroadcastIntent{1.0, encode_knowledge(round_robin_knowledge(ctx.id, *ctx.neighbors, history))};
      });
}

double RoundRobin::out(const OutInput& input) const {
  if (!input.neighbors) throw std::invalid_argument("round-robin requires advance neighborhood knowledge");
  const Knowledge known = round_robin_knowledge(input.id, *input.neighbors, input.history);
  bool complete = known.size() == input.n;
  for (NodeId v = 1; complete && v <= input.n; ++v) complete = known.count(v) > 0;
  if (complete) {
    std::set<Edge> edges;
    for (const auto& [u, nbrs] : known) {
      for (NodeId v : nbrs) {
        if (v >= 1 && v <= input.n && v != u) edges.insert(Edge::make(u, v));
      }
    }
    const std::vector<Edge> list(edges.begin(), edges.end());
    const IdSet mis = greedy_mis(Graph(input.n, list));
    return std::binary_search(mis.begin(), mis.end(), input.id) ? 1.0 : 0.0;
  }
  const auto& nbrs = *input.neighbors;
  return nbrs.empty() || input.id < nbrs.front() ? 1.0 : 0.0;
}

// Constant / fixed ------------------------------------------------------------

ConstantP::ConstantP(double join_probability, double broadcast_probability)
    : join_(join_probability), broadcast_(broadcast_probability) {
  if (!(join_ >= 0.0 && join_ <= 1.0) || !(broadcast_ >= 0.0 && broadcast_ <= 1.0)) {
    throw std::invalid_argument("constant-p probabilities must lie in [0,1]");
  }
}

std::unique_ptr<NodeProcess> ConstantP::spawn(const NodeContext& context) const {
  const double p = broadcast_;
  return std::make_unique<HistoryProcess>(
      context, [p](const NodeContext& ctx, Round, std::span<const Reception>) {
        return BroadcastIntent{p, "X" + std::to_string(ctx.id)};
      });
}

std::unique_ptr<NodeProcess> FixedOutput::spawn(const NodeContext& context) const {
  return std::make_unique<HistoryProcess>(
      context, [](const NodeContext&, Round, std::span<const Reception>) { return BroadcastIntent{}; });
}

double FixedOutput::out(const OutInput& input) const {
  return std::binary_search(members_.begin(), members_.end(), input.id) ? 1.0 : 0.0;
}

// Registry --------------------------------------------------------------------

namespace {

double param(const AlgorithmParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

DecayParams decay_params(const AlgorithmParams& params) {
  DecayParams d;
  d.phase_length = static_cast<std::size_t>(param(params, "phase_length", 0.0));
  d.prior = param(params, "prior", 0.5);
  if (!(d.prior >= 0.0 && d.prior <= 1.0)) throw std::invalid_argument("prior must lie in [0,1]");
  return d;
}

}  // namespace

std::unique_ptr<Algorithm> make_algorithm(const std::string& name, const AlgorithmParams& params,
                                          std::size_t n) {
  if (name == "decay-mis") return std::make_unique<DecayMis>(decay_params(params));
  if (name == "decay-cds") return std::make_unique<DecayCds>(decay_params(params));
  if (name == "round-robin") {
    return std::make_unique<RoundRobin>(static_cast<std::size_t>(param(params, "n", static_cast<double>(n))));
  }
  if (name == "constant-p") {
    return std::make_unique<ConstantP>(param(params, "p", 1.0), param(params, "broadcast", 0.0));
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::vector<std::string> algorithm_names() {
  return {"decay-mis", "decay-cds", "round-robin", "constant-p"};
}

// Oracles -------------------------------------------------------------------------

IdSet greedy_mis(const Graph& g) {
  std::vector<NodeId> order(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<NodeId>(i + 1);
  return greedy_mis(g, order);
}

IdSet greedy_mis(const Graph& g, const std::vector<NodeId>& order) {
  std::vector<bool> blocked(g.size(), false);
  IdSet mis;
  for (NodeId u : order) {
    if (blocked[u - 1]) continue;
    mis.push_back(u);
    blocked[u - 1] = true;
    for (NodeId v : g.neighbors(u)) blocked[v - 1] = true;
  }
  std::sort(mis.begin(), mis.end());
  return mis;
}

std::vector<IdSet> enumerate_mis(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kMisEnumerationLimit) {
    throw std::length_error("enumerate_mis is limited to " + std::to_string(kMisEnumerationLimit) + " nodes");
  }
  std::vector<std::uint32_t> closed(n, 0);
  std::vector<std::uint32_t> open(n, 0);
  for (NodeId u = 1; u <= n; ++u) {
    for (NodeId v : g.neighbors(u)) open[u - 1] |= 1u << (v - 1);
    closed[u - 1] = open[u - 1] | (1u << (u - 1));
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<IdSet> all;
  for (std::uint32_t s = 0; s <= full; ++s) {
    bool independent = true;
    std::uint32_t dominated = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1u)) continue;
      if (open[i] & s) independent = false;
      dominated |= closed[i];
    }
    if (!independent || dominated != full) continue;
    IdSet set;
    for (std::size_t i = 0; i < n; ++i) {
      if (s >> i & 1u) set.push_back(static_cast<NodeId>(i + 1));
    }
    all.push_back(std::move(set));
    if (s == full) break;
  }
  return all;
}

IdSet cds_from_mis(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) return {};
  if (!is_connected(g)) throw std::invalid_argument("cds_from_mis requires a connected graph");
  const IdSet mis = greedy_mis(g);
  std::vector<bool> in(n, false);
  for (NodeId id : mis) in[id - 1] = true;

  // Grow the component of the smallest member by BFS to the nearest outside
  // member, adding the interior path nodes, until everything is attached.
  while (true) {
    std::vector<bool> attached(n, false);
    std::queue<NodeId> q;
    const NodeId root = mis.front();
    attached[root - 1] = true;
    q.push(root);
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (NodeId v : g.neighbors(u)) {
        if (in[v - 1] && !attached[v - 1]) {
          attached[v - 1] = true;
          q.push(v);
        }
      }
    }
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) done = done && (!in[i] || attached[i]);
    if (done) break;

    std::vector<NodeId> parent(n, 0);
    std::vector<bool> seen(attached);
    for (std::size_t i = 0; i < n; ++i) {
      if (attached[i]) q.push(static_cast<NodeId>(i + 1));
    }
    NodeId hit = 0;
    while (!q.empty() && hit == 0) {
      const NodeId u = q.front();
      q.pop();
      for (NodeId v : g.neighbors(u)) {
        if (seen[v - 1]) continue;
        seen[v - 1] = true;
        parent[v - 1] = u;
        if (in[v - 1]) {
          hit = v;
          break;
        }
        q.push(v);
      }
    }
    for (NodeId u = parent[hit - 1]; !attached[u - 1]; u = parent[u - 1]) in[u - 1] = true;
  }

  IdSet cds;
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i]) cds.push_back(static_cast<NodeId>(i + 1));
  }
  return cds;
}

}  // namespace dualgraph
