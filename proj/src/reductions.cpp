#include "dualgraph/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dualgraph {

namespace {

constexpr char kAnnounceTag = 'L';

// Second stage of the MIS -> coloring transform: MIS node j announces in
// slot j, everyone else stays silent. Coins are irrelevant (p is 0 or 1).
class AnnounceAlgorithm final : public Algorithm {
 public:
  explicit AnnounceAlgorithm(std::vector<std::uint8_t> joined) : joined_(std::move(joined)) {}

  std::string name() const override { return "announce"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override {
    const bool joined = joined_.at(context.id - 1) != 0;
    return std::make_unique<HistoryProcess>(context, [joined](const NodeContext& ctx, Round r, auto) {
      return BroadcastIntent{joined && r == ctx.id ? 1.0 : 0.0, Payload(1, kAnnounceTag)};
    });
  }
  double out(const OutInput&) const override { return 0.0; }

 private:
  std::vector<std::uint8_t> joined_;
};

IdSet heard(const std::vector<RoundTranscript>& rounds, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const auto& round : rounds)
    for (std::size_t i = 0; i < n; ++i)
      if (round.receptions[i]) seen[i] = true;
  IdSet ids;
  for (std::size_t i = 0; i < n; ++i)
    if (seen[i]) ids.push_back(static_cast<NodeId>(i + 1));
  return ids;
}

std::size_t integer_sqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void add_clique(std::vector<Edge>& edges, const IdSet& ids) {
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b) edges.push_back(Edge::make(ids[a], ids[b]));
}

}  // namespace

// ---- MIS -> ring 3-coloring ----

std::optional<RingAssignment> ring_orientation(const Graph& g) {
  const std::size_t n = g.size();
  if (n < 3) return std::nullopt;
  for (NodeId v = 1; v <= n; ++v)
    if (g.degree(v) != 2) return std::nullopt;
  std::vector<NodeId> order{1};
  NodeId prev = 1;
  NodeId cur = g.neighbors(1)[0];
  while (cur != 1) {
    if (order.size() == n) return std::nullopt;
    order.push_back(cur);
    const auto nb = g.neighbors(cur);
    const NodeId next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (order.size() != n) return std::nullopt;
  return RingAssignment(std::move(order));
}

std::string to_string(ExceptionAccounting accounting) {
  return accounting == ExceptionAccounting::mis_phase ? "mis-phase" : "full";
}

ExceptionAccounting parse_exception_accounting(const std::string& text) {
  if (text == "mis-phase") return ExceptionAccounting::mis_phase;
  if (text == "full") return ExceptionAccounting::full;
  throw std::invalid_argument("unknown exception accounting: " + text);
}

Color MisToColoring::color(bool joined, NodeId clockwise_id, std::span<const Reception> announcements) {
  if (joined) return 1;
  for (const auto& r : announcements)
    if (r.sender == clockwise_id && r.payload == Payload(1, kAnnounceTag)) return 2;
  return 3;
}

RingColoringRun MisToColoring::run(const DualGraph& graph, const RingAssignment& orientation,
                                   const Adversary& adversary, Round mis_rounds, std::uint64_t seed,
                                   const TripleResolver& resolver) const {
  const std::size_t n = graph.size();
  if (orientation.size() != n || orientation.ring().edges() != graph.reliable().edges())
    throw std::invalid_argument("reliable graph is not the oriented ring");

  const auto lists = neighbor_lists(graph.reliable());
  Execution mis(n, mis_, KnowledgeMode::advance, &lists, seed);
  for (Round r = 1; r <= mis_rounds; ++r) step_execution(mis, graph, adversary);

  RingColoringRun run;
  if (resolver) {
    run.joined = mis.outputs([&](NodeId id, double p) {
      const std::size_t pos = orientation.position_of(id);
      return resolver(orientation.counterclockwise(pos), id, orientation.clockwise(pos), p);
    });
  } else {
    run.joined = mis.outputs();
  }
  run.mis_phase = mis.transcript();

  const AnnounceAlgorithm announce(run.joined);
  Execution slots(n, announce, KnowledgeMode::advance, &lists, seed);
  for (Round r = 1; r <= n; ++r) step_execution(slots, graph, adversary);
  run.announce_phase = slots.transcript();

  run.colors.resize(n);
  for (NodeId id = 1; id <= n; ++id) {
    const NodeId cw = orientation.clockwise(orientation.position_of(id));
    run.colors[id - 1] = color(run.joined[id - 1] != 0, cw, slots.history(id));
  }
  run.heard_mis_phase = heard(run.mis_phase, n);
  auto all_rounds = run.mis_phase;
  all_rounds.insert(all_rounds.end(), run.announce_phase.begin(), run.announce_phase.end());
  run.heard_any = heard(all_rounds, n);
  return run;
}

RingColoringRun MisToColoring::run(const DualGraph& graph, const Adversary& adversary, Round mis_rounds,
                                   std::uint64_t seed) const {
  const auto orientation = ring_orientation(graph.reliable());
  if (!orientation) throw std::invalid_argument("reliable graph is not a ring");
  return run(graph, *orientation, adversary, mis_rounds, seed);
}

MisColoringPlayer::MisColoringPlayer(const Algorithm& mis, Round rounds, double c, std::uint64_t seed,
                                     ExceptionAccounting accounting)
    : mis_(mis),
      rounds_(rounds),
      c_(c),
      seed_(seed),
      accounting_(accounting),
      kappa_(derive_seed(seed, StreamTag::player, {0})) {}

TripleColoring MisColoringPlayer::commit(std::size_t n) {
  const Algorithm& mis = mis_;
  const KappaStore kappa = kappa_;
  return TripleColoring(
      n,
      [&mis, kappa, n](NodeId i, NodeId j, NodeId k) -> Color {
        IdSet nbrs{std::min(i, k), std::max(i, k)};
        const double p = checked_out(mis, OutInput{j, n, &nbrs, {}});
        return MisToColoring::color(kappa.decide(i, j, k, p), k, {});
      },
      kappa_.seed());
}

IdSet MisColoringPlayer::exceptions(const RingAssignment& assignment) {
  const auto graph = DualGraph::complete_overlay(assignment.ring());
  const ThresholdAdversary adversary(c_);
  const KappaStore& kappa = kappa_;
  last_run_ = MisToColoring(mis_).run(graph, assignment, adversary, rounds_,
                                      derive_seed(seed_, StreamTag::player, {1}),
                                      [&kappa](NodeId i, NodeId j, NodeId k, double p) { return kappa.decide(i, j, k, p); });
  return accounting_ == ExceptionAccounting::mis_phase ? last_run_->heard_mis_phase : last_run_->heard_any;
}

// ---- hard CDS network ----

std::size_t HardNetworkLayout::part_of(NodeId id) const {
  for (std::size_t h = 0; h < parts.size(); ++h) {
    const auto& part = parts[h];
    if (id == part.core || std::binary_search(part.members.begin(), part.members.end(), id)) return h;
  }
  throw std::out_of_range("id not in any part");
}

HardNetworkLayout build_cds_hard_network(const Algorithm& cds, std::size_t n) {
  if (n < 9) throw std::invalid_argument("hard network needs n >= 9");
  const std::size_t k = integer_sqrt(n);
  std::vector<Edge> edges;
  std::vector<PointSet> parts;
  IdSet cores;
  for (std::size_t h = 0; h < k; ++h) {
    const auto first = static_cast<NodeId>(h * k + 1);
    const auto last = static_cast<NodeId>(h + 1 == k ? n : (h + 1) * k);
    PointSet part;
    part.core = first;
    for (NodeId id = first + 1; id <= last; ++id) part.members.push_back(id);
    std::optional<NodeId> witness;
    for (NodeId id : part.members) {
      IdSet others;
      for (NodeId other : part.members)
        if (other != id) others.push_back(other);
      const double p = checked_out(cds, OutInput{id, n, &others, {}});
      part.join_probabilities.push_back(p);
      if (!witness && p < 0.5) witness = id;
    }
    if (!witness) {
      part.case_tag = 1;
      part.connector = part.members.front();
      add_clique(edges, part.members);
      edges.push_back(Edge::make(part.connector, part.core));
    } else {
      part.case_tag = 2;
      part.connector = *witness;
      NodeId extender = 0;
      for (NodeId id : part.members)
        if (id != *witness) extender = std::max(extender, id);
      part.extender = extender;
      IdSet clique;
      for (NodeId id : part.members)
        if (id != extender) clique.push_back(id);
      add_clique(edges, clique);
      edges.push_back(Edge::make(part.connector, extender));
      edges.push_back(Edge::make(extender, part.core));
    }
    cores.push_back(part.core);
    parts.push_back(std::move(part));
  }
  add_clique(edges, cores);
  return HardNetworkLayout{DualGraph::complete_overlay(Graph(n, edges)), k, std::move(cores), std::move(parts)};
}

std::vector<std::string> layout_violations(const HardNetworkLayout& layout, const Algorithm* cds) {
  std::vector<std::string> issues;
  const Graph& g = layout.graph.reliable();
  const std::size_t n = g.size();
  auto fail = [&](std::string what) { issues.push_back(std::move(what)); };

  if (layout.k != integer_sqrt(n)) fail("k is not floor(sqrt(n))");
  if (layout.parts.size() != layout.k) fail("part count differs from k");
  const std::size_t pairs = n * (n - 1) / 2;
  if (g.edge_count() + layout.graph.unreliable().edge_count() != pairs) fail("overlay is not complete");

  std::size_t covered = 0;
  for (std::size_t h = 0; h < layout.parts.size(); ++h) {
    const auto& part = layout.parts[h];
    const std::string tag = "part " + std::to_string(h + 1) + ": ";
    covered += part.members.size() + 1;
    const std::size_t expected = h + 1 == layout.k ? n - h * layout.k : layout.k;
    if (part.members.size() + 1 != expected) fail(tag + "wrong size");
    if (part.core != h * layout.k + 1) fail(tag + "core is not the smallest id");
    if (!part.members.empty() && part.members.front() <= part.core) fail(tag + "core is not the smallest id");

    const bool any_low =
        std::any_of(part.join_probabilities.begin(), part.join_probabilities.end(), [](double p) { return p < 0.5; });
    if ((part.case_tag == 2) != any_low || (part.case_tag != 1 && part.case_tag != 2)) fail(tag + "case tag mismatch");

    IdSet clique = part.members;
    if (part.case_tag == 2) {
      if (!part.extender) {
        fail(tag + "case 2 without extender");
        continue;
      }
      clique.erase(std::remove(clique.begin(), clique.end(), *part.extender), clique.end());
      const auto ext = g.neighbors(*part.extender);
      if (IdSet(ext.begin(), ext.end()) != IdSet{std::min(part.connector, part.core), std::max(part.connector, part.core)})
        fail(tag + "extender must touch exactly the connector and the core");
      const auto it = std::find(part.members.begin(), part.members.end(), part.connector);
      if (it == part.members.end() || part.join_probabilities[it - part.members.begin()] >= 0.5)
        fail(tag + "connector is not a low-probability witness");
      if (cds) {
        IdSet others;
        for (NodeId id : part.members)
          if (id != part.connector) others.push_back(id);
        if (checked_out(*cds, OutInput{part.connector, n, &others, {}}) >= 0.5)
          fail(tag + "recomputed connector probability is not below 1/2");
      }
    }
    for (std::size_t a = 0; a < clique.size(); ++a)
      for (std::size_t b = a + 1; b < clique.size(); ++b)
        if (!g.has_edge(clique[a], clique[b])) fail(tag + "clique edge missing");

    // Exactly one edge leaves the point set, and it ends at the core.
    std::size_t leaving = 0;
    for (NodeId id : part.members)
      for (NodeId v : g.neighbors(id))
        if (!std::binary_search(part.members.begin(), part.members.end(), v)) {
          ++leaving;
          if (v != part.core) fail(tag + "point set touches a foreign node");
        }
    if (leaving != 1) fail(tag + "point set does not hang off its core by a single edge");
    const NodeId attach = part.case_tag == 1 ? part.connector : *part.extender;
    if (!g.has_edge(attach, part.core)) fail(tag + "attachment edge missing");
  }
  if (covered != n) fail("parts do not cover [n]");
  for (std::size_t a = 0; a < layout.cores.size(); ++a)
    for (std::size_t b = a + 1; b < layout.cores.size(); ++b)
      if (!g.has_edge(layout.cores[a], layout.cores[b])) fail("cores do not form a clique");
  return issues;
}

// ---- barbell ----

NodeId barbell_partner(std::size_t k, NodeId i) {
  if (k < 2 || i < 1 || i > k) throw std::out_of_range("barbell id outside [k]");
  const auto half = static_cast<NodeId>(k / 2);
  if (i <= half) return i + half;
  if (i <= 2 * half) return i - half;
  return half;
}

DualGraph barbell_graph(std::size_t k, NodeId target) {
  const NodeId partner = barbell_partner(k, target);
  const auto half = static_cast<NodeId>(k / 2);
  IdSet left;
  IdSet right;
  for (NodeId id = 1; id <= k; ++id) (id <= half ? left : right).push_back(id);
  std::vector<Edge> edges;
  add_clique(edges, left);
  add_clique(edges, right);
  edges.push_back(Edge::make(target, partner));
  return DualGraph::complete_overlay(Graph(k, edges));
}

BarbellIsolationPlayer::BarbellIsolationPlayer(const Algorithm& cds, Round rounds, std::uint64_t seed)
    : cds_(cds), rounds_(rounds), seed_(seed) {}

void BarbellIsolationPlayer::start(std::size_t k) {
  k_ = k;
  exec_ = std::make_unique<Execution>(k, cds_, KnowledgeMode::passive, nullptr, seed_);
  pending_.clear();
  lone_.reset();
  rejected_.assign(k + 1, false);
  outputs_.reset();
  issued_ = 0;
}

const std::vector<RoundTranscript>& BarbellIsolationPlayer::simulated() const {
  if (!exec_) throw std::logic_error("player not started");
  return exec_->transcript();
}

void BarbellIsolationPlayer::rejected(NodeId guess) {
  if (guess >= 1 && guess <= k_) rejected_[guess] = true;
}

void BarbellIsolationPlayer::finish_lone_round() {
  // Every "no" rules the sender out as a bridge endpoint, so its reliable
  // neighbors are exactly the rest of its own clique.
  const Broadcast sent = *lone_;
  lone_.reset();
  const Round round = exec_->next_round();
  const auto half = static_cast<NodeId>(k_ / 2);
  const bool sender_left = sent.sender <= half;
  Receptions receptions(k_);
  for (NodeId v = 1; v <= k_; ++v)
    if (v != sent.sender) receptions[v - 1] = Reception{round, sent.sender, sent.payload, (v <= half) == sender_left};
  exec_->deliver(EdgeChoice::all(), std::move(receptions));
}

std::optional<NodeId> BarbellIsolationPlayer::next_guess() {
  while (true) {
    while (!pending_.empty()) {
      const NodeId guess = pending_.front();
      pending_.erase(pending_.begin());
      if (rejected_[guess]) continue;
      ++issued_;
      return guess;
    }
    if (lone_) {
      finish_lone_round();
      continue;
    }
    if (outputs_) return std::nullopt;
    if (exec_->next_round() <= rounds_) {
      exec_->declare();
      const auto& broadcasts = exec_->flip();
      if (broadcasts.size() != 1) {
        exec_->deliver(EdgeChoice::all(), Receptions(k_));
        continue;
      }
      const NodeId sender = broadcasts.front().sender;
      lone_ = broadcasts.front();
      pending_ = {sender, barbell_partner(k_, sender)};
      if (k_ % 2 == 1 && sender == k_ / 2) pending_.push_back(static_cast<NodeId>(k_));
      continue;
    }
    outputs_ = exec_->outputs();
    for (std::size_t i = 0; i < k_; ++i)
      if ((*outputs_)[i]) pending_.push_back(static_cast<NodeId>(i + 1));
  }
}

// ---- G_kappa ----

std::size_t g_kappa_index(std::size_t k, NodeId id) {
  if (id < 1 || id > (kGKappaSetSize + 1) * k) throw std::out_of_range("id outside G_kappa");
  if (id <= k) return id;
  return (id - k - 1) / kGKappaSetSize + 1;
}

IdSet g_kappa_neighbors(std::size_t k, NodeId id, std::uint8_t bit) {
  const std::size_t i = g_kappa_index(k, id);
  const auto first = static_cast<NodeId>(k + kGKappaSetSize * (i - 1) + 1);
  IdSet nbrs;
  if (id <= k) {
    if (id > 1) nbrs.push_back(id - 1);
    if (id < k) nbrs.push_back(id + 1);
    nbrs.push_back(first);
  } else {
    const NodeId offset = id - first;
    if (offset == 0) nbrs.push_back(static_cast<NodeId>(i));
    for (NodeId o = 0; o < kGKappaSetSize; ++o) {
      if (o == offset) continue;
      const bool adjacent = bit ? true : (o + 1 == offset || offset + 1 == o);
      if (adjacent) nbrs.push_back(first + o);
    }
  }
  std::sort(nbrs.begin(), nbrs.end());
  return nbrs;
}

DualGraph build_g_kappa(const Bits& kappa) {
  const std::size_t k = kappa.size();
  if (k == 0) throw std::invalid_argument("G_kappa needs at least one bit");
  const std::size_t n = (kGKappaSetSize + 1) * k;
  std::vector<Edge> edges;
  for (NodeId u = 1; u <= n; ++u)
    for (NodeId v : g_kappa_neighbors(k, u, kappa[g_kappa_index(k, u) - 1]))
      if (u < v) edges.push_back({u, v});
  return DualGraph::complete_overlay(Graph(n, edges));
}

Bits decode_g_kappa(std::size_t k, const std::vector<std::uint8_t>& outputs) {
  if (outputs.size() != (kGKappaSetSize + 1) * k) throw std::invalid_argument("output vector does not match 6k");
  Bits guess(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t joiners = 0;
    for (std::size_t o = 0; o < kGKappaSetSize; ++o) joiners += outputs[k + kGKappaSetSize * i + o] ? 1 : 0;
    guess[i] = joiners <= 1 ? 1 : 0;
  }
  return guess;
}

GKappaBitRevealPlayer::GKappaBitRevealPlayer(const Algorithm& mis, Round rounds, std::uint64_t seed)
    : mis_(mis), rounds_(rounds), seed_(seed) {}

void GKappaBitRevealPlayer::start(std::size_t k) {
  k_ = k;
  exec_ = std::make_unique<Execution>((kGKappaSetSize + 1) * k, mis_, KnowledgeMode::passive, nullptr, seed_);
  lone_.reset();
  awaiting_ = false;
  outputs_.reset();
}

const std::vector<RoundTranscript>& GKappaBitRevealPlayer::simulated() const {
  if (!exec_) throw std::logic_error("player not started");
  return exec_->transcript();
}

BitMove GKappaBitRevealPlayer::next_move() {
  if (awaiting_) throw std::logic_error("previous request unanswered");
  if (exec_->next_round() <= rounds_) {
    exec_->declare();
    const auto& broadcasts = exec_->flip();
    awaiting_ = true;
    if (broadcasts.size() == 1) {
      lone_ = broadcasts.front();
      return BitRequest{static_cast<NodeId>(g_kappa_index(k_, lone_->sender))};
    }
    lone_.reset();
    return BitRequest{1};  // throwaway: the round is silent regardless
  }
  outputs_ = exec_->outputs();
  return BitGuess{decode_g_kappa(k_, *outputs_)};
}

void GKappaBitRevealPlayer::revealed(NodeId, std::optional<std::uint8_t> bit) {
  if (!awaiting_) throw std::logic_error("reveal without a request");
  awaiting_ = false;
  const std::size_t n = (kGKappaSetSize + 1) * k_;
  Receptions receptions(n);
  if (lone_) {
    if (!bit) throw std::logic_error("referee refused an in-range request");
    const NodeId sender = lone_->sender;
    const IdSet nbrs = g_kappa_neighbors(k_, sender, *bit);
    const Round round = exec_->next_round();
    for (NodeId v = 1; v <= n; ++v)
      if (v != sender)
        receptions[v - 1] = Reception{round, sender, lone_->payload, std::binary_search(nbrs.begin(), nbrs.end(), v)};
  }
  exec_->deliver(EdgeChoice::all(), std::move(receptions));
}

}  // namespace dualgraph
