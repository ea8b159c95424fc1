#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualgraph/adversary.hpp"
#include "dualgraph/engine.hpp"
#include "dualgraph/games.hpp"

namespace dualgraph {

/// Lazily generated random strings kappa_{i,j,k}, one per ordered triple.
/// A string is 64 bits: exactly the resolution of one coin decision.
class KappaStore {
 public:
  explicit KappaStore(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(NodeId i, NodeId j, NodeId k) const { return derive_seed(seed_, StreamTag::kappa, {i, j, k}); }
  bool decide(NodeId i, NodeId j, NodeId k, double p) const { return resolve_coin(bits(i, j, k), p); }
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// ---- MIS -> ring 3-coloring ----

/// The clockwise orientation of a ring graph starting at id 1 towards its
/// smaller neighbor; nullopt if `g` is not a single cycle on n >= 3 nodes.
std::optional<RingAssignment> ring_orientation(const Graph& g);

enum class ExceptionAccounting { mis_phase, full };
std::string to_string(ExceptionAccounting accounting);
ExceptionAccounting parse_exception_accounting(const std::string& text);

struct RingColoringRun {
  std::vector<std::uint8_t> joined;  // by id - 1
  std::vector<Color> colors;         // by id - 1
  std::vector<RoundTranscript> mis_phase;
  std::vector<RoundTranscript> announce_phase;
  IdSet heard_mis_phase;  // ids with >= 1 reception before the decisions
  IdSet heard_any;        // ... including the announcement slots
};

/// Resolves a node's join decision from its oriented triple.
using TripleResolver = std::function<bool(NodeId ccw, NodeId self, NodeId cw, double p)>;

/// Turns an MIS algorithm on an oriented ring into a 3-coloring one: MIS
/// nodes take color 1, then every MIS node announces in its own id slot
/// (n extra rounds); a non-MIS node that hears its clockwise neighbor
/// announce takes color 2, every other non-MIS node color 3.
class MisToColoring {
 public:
  explicit MisToColoring(const Algorithm& mis) : mis_(mis) {}

  static Color color(bool joined, NodeId clockwise_id, std::span<const Reception> announcements);

  /// Refuses (std::invalid_argument) if the reliable graph is not the ring
  /// given by `orientation`.
  RingColoringRun run(const DualGraph& graph, const RingAssignment& orientation, const Adversary& adversary,
                      Round mis_rounds, std::uint64_t seed, const TripleResolver& resolver = {}) const;
  /// Same, orienting the ring with ring_orientation.
  RingColoringRun run(const DualGraph& graph, const Adversary& adversary, Round mis_rounds,
                      std::uint64_t seed) const;

 private:
  const Algorithm& mis_;
};

/// Player for selective ring coloring built from an MIS algorithm: commits
/// C(i,j,k) = the transformed algorithm's empty-history color for id j with
/// neighbors i, k (join coin from kappa_{i,j,k}); after seeing the assignment
/// it simulates the algorithm on the labeled ring with a complete overlay
/// under the threshold adversary and submits every id that received a message.
class MisColoringPlayer final : public RingColoringPlayer {
 public:
  MisColoringPlayer(const Algorithm& mis, Round rounds, double c, std::uint64_t seed,
                    ExceptionAccounting accounting = ExceptionAccounting::mis_phase);

  std::string name() const override { return "mis-coloring:" + mis_.name(); }
  TripleColoring commit(std::size_t n) override;
  IdSet exceptions(const RingAssignment& assignment) override;

  const std::optional<RingColoringRun>& last_run() const { return last_run_; }
  const KappaStore& kappa() const { return kappa_; }

 private:
  const Algorithm& mis_;
  Round rounds_;
  double c_;
  std::uint64_t seed_;
  ExceptionAccounting accounting_;
  KappaStore kappa_;
  std::optional<RingColoringRun> last_run_;
};

// ---- hard CDS network ----

struct PointSet {
  NodeId core = 0;
  IdSet members;  // the point set: the part minus its core
  int case_tag = 1;
  NodeId connector = 0;
  std::optional<NodeId> extender;  // case 2 only
  std::vector<double> join_probabilities;  // aligned with members
};

struct HardNetworkLayout {
  DualGraph graph;
  std::size_t k = 0;
  IdSet cores;
  std::vector<PointSet> parts;

  /// Part index (0-based) owning an id.
  std::size_t part_of(NodeId id) const;
};

/// k = floor(sqrt(n)); ids split into k consecutive parts (the remainder
/// joins the last one). Requires n >= 9 so that case-2 parts are well formed.
HardNetworkLayout build_cds_hard_network(const Algorithm& cds, std::size_t n);

/// Human-readable list of broken layout invariants (empty when sound). With
/// `cds`, case-2 connectors are re-evaluated against the algorithm.
std::vector<std::string> layout_violations(const HardNetworkLayout& layout, const Algorithm* cds = nullptr);

// ---- barbell / k-isolation ----

/// Partner across the bridge: i + k/2 for i <= k/2, i - k/2 up to 2(k/2),
/// and for odd k the extra id k pairs with k/2.
NodeId barbell_partner(std::size_t k, NodeId i);

/// Cliques {1..k/2} and {k/2+1..k} joined by the edge {t, partner(t)};
/// complete overlay.
DualGraph barbell_graph(std::size_t k, NodeId target);

/// Isolation player that simulates a CDS algorithm on the hidden barbell
/// under the all-edges static adversary in passive mode.
class BarbellIsolationPlayer final : public IsolationPlayer {
 public:
  BarbellIsolationPlayer(const Algorithm& cds, Round rounds, std::uint64_t seed);

  std::string name() const override { return "barbell:" + cds_.name(); }
  void start(std::size_t k) override;
  std::optional<NodeId> next_guess() override;
  void rejected(NodeId guess) override;

  /// Rounds fully simulated so far.
  const std::vector<RoundTranscript>& simulated() const;
  /// Output bits once all rounds were simulated.
  const std::optional<std::vector<std::uint8_t>>& outputs() const { return outputs_; }
  std::size_t guesses_issued() const { return issued_; }

 private:
  void finish_lone_round();

  const Algorithm& cds_;
  Round rounds_;
  std::uint64_t seed_;
  std::size_t k_ = 0;
  std::unique_ptr<Execution> exec_;
  std::vector<NodeId> pending_;
  std::optional<Broadcast> lone_;  // sole transmitter of the round awaiting answers
  std::vector<bool> rejected_;
  std::optional<std::vector<std::uint8_t>> outputs_;
  std::size_t issued_ = 0;
};

// ---- G_kappa / k-bit revealing ----

inline constexpr std::size_t kGKappaSetSize = 5;

/// Anchors 1..k on a line; set i = ids k+5(i-1)+1 .. k+5i is a line
/// (kappa[i] = 0) or a clique (kappa[i] = 1) whose first node attaches to
/// anchor i. Complete overlay; n = 6k.
DualGraph build_g_kappa(const Bits& kappa);

/// 1-based kappa index governing id `id` (its anchor index or set index).
std::size_t g_kappa_index(std::size_t k, NodeId id);

/// Reliable neighbors of `id` in G_kappa given only the bit of its own index.
IdSet g_kappa_neighbors(std::size_t k, NodeId id, std::uint8_t bit);

/// kappa_hat[i] = 1 iff at most one node of set i output 1.
Bits decode_g_kappa(std::size_t k, const std::vector<std::uint8_t>& outputs);

/// Bit-revealing player simulating an MIS algorithm on the hidden G_kappa:
/// one referee request per simulated round.
class GKappaBitRevealPlayer final : public BitRevealPlayer {
 public:
  GKappaBitRevealPlayer(const Algorithm& mis, Round rounds, std::uint64_t seed);

  std::string name() const override { return "g-kappa:" + mis_.name(); }
  void start(std::size_t k) override;
  BitMove next_move() override;
  void revealed(NodeId index, std::optional<std::uint8_t> bit) override;

  const std::vector<RoundTranscript>& simulated() const;
  const std::optional<std::vector<std::uint8_t>>& outputs() const { return outputs_; }

 private:
  const Algorithm& mis_;
  Round rounds_;
  std::uint64_t seed_;
  std::size_t k_ = 0;
  std::unique_ptr<Execution> exec_;
  std::optional<Broadcast> lone_;
  bool awaiting_ = false;
  std::optional<std::vector<std::uint8_t>> outputs_;
};

}  // namespace dualgraph
