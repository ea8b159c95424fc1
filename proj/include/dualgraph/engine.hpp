#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualgraph/adversary.hpp"
#include "dualgraph/model.hpp"

namespace dualgraph {

/// What a process knows about itself at start-up. `neighbors` is set only
/// under advance neighborhood knowledge.
struct NodeContext {
  NodeId id = 0;
  std::size_t n = 0;
  KnowledgeMode mode = KnowledgeMode::advance;
  std::optional<IdSet> neighbors;
};

struct BroadcastIntent {
  double probability = 0.0;
  Payload payload;
};

/// Per-node behavior. Each round the engine first collects `declare`, then
/// flips the broadcast coin itself, then calls `deliver`.
class NodeProcess {
 public:
  virtual ~NodeProcess() = default;
  virtual BroadcastIntent declare(Round round) = 0;
  virtual void deliver(Round round, bool transmitted, const std::optional<Reception>& reception) = 0;
  virtual std::span<const Reception> history() const = 0;
};

/// The terminal decision map: (id, advance neighbors, message history) -> p.
struct OutInput {
  NodeId id = 0;
  std::size_t n = 0;
  const IdSet* neighbors = nullptr;  // null under passive knowledge
  std::span<const Reception> history;
};

class Algorithm {
 public:
  virtual ~Algorithm() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const = 0;
  /// Must be a pure function of its input and return a value in [0, 1].
  virtual double out(const OutInput& input) const = 0;
};

/// Convenience process: keeps the reception history and delegates the
/// broadcast decision to a pure function of (context, round, history).
class HistoryProcess : public NodeProcess {
 public:
  using Intent = std::function<BroadcastIntent(const NodeContext&, Round, std::span<const Reception>)>;

  HistoryProcess(NodeContext context, Intent intent)
      : context_(std::move(context)), intent_(std::move(intent)) {}

  BroadcastIntent declare(Round round) override { return intent_(context_, round, history_); }
  void deliver(Round, bool, const std::optional<Reception>& reception) override {
    if (reception) history_.push_back(*reception);
  }
  std::span<const Reception> history() const override { return history_; }
  const NodeContext& context() const { return context_; }

 private:
  NodeContext context_;
  Intent intent_;
  std::vector<Reception> history_;
};

double checked_out(const Algorithm& algorithm, const OutInput& input);

/// Step-wise execution of one algorithm over n processes. The reception
/// resolution is left to the caller, so both the real engine and the
/// reduction players (which simulate receptions without knowing G) drive
/// the same coins.
class Execution {
 public:
  /// `neighbor_lists` (indexed id - 1) is required under advance knowledge.
  Execution(std::size_t n, const Algorithm& algorithm, KnowledgeMode mode,
            const std::vector<IdSet>* neighbor_lists, std::uint64_t seed);

  std::size_t size() const { return processes_.size(); }
  Round next_round() const { return round_ + 1; }
  Round coins_drawn_through() const { return coins_drawn_; }

  /// Phase 1: collect declared broadcast probabilities for the next round.
  std::span<const double> declare();
  /// Phase 2: flip the per-node broadcast coins for the declared round.
  const std::vector<Broadcast>& flip();
  /// Phase 3: hand each node its reception and record the round.
  const RoundTranscript& deliver(EdgeChoice adversary, Receptions receptions);

  const std::vector<RoundTranscript>& transcript() const { return transcript_; }
  std::span<const Reception> history(NodeId id) const { return processes_.at(id - 1)->history(); }
  const std::optional<IdSet>& neighbors(NodeId id) const { return contexts_.at(id - 1).neighbors; }

  /// Evaluate the out function for every node.
  std::vector<double> out_probabilities() const;
  /// Output bits using the engine's seeded per-node out coins.
  std::vector<std::uint8_t> outputs() const;
  /// Output bits using a caller-supplied resolver (id, p) -> bit.
  std::vector<std::uint8_t> outputs(const std::function<bool(NodeId, double)>& resolver) const;

  std::uint64_t seed() const { return seed_; }

 private:
  enum class Phase { idle, declared, flipped };

  const Algorithm& algorithm_;
  KnowledgeMode mode_;
  std::uint64_t seed_;
  std::vector<NodeContext> contexts_;
  std::vector<std::unique_ptr<NodeProcess>> processes_;
  std::vector<BroadcastIntent> intents_;
  std::vector<double> declared_;
  std::vector<Broadcast> broadcasts_;
  std::vector<RoundTranscript> transcript_;
  Round round_ = 0;
  Round coins_drawn_ = 0;
  Phase phase_ = Phase::idle;
};

std::uint64_t broadcast_coin_bits(std::uint64_t seed, NodeId id, Round round);
std::uint64_t out_coin_bits(std::uint64_t seed, NodeId id);

struct ExecutionResult {
  std::vector<RoundTranscript> transcript;
  std::vector<double> out_probabilities;
  std::vector<std::uint8_t> outputs;  // 1 = join, indexed id - 1

  IdSet joined() const;
};

std::vector<IdSet> neighbor_lists(const Graph& g);

/// Plays one round of `exec` on `graph`: declare, consult the adversary
/// (before the coins unless it is offline adaptive), flip, resolve, deliver.
const RoundTranscript& step_execution(Execution& exec, const DualGraph& graph, const Adversary& adversary);

/// Runs `rounds` rounds on `graph` and then evaluates every node's out
/// function. Identical arguments reproduce an identical result.
ExecutionResult run_execution(const DualGraph& graph, const Adversary& adversary,
                              const Algorithm& algorithm, KnowledgeMode mode, Round rounds,
                              std::uint64_t seed);

}  // namespace dualgraph
