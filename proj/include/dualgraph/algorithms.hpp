#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dualgraph/engine.hpp"

namespace dualgraph {

// Payload tags used by the baseline processes.
inline constexpr char kJoinTag = 'J';
inline constexpr char kCoveredTag = 'C';
inline constexpr char kHelloTag = 'H';

struct DecayParams {
  /// Rounds per decay phase; 0 picks max(1, ceil(log2 n)).
  std::size_t phase_length = 0;
  /// Join probability for nodes that have not decided.
  double prior = 0.5;
};

std::size_t decay_phase_length(const DecayParams& params, std::size_t n);

/// Greedy-by-id MIS with decaying broadcast probabilities. Nodes that joined
/// announce "J", covered nodes announce "C"; within a phase slot j a node
/// transmits with probability 2^-j. A node joins once its id is below every
/// known reliable neighbor that it has not heard as covered. Under passive
/// knowledge undecided nodes also send "H" so neighbors can discover them.
class DecayMis : public Algorithm {
 public:
  explicit DecayMis(DecayParams params = {}) : params_(params) {}

  std::string name() const override { return "decay-mis"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override;
  double out(const OutInput& input) const override;

  const DecayParams& params() const { return params_; }

 protected:
  virtual Payload covered_payload(const OutInput& input) const;

  DecayParams params_;
};

/// Decay MIS plus connectors: covered nodes announce their dominator
/// ("C:<id>") and join when they hear two dominators or a neighbor dominated
/// by someone they are not adjacent to.
class DecayCds final : public DecayMis {
 public:
  explicit DecayCds(DecayParams params = {}) : DecayMis(params) {}

  std::string name() const override { return "decay-cds"; }
  double out(const OutInput& input) const override;

 protected:
  Payload covered_payload(const OutInput& input) const override;
};

/// Node j transmits everything it knows about G in every round r with
/// ((r - 1) mod n) + 1 == j. A node that has learned all n adjacency lists
/// outputs the canonical ascending-id greedy MIS of G; otherwise it joins
/// iff its id is below all of its reliable neighbors. Advance knowledge only.
class RoundRobin final : public Algorithm {
 public:
  explicit RoundRobin(std::size_t n) : n_(n) {}

  std::string name() const override { return "round-robin"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override;
  double out(const OutInput& input) const override;

  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
};

class ConstantP final : public Algorithm {
 public:
  ConstantP(double join_probability, double broadcast_probability = 0.0);

  std::string name() const override { return "constant-p"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override;
  double out(const OutInput&) const override { return join_; }

 private:
  double join_;
  double broadcast_;
};

/// Silent algorithm whose output is a fixed id set (ground-truth injection).
class FixedOutput final : public Algorithm {
 public:
  explicit FixedOutput(IdSet members) : members_(std::move(members)) {}

  std::string name() const override { return "fixed-output"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override;
  double out(const OutInput& input) const override;

 private:
  IdSet members_;
};

using AlgorithmParams = std::map<std::string, double>;

/// Names: decay-mis, decay-cds, round-robin, constant-p.
std::unique_ptr<Algorithm> make_algorithm(const std::string& name, const AlgorithmParams& params,
                                          std::size_t n);
std::vector<std::string> algorithm_names();

// Centralized ground-truth oracles.

/// Greedy MIS scanning ids in ascending order.
IdSet greedy_mis(const Graph& g);
IdSet greedy_mis(const Graph& g, const std::vector<NodeId>& order);

inline constexpr std::size_t kMisEnumerationLimit = 12;
/// All maximal independent sets (n <= kMisEnumerationLimit), in ascending
/// bitmask order.
std::vector<IdSet> enumerate_mis(const Graph& g);

/// Greedy MIS joined into a CDS by shortest connecting paths. Connected G only.
IdSet cds_from_mis(const Graph& g);

}  // namespace dualgraph
