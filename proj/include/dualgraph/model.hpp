#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

using Round = std::uint32_t;
/// Opaque byte string; no size limit.
using Payload = std::string;

enum class KnowledgeMode { advance, passive };

std::string to_string(KnowledgeMode mode);
KnowledgeMode parse_knowledge_mode(const std::string& text);

struct Broadcast {
  NodeId sender = 0;
  Payload payload;

  friend bool operator==(const Broadcast&, const Broadcast&) = default;
};

struct Reception {
  Round round = 0;
  NodeId sender = 0;
  Payload payload;
  bool reliable_tag = false;

  friend bool operator==(const Reception&, const Reception&) = default;
};

/// Per-node reception slots, indexed by id - 1. Empty slot = silence or collision.
using Receptions = std::vector<std::optional<Reception>>;

/// The adversary's per-round pick from E' \ E. `all` and `none` avoid
/// materializing large edge lists on dense overlays.
class EdgeChoice {
 public:
  enum class Kind { none, all, subset };

  static EdgeChoice none() { return EdgeChoice(Kind::none, {}); }
  static EdgeChoice all() { return EdgeChoice(Kind::all, {}); }
  static EdgeChoice subset(std::vector<Edge> edges);

  Kind kind() const { return kind_; }
  const std::vector<Edge>& explicit_edges() const { return edges_; }

  /// The concrete edge set this choice denotes on `graph`.
  std::vector<Edge> materialize(const DualGraph& graph) const;
  /// Throws GraphError if a chosen edge is not in E' \ E.
  void validate(const DualGraph& graph) const;

  friend bool operator==(const EdgeChoice&, const EdgeChoice&) = default;

 private:
  EdgeChoice(Kind kind, std::vector<Edge> edges) : kind_(kind), edges_(std::move(edges)) {}

  Kind kind_ = Kind::none;
  std::vector<Edge> edges_;
};

struct RoundTranscript {
  Round round = 0;
  std::vector<double> declared;  // per node, id - 1
  std::vector<Broadcast> broadcasts;
  EdgeChoice adversary = EdgeChoice::none();
  Receptions receptions;

  std::size_t receiver_count() const;
  friend bool operator==(const RoundTranscript&, const RoundTranscript&) = default;
};

/// One round of the collision model: u hears v iff u is silent, v transmits,
/// and v is the only transmitter among u's neighbors in E plus the chosen
/// unreliable edges. No collision detection; transmitters hear nothing.
Receptions resolve_round(const DualGraph& graph, const EdgeChoice& adversary,
                         std::span<const Broadcast> broadcasters, Round round = 1);

}  // namespace dualgraph
