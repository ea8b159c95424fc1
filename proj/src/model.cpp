#include "dualgraph/model.hpp"

#include <algorithm>

namespace dualgraph {

std::string to_string(KnowledgeMode mode) {
  return mode == KnowledgeMode::advance ? "advance" : "passive";
}

KnowledgeMode parse_knowledge_mode(const std::string& text) {
  if (text == "advance") return KnowledgeMode::advance;
  if (text == "passive") return KnowledgeMode::passive;
  throw std::invalid_argument("unknown knowledge mode '" + text + "'");
}

EdgeChoice EdgeChoice::subset(std::vector<Edge> edges) {
  for (auto& e : edges) e = Edge::make(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return EdgeChoice(Kind::subset, std::move(edges));
}

std::vector<Edge> EdgeChoice::materialize(const DualGraph& graph) const {
  switch (kind_) {
    case Kind::none:
      return {};
    case Kind::all:
      return graph.unreliable_edges();
    case Kind::subset:
      return edges_;
  }
  return {};
}

void EdgeChoice::validate(const DualGraph& graph) const {
  if (kind_ != Kind::subset) return;
  for (const Edge& e : edges_) {
    if (!graph.is_unreliable(e.u, e.v)) {
      throw GraphError("adversary edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} is not in E' \\ E");
    }
  }
}

std::size_t RoundTranscript::receiver_count() const {
  return static_cast<std::size_t>(
      std::count_if(receptions.begin(), receptions.end(), [](const auto& r) { return r.has_value(); }));
}

Receptions resolve_round(const DualGraph& graph, const EdgeChoice& adversary,
                         std::span<const Broadcast> broadcasters, Round round) {
  const std::size_t n = graph.size();
  adversary.validate(graph);

  std::vector<std::uint32_t> transmitting(n, 0);
  std::vector<const Broadcast*> by_node(n, nullptr);
  for (const Broadcast& b : broadcasters) {
    if (!graph.contains(b.sender)) {
      throw GraphError("broadcaster id " + std::to_string(b.sender) + " is not in the graph");
    }
    if (by_node[b.sender - 1] != nullptr) {
      throw GraphError("node " + std::to_string(b.sender) + " broadcasts twice in one round");
    }
    by_node[b.sender - 1] = &b;
    transmitting[b.sender - 1] = 1;
  }

  // hits[u] counts transmitting topology neighbors; last[u] remembers one.
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<NodeId> last(n, 0);
  auto hit = [&](NodeId receiver, NodeId sender) {
    ++hits[receiver - 1];
    last[receiver - 1] = sender;
  };

  for (const Broadcast& b : broadcasters) {
    for (NodeId v : graph.reliable().neighbors(b.sender)) hit(v, b.sender);
    if (adversary.kind() == EdgeChoice::Kind::all) {
      for (NodeId v : graph.unreliable().neighbors(b.sender)) hit(v, b.sender);
    }
  }
  if (adversary.kind() == EdgeChoice::Kind::subset) {
    for (const Edge& e : adversary.explicit_edges()) {
      if (transmitting[e.u - 1]) hit(e.v, e.u);
      if (transmitting[e.v - 1]) hit(e.u, e.v);
    }
  }

  Receptions out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (transmitting[i] || hits[i] != 1) continue;
    const auto receiver = static_cast<NodeId>(i + 1);
    const NodeId sender = last[i];
    out[i] = Reception{round, sender, by_node[sender - 1]->payload,
                       graph.is_reliable(receiver, sender)};
  }
  return out;
}

}  // namespace dualgraph
