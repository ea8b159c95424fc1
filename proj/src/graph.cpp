#include "dualgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace dualgraph {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

IdSet normalize_ids(std::vector<NodeId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Graph::Graph(std::size_t n) : adjacency_(n) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  for (const Edge& raw : edges) {
    const Edge e = Edge::make(raw.u, raw.v);
    if (e.u == e.v) {
      throw GraphError("self-loop on node " + std::to_string(e.u));
    }
    if (e.u < 1 || e.v > n) {
      throw GraphError("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} has an endpoint outside [1," + std::to_string(n) + "]");
    }
    adjacency_[e.u - 1].push_back(e.v);
    adjacency_[e.v - 1].push_back(e.u);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = adjacency_[i];
    std::sort(list.begin(), list.end());
    auto dup = std::adjacent_find(list.begin(), list.end());
    if (dup != list.end()) {
      throw GraphError("duplicate edge {" + std::to_string(i + 1) + "," + std::to_string(*dup) +
                       "}");
    }
  }
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b)) return false;
  const auto& list = adjacency_[a - 1];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    const auto u = static_cast<NodeId>(i + 1);
    for (NodeId v : adjacency_[i]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adjacency_) total += list.size();
  return total / 2;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = g.adjacency_[i];
    list.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) list.push_back(static_cast<NodeId>(j + 1));
    }
  }
  return g;
}

Graph Graph::ring(std::span<const NodeId> clockwise_ids) {
  const std::size_t n = clockwise_ids.size();
  std::vector<Edge> edges;
  if (n == 2) {
    edges.push_back(Edge::make(clockwise_ids[0], clockwise_ids[1]));
  } else if (n > 2) {
    for (std::size_t i = 0; i < n; ++i) {
      edges.push_back(Edge::make(clockwise_ids[i], clockwise_ids[(i + 1) % n]));
    }
  }
  return Graph(n, edges);
}

Graph Graph::path(std::span<const NodeId> ids) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) edges.push_back(Edge::make(ids[i], ids[i + 1]));
  return Graph(ids.size(), edges);
}

bool is_connected(const Graph& g) {
  const std::size_t n = g.size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::queue<NodeId> frontier;
  frontier.push(1);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v - 1]) {
        seen[v - 1] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

DualGraph::DualGraph(std::size_t n, std::vector<Edge> reliable, std::vector<Edge> unreliable,
                     std::optional<std::vector<Point>> embedding, std::optional<double> gamma)
    : reliable_(n, reliable),
      unreliable_(n, unreliable),
      embedding_(std::move(embedding)),
      gamma_(gamma) {
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = static_cast<NodeId>(i + 1);
    for (NodeId v : unreliable_.neighbors(u)) {
      if (u < v && reliable_.has_edge(u, v)) {
        throw GraphError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                         "} appears in both the reliable and unreliable sets");
      }
    }
  }
  if (embedding_ && embedding_->size() != n) {
    throw GraphError("embedding has " + std::to_string(embedding_->size()) +
                     " points for " + std::to_string(n) + " nodes");
  }
  if (gamma_ && !(*gamma_ >= 1.0)) {
    throw GraphError("gamma must be >= 1");
  }
}

DualGraph DualGraph::classical(const Graph& reliable) {
  return DualGraph(reliable.size(), reliable.edges(), {});
}

DualGraph DualGraph::complete_overlay(const Graph& reliable) {
  const std::size_t n = reliable.size();
  std::vector<Edge> extra;
  extra.reserve(n * (n - 1) / 2 - reliable.edge_count());
  for (NodeId u = 1; u <= n; ++u) {
    for (NodeId v = u + 1; v <= n; ++v) {
      if (!reliable.has_edge(u, v)) extra.push_back({u, v});
    }
  }
  return DualGraph(n, reliable.edges(), std::move(extra));
}

}  // namespace dualgraph
