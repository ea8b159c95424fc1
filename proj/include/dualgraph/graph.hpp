#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualgraph {

/// Node ids are the integers 1..n.
using NodeId = std::uint32_t;
using IdSet = std::vector<NodeId>;  // sorted, unique

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  /// Unordered pair, stored with u < v.
  static Edge make(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

IdSet normalize_ids(std::vector<NodeId> ids);

/// Simple undirected graph over ids 1..n with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return adjacency_.size(); }
  std::span<const NodeId> neighbors(NodeId id) const { return adjacency_.at(id - 1); }
  std::size_t degree(NodeId id) const { return adjacency_.at(id - 1).size(); }
  bool has_edge(NodeId a, NodeId b) const;
  bool contains(NodeId id) const { return id >= 1 && id <= adjacency_.size(); }
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  static Graph complete(std::size_t n);
  static Graph ring(std::span<const NodeId> clockwise_ids);
  static Graph path(std::span<const NodeId> ids);

 private:
  std::vector<std::vector<NodeId>> adjacency_;
};

bool is_connected(const Graph& g);

/// A dual graph (G, G'): reliable edges E, plus the extra edges E' \ E the
/// adversary may switch on per round.
class DualGraph {
 public:
  DualGraph() = default;
  DualGraph(std::size_t n, std::vector<Edge> reliable, std::vector<Edge> unreliable,
            std::optional<std::vector<Point>> embedding = std::nullopt,
            std::optional<double> gamma = std::nullopt);

  /// G = G'.
  static DualGraph classical(const Graph& reliable);
  /// G' is the complete graph over all nodes.
  static DualGraph complete_overlay(const Graph& reliable);

  std::size_t size() const { return reliable_.size(); }
  const Graph& reliable() const { return reliable_; }
  const Graph& unreliable() const { return unreliable_; }
  std::vector<Edge> reliable_edges() const { return reliable_.edges(); }
  std::vector<Edge> unreliable_edges() const { return unreliable_.edges(); }
  bool is_reliable(NodeId a, NodeId b) const { return reliable_.has_edge(a, b); }
  bool is_unreliable(NodeId a, NodeId b) const { return unreliable_.has_edge(a, b); }
  bool contains(NodeId id) const { return reliable_.contains(id); }

  const std::optional<std::vector<Point>>& embedding() const { return embedding_; }
  const std::optional<double>& gamma() const { return gamma_; }

 private:
  Graph reliable_;
  Graph unreliable_;
  std::optional<std::vector<Point>> embedding_;
  std::optional<double> gamma_;
};

}  // namespace dualgraph
