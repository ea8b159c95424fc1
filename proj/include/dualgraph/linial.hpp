#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

/// A view (x_1, ..., x_{2t+1}) of distinct ids from [m], read
/// counterclockwise neighbor first.
using View = std::vector<NodeId>;

/// The neighborhood view graph on all (2t+1)-tuples of distinct ids from
/// [m]. Tuples v1 = (x_1..x_{2t+1}) and v2 = (y, x_1..x_{2t}) are adjacent
/// when y != x_{2t+1}; the relation is symmetrized.
class ViewGraph {
 public:
  ViewGraph(std::size_t t, std::size_t m);

  std::size_t t() const { return t_; }
  std::size_t m() const { return m_; }
  std::size_t vertex_count() const { return views_.size(); }
  const std::vector<View>& views() const { return views_; }
  /// Vertex ids in `graph()` are 1-based positions into `views()`.
  const Graph& graph() const { return graph_; }
  std::optional<NodeId> index_of(const View& view) const;

  /// Same graph with every label x replaced by relabel[x - 1].
  ViewGraph relabeled(const std::vector<NodeId>& relabel) const;

 private:
  ViewGraph() = default;

  std::size_t t_ = 0;
  std::size_t m_ = 0;
  std::vector<View> views_;
  std::map<View, NodeId> index_;
  Graph graph_;
};

/// m <= 2t gives no vertices and is refused; m = 2t + 1 is accepted and
/// yields an edgeless graph.
ViewGraph build_view_graph(std::size_t t, std::size_t m);

struct ColoringBudget {
  std::size_t max_colors = 64;
  std::uint64_t node_limit = 50'000'000;  // search nodes per k-colorability decision
  std::size_t max_vertices = 10'000;
  /// Tabu-search moves tried per k before the exhaustive search; a coloring
  /// it finds is already a certificate.
  std::uint64_t local_search_iterations = 200'000;
  std::uint64_t seed = 1;
};

struct ChromaticResult {
  enum class Status { exact, exceeds_limit };
  Status status = Status::exact;
  std::size_t chromatic_number = 0;  // exact value, or the proven lower bound
  std::vector<std::uint32_t> coloring;  // colors 1..chi, indexed id - 1
  std::size_t refuted_below = 0;        // k = chi - 1 shown infeasible
  std::uint64_t search_nodes = 0;
};

enum class Colorability { colorable, not_colorable, budget_exhausted };

/// Exact k-colorability by DSATUR-ordered backtracking with symmetry
/// breaking on fresh colors. On success `coloring` holds colors 1..k.
Colorability k_colorable(const Graph& g, std::size_t k, std::uint64_t node_limit,
                         std::vector<std::uint32_t>& coloring, std::uint64_t& nodes);

/// Seeded tabu search for a proper k-coloring (colors 1..k).
std::optional<std::vector<std::uint32_t>> tabu_coloring(const Graph& g, std::size_t k, std::uint64_t max_iterations,
                                                        std::uint64_t seed);

/// Exact chromatic number, certified by a proper coloring with chi colors
/// and an exhausted search at chi - 1.
ChromaticResult chromatic_number_exact(const Graph& g, const ColoringBudget& budget = {});

bool is_proper_coloring(const Graph& g, const std::vector<std::uint32_t>& coloring);

/// A map from ordered distinct triples to colors {1, 2, 3}.
using TripleColorFn = std::function<std::uint32_t(NodeId, NodeId, NodeId)>;

/// Some adjacent pair of views with equal colors, or nullopt iff the
/// coloring is proper on the view graph. t = 1 only.
std::optional<std::pair<View, View>> find_monochromatic_edge(const ViewGraph& views, const TripleColorFn& color);

}  // namespace dualgraph
