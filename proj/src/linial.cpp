#include "dualgraph/linial.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace dualgraph {

namespace {

void enumerate_views(std::size_t width, std::size_t m, View& prefix, std::vector<bool>& used,
                     std::vector<View>& out) {
  if (prefix.size() == width) {
    out.push_back(prefix);
    return;
  }
  for (NodeId x = 1; x <= m; ++x) {
    if (used[x]) continue;
    used[x] = true;
    prefix.push_back(x);
    enumerate_views(width, m, prefix, used, out);
    prefix.pop_back();
    used[x] = false;
  }
}

}  // namespace

ViewGraph::ViewGraph(std::size_t t, std::size_t m) : t_(t), m_(m) {
  if (t < 1) throw std::invalid_argument("view radius t must be >= 1");
  const std::size_t width = 2 * t + 1;
  if (m < width) {
    throw std::invalid_argument("m = " + std::to_string(m) + " leaves the view graph with no vertices (need m >= 2t+1)");
  }
  View prefix;
  std::vector<bool> used(m + 1, false);
  enumerate_views(width, m, prefix, used, views_);
  for (std::size_t i = 0; i < views_.size(); ++i) index_.emplace(views_[i], static_cast<NodeId>(i + 1));

  // For each v1, every shift v2 = (y, x_1..x_{2t}) with y fresh and y != x_{2t+1}.
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < views_.size(); ++i) {
    const View& v1 = views_[i];
    View v2(width);
    std::copy(v1.begin(), v1.end() - 1, v2.begin() + 1);
    for (NodeId y = 1; y <= m; ++y) {
      if (std::find(v1.begin(), v1.end(), y) != v1.end()) continue;  // also excludes y == x_{2t+1}
      v2[0] = y;
      edges.push_back(Edge::make(static_cast<NodeId>(i + 1), index_.at(v2)));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  graph_ = Graph(views_.size(), edges);
}

std::optional<NodeId> ViewGraph::index_of(const View& view) const {
  auto it = index_.find(view);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ViewGraph ViewGraph::relabeled(const std::vector<NodeId>& relabel) const {
  if (relabel.size() != m_) throw std::invalid_argument("relabeling must cover [m]");
  std::vector<bool> seen(m_ + 1, false);
  for (NodeId x : relabel) {
    if (x < 1 || x > m_ || seen[x]) throw std::invalid_argument("relabeling is not a bijection on [m]");
    seen[x] = true;
  }
  ViewGraph out;
  out.t_ = t_;
  out.m_ = m_;
  out.views_.reserve(views_.size());
  for (const View& v : views_) {
    View w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = relabel[v[i] - 1];
    out.views_.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < out.views_.size(); ++i) out.index_.emplace(out.views_[i], static_cast<NodeId>(i + 1));
  out.graph_ = graph_;
  return out;
}

ViewGraph build_view_graph(std::size_t t, std::size_t m) { return ViewGraph(t, m); }

bool is_proper_coloring(const Graph& g, const std::vector<std::uint32_t>& coloring) {
  if (coloring.size() != g.size()) return false;
  for (const Edge& e : g.edges()) {
    if (coloring[e.u - 1] == coloring[e.v - 1]) return false;
  }
  return std::none_of(coloring.begin(), coloring.end(), [](std::uint32_t c) { return c == 0; });
}

namespace {

class DsaturSearch {
 public:
  DsaturSearch(const Graph& g, std::size_t k, std::uint64_t node_limit)
      : g_(g),
        k_(k),
        limit_(node_limit),
        color_(g.size(), 0),
        seen_(g.size(), std::vector<std::uint32_t>(k + 1, 0)),
        saturation_(g.size(), 0),
        uncolored_degree_(g.size(), 0) {
    for (NodeId v = 1; v <= g.size(); ++v) uncolored_degree_[v - 1] = g.degree(v);
  }

  Colorability run() {
    const bool ok = search(0, 0);
    if (aborted_) return Colorability::budget_exhausted;
    return ok ? Colorability::colorable : Colorability::not_colorable;
  }

  const std::vector<std::uint32_t>& coloring() const { return color_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool search(std::size_t colored, std::uint32_t used) {
    if (colored == g_.size()) return true;
    if (++nodes_ > limit_) {
      aborted_ = true;
      return false;
    }
    // Most saturated uncolored vertex, ties by uncolored degree, then id.
    std::size_t best = g_.size();
    for (std::size_t i = 0; i < g_.size(); ++i) {
      if (color_[i]) continue;
      if (saturation_[i] >= k_) return false;  // no color left
      if (best == g_.size() || saturation_[i] > saturation_[best] ||
          (saturation_[i] == saturation_[best] && uncolored_degree_[i] > uncolored_degree_[best])) {
        best = i;
      }
    }
    const auto v = static_cast<NodeId>(best + 1);
    const std::uint32_t top = std::min<std::uint32_t>(static_cast<std::uint32_t>(k_), used + 1);
    for (std::uint32_t c = 1; c <= top; ++c) {
      if (seen_[best][c]) continue;
      assign(v, c);
      if (search(colored + 1, std::max(used, c))) return true;
      unassign(v, c);
      if (aborted_) return false;
    }
    return false;
  }

  void assign(NodeId v, std::uint32_t c) {
    color_[v - 1] = c;
    for (NodeId w : g_.neighbors(v)) {
      if (seen_[w - 1][c]++ == 0) ++saturation_[w - 1];
      --uncolored_degree_[w - 1];
    }
  }

  void unassign(NodeId v, std::uint32_t c) {
    color_[v - 1] = 0;
    for (NodeId w : g_.neighbors(v)) {
      if (--seen_[w - 1][c] == 0) --saturation_[w - 1];
      ++uncolored_degree_[w - 1];
    }
  }

  const Graph& g_;
  std::size_t k_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<std::uint32_t> color_;
  std::vector<std::vector<std::uint32_t>> seen_;
  std::vector<std::size_t> saturation_;
  std::vector<std::size_t> uncolored_degree_;
};

}  // namespace

std::optional<std::vector<std::uint32_t>> tabu_coloring(const Graph& g, std::size_t k, std::uint64_t max_iterations,
                                                        std::uint64_t seed) {
  const std::size_t n = g.size();
  if (n == 0) return std::vector<std::uint32_t>{};
  if (k == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick_color(1, static_cast<std::uint32_t>(k));
  std::vector<std::uint32_t> color(n);
  for (auto& c : color) c = pick_color(rng);

  // conflicts[v][c]: neighbors of v currently colored c.
  std::vector<std::vector<std::uint32_t>> conflicts(n, std::vector<std::uint32_t>(k + 1, 0));
  long long objective = 0;
  for (NodeId v = 1; v <= n; ++v) {
    for (NodeId w : g.neighbors(v)) {
      ++conflicts[v - 1][color[w - 1]];
      if (v < w && color[v - 1] == color[w - 1]) ++objective;
    }
  }
  std::vector<std::vector<std::uint64_t>> tabu_until(n, std::vector<std::uint64_t>(k + 1, 0));
  long long best_objective = objective;

  for (std::uint64_t it = 1; objective > 0 && it <= max_iterations; ++it) {
    long long best_delta = 0;
    std::size_t best_v = n;
    std::uint32_t best_c = 0;
    std::uint64_t ties = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint32_t cur = color[v];
      if (conflicts[v][cur] == 0) continue;
      for (std::uint32_t c = 1; c <= k; ++c) {
        if (c == cur) continue;
        const long long delta = static_cast<long long>(conflicts[v][c]) - static_cast<long long>(conflicts[v][cur]);
        const bool tabu = tabu_until[v][c] > it;
        if (tabu && objective + delta >= best_objective) continue;
        if (best_v == n || delta < best_delta) {
          best_delta = delta;
          best_v = v;
          best_c = c;
          ties = 1;
        } else if (delta == best_delta && rng() % ++ties == 0) {
          best_v = v;
          best_c = c;
        }
      }
    }
    if (best_v == n) continue;
    const std::uint32_t old = color[best_v];
    color[best_v] = best_c;
    for (NodeId w : g.neighbors(static_cast<NodeId>(best_v + 1))) {
      --conflicts[w - 1][old];
      ++conflicts[w - 1][best_c];
    }
    objective += best_delta;
    best_objective = std::min(best_objective, objective);
    tabu_until[best_v][old] = it + static_cast<std::uint64_t>(0.6 * static_cast<double>(objective)) + rng() % 10 + 1;
  }
  if (objective != 0) return std::nullopt;
  return color;
}

Colorability k_colorable(const Graph& g, std::size_t k, std::uint64_t node_limit,
                         std::vector<std::uint32_t>& coloring, std::uint64_t& nodes) {
  if (g.size() == 0) {
    coloring.clear();
    return Colorability::colorable;
  }
  if (k == 0) return Colorability::not_colorable;
  DsaturSearch search(g, k, node_limit);
  const auto verdict = search.run();
  nodes += search.nodes();
  if (verdict == Colorability::colorable) coloring = search.coloring();
  return verdict;
}

ChromaticResult chromatic_number_exact(const Graph& g, const ColoringBudget& budget) {
  if (g.size() > budget.max_vertices) {
    throw std::length_error("chromatic_number_exact: " + std::to_string(g.size()) +
                            " vertices exceeds the feasibility bound of " + std::to_string(budget.max_vertices));
  }
  ChromaticResult result;
  if (g.size() == 0) return result;

  // Increasing k: the first colorable k is chi, and k - 1 was refuted by the
  // preceding exhaustive search.
  for (std::size_t k = 1; k <= budget.max_colors; ++k) {
    // Cheap bounded pass first: settles small or easily refuted cases.
    {
      std::vector<std::uint32_t> coloring;
      const auto quick = k_colorable(g, k, std::min<std::uint64_t>(budget.node_limit, 100'000), coloring,
                                     result.search_nodes);
      if (quick == Colorability::colorable) {
        result.chromatic_number = k;
        result.coloring = std::move(coloring);
        return result;
      }
      if (quick == Colorability::not_colorable) {
        result.refuted_below = k;
        continue;
      }
    }
    if (budget.local_search_iterations > 0) {
      if (auto found = tabu_coloring(g, k, budget.local_search_iterations, budget.seed + k)) {
        result.chromatic_number = k;
        result.coloring = std::move(*found);
        result.status = ChromaticResult::Status::exact;
        return result;
      }
    }
    std::vector<std::uint32_t> coloring;
    const auto verdict = k_colorable(g, k, budget.node_limit, coloring, result.search_nodes);
    if (verdict == Colorability::colorable) {
      result.chromatic_number = k;
      result.coloring = std::move(coloring);
      result.status = ChromaticResult::Status::exact;
      return result;
    }
    if (verdict == Colorability::budget_exhausted) {
      result.status = ChromaticResult::Status::exceeds_limit;
      result.chromatic_number = k;  // k - 1 refuted, k undecided
      return result;
    }
    result.refuted_below = k;
  }
  result.status = ChromaticResult::Status::exceeds_limit;
  result.chromatic_number = budget.max_colors + 1;
  return result;
}

std::optional<std::pair<View, View>> find_monochromatic_edge(const ViewGraph& views, const TripleColorFn& color) {
  if (views.t() != 1) throw std::invalid_argument("find_monochromatic_edge is defined for t = 1");
  std::vector<std::uint32_t> colors;
  colors.reserve(views.vertex_count());
  for (const View& v : views.views()) {
    const std::uint32_t c = color(v[0], v[1], v[2]);
    if (c < 1 || c > 3) throw std::invalid_argument("triple coloring must take values in {1,2,3}");
    colors.push_back(c);
  }
  for (const Edge& e : views.graph().edges()) {
    if (colors[e.u - 1] == colors[e.v - 1]) return std::make_pair(views.views()[e.u - 1], views.views()[e.v - 1]);
  }
  return std::nullopt;
}

}  // namespace dualgraph
