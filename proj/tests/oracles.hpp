#pragma once

// Definition-level reference implementations used only by tests. They are
// deliberately naive (linear scans over edge lists, no shared helpers with
// the library) so they can serve as independent oracles.

#include <algorithm>
#include <array>
#include <utility>
#include <optional>
#include <vector>

#include "dualgraph/model.hpp"

namespace testing_oracle {

using dualgraph::Broadcast;
using dualgraph::Edge;
using dualgraph::NodeId;
using dualgraph::Reception;

inline bool listed(const std::vector<Edge>& edges, NodeId a, NodeId b) {
  for (const Edge& e : edges) {
    if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
  }
  return false;
}

/// u receives m from v iff u is receiving, v transmits m, and v is the only
/// transmitter among u's neighbors in the round's topology.
inline std::vector<std::optional<Reception>> brute_force_round(std::size_t n, const std::vector<Edge>& reliable,
                                                               const std::vector<Edge>& unreliable,
                                                               const std::vector<Edge>& chosen,
                                                               const std::vector<Broadcast>& senders,
                                                               dualgraph::Round round) {
  (void)unreliable;
  std::vector<std::optional<Reception>> out(n);
  for (NodeId u = 1; u <= n; ++u) {
    bool u_sends = false;
    for (const auto& b : senders) u_sends = u_sends || b.sender == u;
    if (u_sends) continue;
    std::vector<const Broadcast*> heard;
    for (const auto& b : senders) {
      if (listed(reliable, u, b.sender) || listed(chosen, u, b.sender)) heard.push_back(&b);
    }
    if (heard.size() == 1) {
      out[u - 1] = Reception{round, heard[0]->sender, heard[0]->payload, listed(reliable, u, heard[0]->sender)};
    }
  }
  return out;
}

/// Both MIS clauses checked straight from the definition on an edge list.
inline bool is_mis(std::size_t n, const std::vector<Edge>& edges, const std::vector<NodeId>& s) {
  auto in = [&](NodeId x) { return std::find(s.begin(), s.end(), x) != s.end(); };
  for (NodeId u : s) {
    for (NodeId v : s) {
      if (u != v && listed(edges, u, v)) return false;
    }
  }
  for (NodeId u = 1; u <= n; ++u) {
    if (in(u)) continue;
    bool covered = false;
    for (NodeId v : s) covered = covered || listed(edges, u, v);
    if (!covered) return false;
  }
  return true;
}

/// Domination plus connectivity of the induced subgraph, by repeated closure.
inline bool is_cds(std::size_t n, const std::vector<Edge>& edges, const std::vector<NodeId>& c) {
  if (n >= 1 && c.empty()) return false;
  auto in = [&](NodeId x) { return std::find(c.begin(), c.end(), x) != c.end(); };
  for (NodeId u = 1; u <= n; ++u) {
    if (in(u)) continue;
    bool covered = false;
    for (NodeId v : c) covered = covered || listed(edges, u, v);
    if (!covered) return false;
  }
  if (c.empty()) return true;
  std::vector<NodeId> reached{c.front()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (NodeId v : c) {
      if (std::find(reached.begin(), reached.end(), v) != reached.end()) continue;
      for (NodeId r : reached) {
        if (listed(edges, r, v)) {
          reached.push_back(v);
          grew = true;
          break;
        }
      }
    }
  }
  return reached.size() == c.size();
}

/// Edges of B_{1,m} by a double loop over all ordered triples: (a,b,c) and
/// (y,a,b) are adjacent whenever y is distinct from a, b and c. Pairs are
/// returned as 0-based positions in lexicographic triple order, deduplicated.
inline std::vector<std::pair<std::size_t, std::size_t>> view_graph_edges_t1(std::size_t m) {
  std::vector<std::array<NodeId, 3>> triples;
  for (NodeId a = 1; a <= m; ++a)
    for (NodeId b = 1; b <= m; ++b)
      for (NodeId c = 1; c <= m; ++c)
        if (a != b && b != c && a != c) triples.push_back({a, b, c});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x = 0; x < triples.size(); ++x)
    for (std::size_t y = 0; y < triples.size(); ++y) {
      const auto& v1 = triples[x];
      const auto& v2 = triples[y];
      if (v2[1] == v1[0] && v2[2] == v1[1] && v2[0] != v1[2]) edges.emplace_back(std::min(x, y), std::max(x, y));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

/// Ring adjudication straight from the rules: ids[p] sits at position p
/// (0-based, clockwise); survivors are ids outside `removed`.
template <typename ColorFn>
bool ring_coloring_wins(const std::vector<NodeId>& ids, const ColorFn& color, const std::vector<NodeId>& removed) {
  const std::size_t n = ids.size();
  auto gone = [&](NodeId x) { return std::find(removed.begin(), removed.end(), x) != removed.end(); };
  auto col = [&](std::size_t p) { return color(ids[(p + n - 1) % n], ids[p], ids[(p + 1) % n]); };
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t q = (p + 1) % n;
    if (!gone(ids[p]) && !gone(ids[q]) && col(p) == col(q)) return false;
  }
  return true;
}

}  // namespace testing_oracle
