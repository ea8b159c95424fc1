#include "dualgraph/structures.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <stdexcept>

namespace dualgraph {

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::independence: return "independence";
    case Violation::Kind::uncovered: return "uncovered";
    case Violation::Kind::disconnected: return "disconnected";
    case Violation::Kind::empty: return "empty";
    case Violation::Kind::out_of_range: return "out_of_range";
  }
  return "unknown";
}

namespace {

// Splits `members` into in-range membership flags, logging out-of-range ids.
std::vector<bool> membership(const Graph& g, const IdSet& members, StructureReport& report) {
  std::vector<bool> in(g.size(), false);
  for (NodeId id : members) {
    if (!g.contains(id)) {
      report.violations.push_back({Violation::Kind::out_of_range, id, 0});
      continue;
    }
    in[id - 1] = true;
  }
  return in;
}

void check_domination(const Graph& g, const std::vector<bool>& in, StructureReport& report) {
  for (NodeId u = 1; u <= g.size(); ++u) {
    if (in[u - 1]) continue;
    const auto nbrs = g.neighbors(u);
    const bool covered = std::any_of(nbrs.begin(), nbrs.end(), [&](NodeId v) { return in[v - 1]; });
    if (!covered) report.violations.push_back({Violation::Kind::uncovered, u, 0});
  }
}

void finish(StructureReport& report, const IdSet& members) {
  report.size = members.size();
  report.valid = report.violations.empty();
}

}  // namespace

StructureReport verify_mis(const Graph& g, const IdSet& members) {
  StructureReport report;
  const auto in = membership(g, members, report);
  for (NodeId u = 1; u <= g.size(); ++u) {
    if (!in[u - 1]) continue;
    for (NodeId v : g.neighbors(u)) {
      if (u < v && in[v - 1]) report.violations.push_back({Violation::Kind::independence, u, v});
    }
  }
  check_domination(g, in, report);
  finish(report, members);
  return report;
}

StructureReport verify_cds(const Graph& g, const IdSet& members) {
  StructureReport report;
  const auto in = membership(g, members, report);
  const bool any = std::find(in.begin(), in.end(), true) != in.end();
  if (g.size() >= 1 && !any) report.violations.push_back({Violation::Kind::empty, 0, 0});
  check_domination(g, in, report);

  // Components of G[C]; one witness pair per component beyond the first.
  std::vector<int> component(g.size(), -1);
  int components = 0;
  NodeId first_root = 0;
  for (NodeId root = 1; root <= g.size(); ++root) {
    if (!in[root - 1] || component[root - 1] >= 0) continue;
    if (components == 0) {
      first_root = root;
    } else {
      report.violations.push_back({Violation::Kind::disconnected, first_root, root});
    }
    std::queue<NodeId> frontier;
    frontier.push(root);
    component[root - 1] = components;
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      for (NodeId v : g.neighbors(u)) {
        if (in[v - 1] && component[v - 1] < 0) {
          component[v - 1] = components;
          frontier.push(v);
        }
      }
    }
    ++components;
  }
  finish(report, members);
  return report;
}

namespace {

using Mask = std::uint32_t;

bool mask_is_cds(const std::vector<Mask>& closed, const std::vector<Mask>& open, Mask full, Mask c) {
  Mask dominated = 0;
  for (Mask rest = c; rest; rest &= rest - 1) dominated |= closed[std::countr_zero(rest)];
  if (dominated != full) return false;
  Mask reached = c & (~c + 1);
  Mask frontier = reached;
  while (frontier) {
    Mask next = 0;
    for (Mask rest = frontier; rest; rest &= rest - 1) next |= open[std::countr_zero(rest)];
    next &= c & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == c;
}

}  // namespace

std::size_t min_cds_bruteforce(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kMinCdsLimit) {
    throw std::length_error("min_cds_bruteforce is limited to " + std::to_string(kMinCdsLimit) +
                            " nodes (got " + std::to_string(n) + ")");
  }
  if (n == 0) return 0;
  if (!is_connected(g)) throw std::invalid_argument("graph is disconnected: no CDS exists");

  std::vector<Mask> open(n, 0), closed(n, 0);
  for (NodeId u = 1; u <= n; ++u) {
    for (NodeId v : g.neighbors(u)) open[u - 1] |= Mask{1} << (v - 1);
    closed[u - 1] = open[u - 1] | (Mask{1} << (u - 1));
  }
  const Mask full = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;

  for (std::size_t k = 1; k <= n; ++k) {
    // Gosper's hack over all k-subsets of n bits.
    Mask c = (Mask{1} << k) - 1;
    const Mask limit = Mask{1} << n;
    while (c < limit) {
      if (mask_is_cds(closed, open, full, c)) return k;
      const Mask low = c & (~c + 1);
      const Mask ripple = c + low;
      c = (((ripple ^ c) >> 2) / low) | ripple;
      if (ripple == 0) break;
    }
  }
  return n;
}

double approximation_ratio(const Graph& g, const IdSet& cds) {
  const auto report = verify_cds(g, cds);
  if (!report.valid) throw std::invalid_argument("approximation ratio requires a valid CDS");
  const std::size_t best = min_cds_bruteforce(g);
  return best == 0 ? 1.0 : static_cast<double>(cds.size()) / static_cast<double>(best);
}

UnreliableRule all_grey_zone_pairs() {
  return [](NodeId, NodeId, double) { return true; };
}

UnreliableRule no_grey_zone_pairs() {
  return [](NodeId, NodeId, double) { return false; };
}

DualGraph geometric_dualgraph(const std::vector<Point>& points, double gamma,
                              const UnreliableRule& rule) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
  const std::size_t n = points.size();
  std::vector<Edge> reliable, grey;
  for (NodeId u = 1; u <= n; ++u) {
    for (NodeId v = u + 1; v <= n; ++v) {
      const double d = distance(points[u - 1], points[v - 1]);
      if (d == 0.0) throw std::invalid_argument("points must be distinct");
      if (d <= 1.0) {
        reliable.push_back({u, v});
      } else if (d <= gamma && rule(u, v, d)) {
        grey.push_back({u, v});
      }
    }
  }
  return DualGraph(n, std::move(reliable), std::move(grey), points, gamma);
}

GeographicCheck check_geographic(const DualGraph& graph) {
  if (!graph.embedding()) throw std::invalid_argument("geographic check needs an embedding");
  if (!graph.gamma()) throw std::invalid_argument("geographic check needs gamma");
  const auto& pts = *graph.embedding();
  const double gamma = *graph.gamma();
  for (NodeId u = 1; u <= graph.size(); ++u) {
    for (NodeId v = u + 1; v <= graph.size(); ++v) {
      const double d = distance(pts[u - 1], pts[v - 1]);
      if (d <= 1.0 && !graph.is_reliable(u, v)) return {false, u, v, d};
      if (d > gamma && (graph.is_reliable(u, v) || graph.is_unreliable(u, v))) return {false, u, v, d};
    }
  }
  return {};
}

}  // namespace dualgraph
