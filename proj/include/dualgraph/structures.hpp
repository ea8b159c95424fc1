#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualgraph/graph.hpp"

namespace dualgraph {

struct Violation {
  enum class Kind { independence, uncovered, disconnected, empty, out_of_range };
  Kind kind;
  NodeId a = 0;
  NodeId b = 0;  // second witness where the kind has one

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(Violation::Kind kind);

struct StructureReport {
  bool valid = true;
  std::vector<Violation> violations;
  std::size_t size = 0;
  std::optional<double> approx_ratio;
};

/// MIS of G: independent and dominating; each failure carries a witness.
StructureReport verify_mis(const Graph& g, const IdSet& members);

/// CDS of G: dominating, G[C] connected, and non-empty when n >= 1.
StructureReport verify_cds(const Graph& g, const IdSet& members);

inline constexpr std::size_t kMinCdsLimit = 20;

/// Exact minimum CDS size by increasing-size subset enumeration. Refuses
/// graphs above kMinCdsLimit nodes and disconnected graphs (no CDS exists).
std::size_t min_cds_bruteforce(const Graph& g);

/// |C| / minimum CDS size; requires a valid CDS.
double approximation_ratio(const Graph& g, const IdSet& cds);

/// Which grey-zone pairs (1 < d <= gamma) become unreliable edges.
using UnreliableRule = std::function<bool(NodeId, NodeId, double)>;
UnreliableRule all_grey_zone_pairs();
UnreliableRule no_grey_zone_pairs();

DualGraph geometric_dualgraph(const std::vector<Point>& points, double gamma,
                              const UnreliableRule& rule = all_grey_zone_pairs());

struct GeographicCheck {
  bool holds = true;
  NodeId u = 0;
  NodeId v = 0;
  double distance = 0.0;
};

/// Checks d <= 1 => reliable edge and d > gamma => no edge in G'.
GeographicCheck check_geographic(const DualGraph& graph);

}  // namespace dualgraph
