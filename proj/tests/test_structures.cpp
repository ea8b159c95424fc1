#include <doctest.h>

#include <cmath>

#include "dualgraph/seed.hpp"
#include "dualgraph/structures.hpp"
#include "oracles.hpp"

using namespace dualgraph;

namespace {

Graph ring6() {
  const std::vector<NodeId> ids{1, 2, 3, 4, 5, 6};
  return Graph::ring(ids);
}

Graph barbell8() {
  // Two K4s {1..4}, {5..8} with bridge 2-6.
  std::vector<Edge> edges;
  for (NodeId u = 1; u <= 4; ++u)
    for (NodeId v = u + 1; v <= 4; ++v) {
      edges.push_back({u, v});
      edges.push_back({u + 4, v + 4});
    }
  edges.push_back({2, 6});
  return Graph(8, edges);
}

bool has_violation(const StructureReport& r, Violation::Kind kind, NodeId a, NodeId b = 0) {
  return std::find(r.violations.begin(), r.violations.end(), Violation{kind, a, b}) != r.violations.end();
}

}  // namespace

TEST_CASE("verify_mis witnesses") {
  CHECK(verify_mis(Graph(1), {1}).valid);
  const std::vector<NodeId> path_ids{1, 2, 3};
  const auto path = Graph::path(path_ids);
  const auto bad = verify_mis(path, {1, 2});
  CHECK_FALSE(bad.valid);
  CHECK(has_violation(bad, Violation::Kind::independence, 1, 2));

  CHECK(verify_mis(ring6(), {1, 4}).valid);
  const auto uncovered = verify_mis(ring6(), {1});
  CHECK(has_violation(uncovered, Violation::Kind::uncovered, 4));
  CHECK(verify_mis(ring6(), {9}).violations.front().kind == Violation::Kind::out_of_range);
}

TEST_CASE("verify_mis on C6 agrees with enumeration of all valid MISs") {
  // The maximal independent sets of C6 are the two alternating triples and
  // the three antipodal pairs.
  const auto g = ring6();
  int valid = 0;
  for (std::uint32_t s = 0; s < 64; ++s) {
    IdSet set;
    for (NodeId i = 0; i < 6; ++i)
      if (s >> i & 1u) set.push_back(i + 1);
    if (verify_mis(g, set).valid) ++valid;
  }
  CHECK(valid == 5);
}

TEST_CASE("verify_cds") {
  const auto bb = barbell8();
  CHECK(verify_cds(bb, {2, 6}).valid);
  const auto split = verify_cds(bb, {1, 5});
  CHECK_FALSE(split.valid);
  CHECK(has_violation(split, Violation::Kind::disconnected, 1, 5));

  CHECK(verify_cds(ring6(), {1, 2, 3, 4, 5}).valid);
  CHECK_FALSE(verify_cds(ring6(), {1, 3, 5}).valid);
  CHECK(has_violation(verify_cds(ring6(), {}), Violation::Kind::empty, 0));
  CHECK(verify_cds(Graph(0), {}).valid);
}

TEST_CASE("verifiers agree with definition oracles on random graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<Edge> edges;
    for (NodeId u = 1; u <= n; ++u)
      for (NodeId v = u + 1; v <= n; ++v)
        if (rng() % 2) edges.push_back({u, v});
    const Graph g(n, edges);
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      IdSet set;
      for (NodeId i = 0; i < n; ++i)
        if (s >> i & 1u) set.push_back(i + 1);
      CHECK(verify_mis(g, set).valid == testing_oracle::is_mis(n, edges, set));
      CHECK(verify_cds(g, set).valid == testing_oracle::is_cds(n, edges, set));
    }
  }
}

TEST_CASE("min_cds_bruteforce") {
  CHECK(min_cds_bruteforce(Graph::complete(5)) == 1);
  const std::vector<NodeId> five{1, 2, 3, 4, 5};
  CHECK(min_cds_bruteforce(Graph::path(five)) == 3);
  CHECK(min_cds_bruteforce(barbell8()) == 2);
  CHECK(min_cds_bruteforce(Graph(1)) == 1);
  CHECK(min_cds_bruteforce(Graph(0)) == 0);
  CHECK_THROWS_AS(min_cds_bruteforce(Graph(21)), std::length_error);
  CHECK_THROWS_AS(min_cds_bruteforce(Graph(3, std::vector<Edge>{{1, 2}})), std::invalid_argument);

  CHECK(approximation_ratio(barbell8(), {2, 6}) == doctest::Approx(1.0));
  CHECK(approximation_ratio(barbell8(), {1, 2, 6}) == doctest::Approx(1.5));
  CHECK_THROWS(approximation_ratio(barbell8(), {1, 5}));
}

TEST_CASE("min_cds_bruteforce is tight: a witness of that size exists and none smaller") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    std::vector<Edge> edges;
    for (NodeId u = 2; u <= n; ++u) edges.push_back({static_cast<NodeId>(1 + rng() % (u - 1)), u});
    for (NodeId u = 1; u <= n; ++u)
      for (NodeId v = u + 1; v <= n; ++v)
        if (rng() % 5 == 0 && std::find(edges.begin(), edges.end(), Edge{u, v}) == edges.end())
          edges.push_back({u, v});
    const Graph g(n, edges);
    const auto best = min_cds_bruteforce(g);
    bool witness = false;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      IdSet set;
      for (NodeId i = 0; i < n; ++i)
        if (s >> i & 1u) set.push_back(i + 1);
      if (!testing_oracle::is_cds(n, edges, set)) continue;
      CHECK(set.size() >= best);
      witness = witness || set.size() == best;
      CHECK(approximation_ratio(g, set) >= 1.0);
    }
    CHECK(witness);
  }
}

TEST_CASE("geometric_dualgraph") {
  const auto close = geometric_dualgraph({{0, 0}, {0.5, 0}}, 2.0);
  CHECK(close.is_reliable(1, 2));

  const auto far = geometric_dualgraph({{0, 0}, {2.1, 0}}, 2.0);
  CHECK_FALSE(far.is_reliable(1, 2));
  CHECK_FALSE(far.is_unreliable(1, 2));

  const auto line = geometric_dualgraph({{0, 0}, {1.5, 0}, {3.0, 0}}, 2.0);
  CHECK(line.reliable_edges().empty());
  CHECK(line.unreliable_edges() == std::vector<Edge>{{1, 2}, {2, 3}});

  const auto strict = geometric_dualgraph({{0, 0}, {1.5, 0}}, 2.0, no_grey_zone_pairs());
  CHECK(strict.unreliable_edges().empty());

  CHECK_THROWS(geometric_dualgraph({{0, 0}}, 0.9));
  CHECK_THROWS(geometric_dualgraph({{0, 0}, {0, 0}}, 1.0));
}

TEST_CASE("check_geographic") {
  Rng rng(3);
  std::uniform_real_distribution<double> coord(0.0, 5.0);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({coord(rng), coord(rng)});
  CHECK(check_geographic(geometric_dualgraph(pts, 1.7)).holds);

  std::uniform_real_distribution<double> wide(0.0, 20.0);
  std::vector<Point> many;
  for (int i = 0; i < 100; ++i) many.push_back({wide(rng), wide(rng)});
  const auto base = geometric_dualgraph(many, 2.0);
  const auto overlay = DualGraph::complete_overlay(base.reliable());
  const DualGraph bad(100, overlay.reliable_edges(), overlay.unreliable_edges(), many, 2.0);
  const auto check = check_geographic(bad);
  CHECK_FALSE(check.holds);
  CHECK(check.distance > 2.0);
  CHECK(distance(many[check.u - 1], many[check.v - 1]) == doctest::Approx(check.distance));

  const DualGraph pair(2, {{1, 2}}, {}, std::vector<Point>{{0, 0}, {0.3, 0.4}}, 3.0);
  CHECK(check_geographic(pair).holds);
  CHECK_THROWS(check_geographic(DualGraph(2, {{1, 2}}, {})));
}
