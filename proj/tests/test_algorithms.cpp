#include <doctest.h>

#include <numeric>

#include "dualgraph/adversary.hpp"
#include "dualgraph/algorithms.hpp"
#include "dualgraph/seed.hpp"
#include "dualgraph/structures.hpp"
#include "oracles.hpp"

using namespace dualgraph;

namespace {

std::vector<NodeId> iota_ids(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  return ids;
}

Graph random_connected(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 2; u <= n; ++u) edges.push_back(Edge::make(static_cast<NodeId>(1 + rng() % (u - 1)), u));
  for (NodeId u = 1; u <= n; ++u)
    for (NodeId v = u + 1; v <= n; ++v)
      if (rng() % 4 == 0 && std::find(edges.begin(), edges.end(), Edge{u, v}) == edges.end()) edges.push_back({u, v});
  return Graph(n, edges);
}

}  // namespace

TEST_CASE("centralized oracles") {
  const auto c5 = Graph::ring(iota_ids(5));
  CHECK(enumerate_mis(c5).size() == 5);
  const auto k5 = Graph::complete(5);
  const auto k5_all = enumerate_mis(k5);
  CHECK(k5_all.size() == 5);
  for (const auto& s : k5_all) CHECK(s.size() == 1);
  CHECK(greedy_mis(k5) == IdSet{1});

  const auto line = Graph::path(iota_ids(5));
  CHECK(greedy_mis(line) == IdSet{1, 3, 5});
  for (const auto& s : enumerate_mis(line)) CHECK(s.size() >= 2);

  CHECK(greedy_mis(Graph::ring(iota_ids(6))) == IdSet{1, 3, 5});
  CHECK_THROWS_AS(enumerate_mis(Graph(13)), std::length_error);
}

TEST_CASE("greedy MIS lies in the exact enumeration; CDS-from-MIS is a CDS") {
  Rng rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_connected(rng, 1 + rng() % 12);
    const auto all = enumerate_mis(g);
    const auto greedy = greedy_mis(g);
    CHECK(std::find(all.begin(), all.end(), greedy) != all.end());
    for (const auto& s : all) CHECK(verify_mis(g, s).valid);
    CHECK(verify_cds(g, cds_from_mis(g)).valid);
  }
}

TEST_CASE("decay-mis: the sole node of a singleton network joins") {
  const DualGraph g(1, {}, {});
  const auto none = static_no_edges();
  const auto run = run_execution(g, *none, DecayMis{}, KnowledgeMode::advance, 3, 1);
  CHECK(run.outputs == std::vector<std::uint8_t>{1});
  const auto passive = run_execution(g, *none, DecayMis{}, KnowledgeMode::passive, 3, 1);
  CHECK(passive.outputs == std::vector<std::uint8_t>{1});
}

TEST_CASE("decay-mis in the classical model on a 32-ring") {
  // Regression fixture: success rate over 200 seeded trials with randomly
  // permuted ring ids and 8 decay phases.
  const std::size_t n = 32;
  const auto none = static_no_edges();
  const DecayMis alg;
  const Round rounds = static_cast<Round>(8 * decay_phase_length({}, n));
  int valid = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    auto ids = iota_ids(n);
    Rng rng(derive_seed(77, StreamTag::network, {t}));
    std::shuffle(ids.begin(), ids.end(), rng);
    const auto g = DualGraph::classical(Graph::ring(ids));
    const auto run = run_execution(g, *none, alg, KnowledgeMode::advance, rounds, derive_seed(77, StreamTag::trial, {t}));
    if (verify_mis(g.reliable(), run.joined()).valid) ++valid;
  }
  MESSAGE("decay-mis ring-32 classical success: " << valid << "/200");
  CHECK(valid >= 160);
  CHECK(valid == 196);
}

TEST_CASE("decay-mis in advance mode never violates independence") {
  Rng rng(8);
  const auto adv = threshold_adversary(3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = DualGraph::complete_overlay(random_connected(rng, 10 + rng() % 20));
    const auto run = run_execution(g, *adv, DecayMis({0, 0.0}), KnowledgeMode::advance, 20, rng());
    const auto report = verify_mis(g.reliable(), run.joined());
    for (const auto& v : report.violations) CHECK(v.kind != Violation::Kind::independence);
  }
}

TEST_CASE("decay-mis under the all-edges static adversary on a complete overlay") {
  const std::size_t n = 32;
  const auto g = DualGraph::complete_overlay(Graph::ring(iota_ids(n)));
  const auto all = static_all_edges();
  const auto run = run_execution(g, *all, DecayMis{}, KnowledgeMode::passive, 40, 3);
  for (const auto& round : run.transcript) {
    CHECK(round.receiver_count() <= (round.broadcasts.size() == 1 ? n - 1 : 0));
    if (round.broadcasts.size() != 1) CHECK(round.receiver_count() == 0);
  }
}

TEST_CASE("round-robin reconstructs G and outputs the canonical greedy MIS") {
  Rng rng(2);
  const auto none = static_no_edges();
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto g = DualGraph::classical(random_connected(rng, n));
    const RoundRobin rr(n);
    const auto run = run_execution(g, *none, rr, KnowledgeMode::advance, static_cast<Round>(n * n), rng());
    CHECK(run.joined() == greedy_mis(g.reliable()));
    CHECK(verify_mis(g.reliable(), run.joined()).valid);
  }
  const auto ring = DualGraph::classical(Graph::ring(iota_ids(6)));
  const auto ring_run = run_execution(ring, *none, RoundRobin(6), KnowledgeMode::advance, 36, 9);
  CHECK(ring_run.joined() == IdSet{1, 3, 5});
}

TEST_CASE("round-robin: one transmitter per round over a complete overlay") {
  Rng rng(12);
  const auto all = static_all_edges();
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto g = DualGraph::complete_overlay(random_connected(rng, n));
    const auto run = run_execution(g, *all, RoundRobin(n), KnowledgeMode::advance, static_cast<Round>(n), rng());
    for (const auto& round : run.transcript) {
      CHECK(round.broadcasts.size() == 1);
      CHECK(round.receiver_count() == n - 1);
    }
    CHECK(run.joined() == greedy_mis(g.reliable()));
  }
}

TEST_CASE("round-robin refuses passive knowledge and size mismatch") {
  const auto g = DualGraph::classical(Graph::complete(4));
  const auto none = static_no_edges();
  CHECK_THROWS(run_execution(g, *none, RoundRobin(4), KnowledgeMode::passive, 1, 1));
  CHECK_THROWS(run_execution(g, *none, RoundRobin(5), KnowledgeMode::advance, 1, 1));
}

TEST_CASE("out functions are pure and every process declares a valid probability") {
  const IdSet nbrs{2, 5};
  std::vector<Reception> history{{1, 2, "C", true}, {2, 5, "J", true}};
  for (const auto& name : algorithm_names()) {
    const auto alg = make_algorithm(name, {}, 6);
    const OutInput in{3, 6, &nbrs, history};
    const double first = alg->out(in);
    CHECK(first >= 0.0);
    CHECK(first <= 1.0);
    CHECK(alg->out(in) == first);
    NodeContext ctx{3, 6, KnowledgeMode::advance, nbrs};
    auto process = alg->spawn(ctx);
    for (Round r = 1; r <= 8; ++r) {
      const auto intent = process->declare(r);
      CHECK(intent.probability >= 0.0);
      CHECK(intent.probability <= 1.0);
      process->deliver(r, false, std::nullopt);
    }
  }
  CHECK_THROWS(make_algorithm("nope", {}, 3));
}

TEST_CASE("decay-cds produces a CDS in the classical model when given enough rounds") {
  Rng rng(31);
  const auto none = static_no_edges();
  int valid = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = DualGraph::classical(random_connected(rng, 12));
    const auto run = run_execution(g, *none, DecayCds{}, KnowledgeMode::advance, 160, rng());
    if (verify_cds(g.reliable(), run.joined()).valid) ++valid;
  }
  MESSAGE("decay-cds classical success: " << valid << "/40");
  CHECK(valid >= 30);
}
