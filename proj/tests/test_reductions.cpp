#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dualgraph/algorithms.hpp"
#include "dualgraph/reductions.hpp"
#include "dualgraph/structures.hpp"
#include "oracles.hpp"

using namespace dualgraph;

namespace {

std::vector<NodeId> iota_ids(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  return ids;
}

bool proper_on(const Graph& g, const std::vector<Color>& colors) {
  for (const auto& e : g.edges())
    if (colors[e.u - 1] == colors[e.v - 1]) return false;
  return true;
}

// Silent; joins iff its id is below both advance neighbors.
class LocalMinimum final : public Algorithm {
 public:
  std::string name() const override { return "local-min"; }
  std::unique_ptr<NodeProcess> spawn(const NodeContext& context) const override {
    return std::make_unique<HistoryProcess>(context, [](const NodeContext&, Round, auto) { return BroadcastIntent{}; });
  }
  double out(const OutInput& in) const override {
    if (!in.neighbors) return 0.0;
    for (NodeId v : *in.neighbors)
      if (v < in.id) return 0.0;
    return 1.0;
  }
};

}  // namespace

TEST_CASE("kappa store is referentially transparent") {
  const KappaStore kappa(5);
  CHECK(kappa.bits(1, 2, 3) == kappa.bits(1, 2, 3));
  CHECK(kappa.bits(1, 2, 3) != kappa.bits(3, 2, 1));
  CHECK(KappaStore(5).bits(4, 5, 6) == kappa.bits(4, 5, 6));
  CHECK(kappa.decide(1, 2, 3, 1.0));
  CHECK_FALSE(kappa.decide(1, 2, 3, 0.0));
}

TEST_CASE("MIS -> coloring is proper for every MIS of small rings under every orientation") {
  const auto none = static_no_edges();
  for (std::size_t n : {4u, 5u, 6u, 7u}) {
    auto ids = iota_ids(n);
    int checked = 0;
    do {
      if (ids.front() != 1) break;  // rotations are equivalent
      const RingAssignment ell(ids);
      const auto g = DualGraph::classical(ell.ring());
      for (const auto& mis : enumerate_mis(g.reliable())) {
        const FixedOutput fixed(mis);
        const auto run = MisToColoring(fixed).run(g, ell, *none, 0, 1);
        CHECK(run.colors.size() == n);
        CHECK(proper_on(g.reliable(), run.colors));
        for (NodeId id : mis) CHECK(run.colors[id - 1] == 1);
        ++checked;
      }
    } while (std::next_permutation(ids.begin() + 1, ids.end()));
    CHECK(checked > 0);
  }
}

TEST_CASE("MIS -> coloring: both neighbors in the MIS gives color 2") {
  const RingAssignment ell = RingAssignment::identity(4);
  const auto g = DualGraph::classical(ell.ring());
  const FixedOutput fixed({1, 3});
  const auto none = static_no_edges();
  const auto run = MisToColoring(fixed).run(g, ell, *none, 0, 1);
  CHECK(run.colors == std::vector<Color>{1, 2, 1, 2});
  CHECK(run.heard_mis_phase.empty());
  CHECK(run.heard_any == IdSet{2, 4});
}

TEST_CASE("MIS -> coloring refuses non-ring graphs") {
  const auto none = static_no_edges();
  const FixedOutput fixed({1});
  CHECK_THROWS_AS(MisToColoring(fixed).run(DualGraph::classical(Graph::complete(4)), *none, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(MisToColoring(fixed).run(DualGraph::classical(Graph::path(iota_ids(5))), *none, 0, 1),
                  std::invalid_argument);
  const auto ring = DualGraph::classical(Graph::ring(iota_ids(5)));
  CHECK_THROWS_AS(MisToColoring(fixed).run(ring, RingAssignment({1, 3, 2, 4, 5}), *none, 0, 1), std::invalid_argument);
  CHECK(ring_orientation(Graph::ring(std::vector<NodeId>{1, 4, 2, 5, 3}))->ids() == std::vector<NodeId>{1, 3, 5, 2, 4});
}

TEST_CASE("coloring player: silent local-minimum algorithm has no exceptions") {
  const LocalMinimum alg;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    MisColoringPlayer player(alg, 16, 3.0, seed);
    BlockShuffleReferee referee(1.0, seed);
    const std::size_t n = 12 + seed % 9;
    const auto game = play_selective_ring_coloring(player, referee, n, [](std::size_t) { return 0; });
    CHECK(game.exceptions.empty());
    const auto coloring = player.commit(n);
    CHECK(game.transcript.win ==
          testing_oracle::ring_coloring_wins(game.assignment.ids(), coloring, std::vector<NodeId>{}));
  }
}

TEST_CASE("coloring player: silent nodes are colored exactly as committed") {
  const DecayMis alg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 64;
    MisColoringPlayer full(alg, 8, 3.0, seed, ExceptionAccounting::full);
    const auto coloring = full.commit(n);
    const auto ell = block_shuffle_referee(n, 1.0, seed);
    const auto x = full.exceptions(ell);
    const auto& run = *full.last_run();
    std::size_t silent = 0;
    for (std::size_t p = 1; p <= n; ++p) {
      const NodeId id = ell.at(p);
      if (std::binary_search(x.begin(), x.end(), id)) continue;
      ++silent;
      CHECK(run.colors[id - 1] == coloring(ell.counterclockwise(p), id, ell.clockwise(p)));
    }
    CHECK(silent + x.size() == n);
    MisColoringPlayer mis_only(alg, 8, 3.0, seed);
    mis_only.commit(n);
    const auto narrow = mis_only.exceptions(ell);
    CHECK(std::includes(x.begin(), x.end(), narrow.begin(), narrow.end()));
  }
}

TEST_CASE("hard network: constant join probabilities") {
  const ConstantP always(1.0);
  const auto ones = build_cds_hard_network(always, 36);
  CHECK(ones.k == 6);
  CHECK(layout_violations(ones, &always).empty());
  for (const auto& part : ones.parts) {
    CHECK(part.case_tag == 1);
    CHECK(part.connector == part.members.front());
  }
  // 6 cliques of size 5 plus their connectors plus the 6-core clique.
  CHECK(ones.graph.reliable().edge_count() == 6 * 10 + 6 + 15);

  const ConstantP never(0.0);
  const auto zeros = build_cds_hard_network(never, 36);
  CHECK(layout_violations(zeros, &never).empty());
  for (const auto& part : zeros.parts) {
    CHECK(part.case_tag == 2);
    CHECK(part.connector == part.members.front());
    CHECK(part.extender == part.members.back());
  }
  CHECK(zeros.graph.reliable().edge_count() == 6 * (6 + 2) + 15);
  CHECK_THROWS(build_cds_hard_network(never, 8));
}

TEST_CASE("hard network from decay-cds satisfies every layout invariant") {
  const DecayCds cds;
  for (std::size_t n : {64u, 70u, 256u}) {
    const auto layout = build_cds_hard_network(cds, n);
    CHECK(layout.graph.size() == n);
    const auto issues = layout_violations(layout, &cds);
    for (const auto& issue : issues) MESSAGE(issue);
    CHECK(issues.empty());
    CHECK(is_connected(layout.graph.reliable()));
    // Removing the single attachment edge isolates each point set.
    for (const auto& part : layout.parts) {
      const NodeId attach = part.case_tag == 1 ? part.connector : *part.extender;
      std::vector<Edge> edges;
      for (const auto& e : layout.graph.reliable().edges())
        if (!(e == Edge::make(attach, part.core))) edges.push_back(e);
      CHECK_FALSE(is_connected(Graph(n, edges)));
    }
  }
  // Tampering is detected.
  auto broken = build_cds_hard_network(cds, 64);
  broken.parts[0].connector = broken.parts[0].members.back();
  CHECK_FALSE(layout_violations(broken, &cds).empty());
}

TEST_CASE("barbell graph") {
  CHECK(barbell_partner(16, 3) == 11);
  CHECK(barbell_partner(16, 11) == 3);
  CHECK(barbell_partner(16, 8) == 16);
  CHECK(barbell_partner(7, 3) == 6);
  CHECK(barbell_partner(7, 7) == 3);
  for (std::size_t k : {4u, 7u, 16u}) {
    for (NodeId t = 1; t <= k; ++t) {
      const auto g = barbell_graph(k, t);
      const std::size_t h = k / 2;
      CHECK(g.size() == k);
      CHECK(g.reliable().edge_count() == h * (h - 1) / 2 + (k - h) * (k - h - 1) / 2 + 1);
      CHECK(g.is_reliable(t, barbell_partner(k, t)));
      CHECK(is_connected(g.reliable()));
    }
  }
}

TEST_CASE("barbell player: simulation matches the hidden graph") {
  const DecayCds cds;
  const std::size_t k = 16;
  const Round f = 40;
  const auto all = static_all_edges();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    BarbellIsolationPlayer player(cds, f, derive_seed(seed, StreamTag::player));
    const auto game = play_isolation(player, k, 10'000, seed);
    const auto truth = run_execution(barbell_graph(k, game.target), *all, cds, KnowledgeMode::passive, f,
                                     derive_seed(seed, StreamTag::player));
    const auto& sim = player.simulated();
    REQUIRE(sim.size() <= truth.transcript.size());
    for (std::size_t r = 0; r < sim.size(); ++r) CHECK(sim[r] == truth.transcript[r]);
    if (!game.transcript.win || player.outputs()) {
      CHECK(sim.size() == f);
      CHECK(player.outputs().has_value());
      CHECK(*player.outputs() == truth.outputs);
    }
    const std::size_t joined = player.outputs() ? truth.joined().size() : 0;
    CHECK(game.guesses <= 2 * f + joined);
    // A correct CDS must include a bridge endpoint, so finishing means winning.
    if (player.outputs() && verify_cds(barbell_graph(k, game.target).reliable(), truth.joined()).valid)
      CHECK(game.transcript.win);
  }
}

TEST_CASE("barbell player: silent always-join algorithm guesses all ids") {
  const ConstantP join(1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    BarbellIsolationPlayer player(join, 5, seed);
    const auto game = play_isolation(player, 9, 9, seed);
    CHECK(game.transcript.win);
    CHECK(game.guesses == game.target);
  }
}

TEST_CASE("G_kappa structure") {
  const auto g = build_g_kappa({0, 1, 1});
  CHECK(g.size() == 18);
  CHECK(g.is_reliable(1, 2));
  CHECK(g.is_reliable(1, 4));  // anchor 1 - first of set 1
  CHECK(g.is_reliable(4, 5));
  CHECK_FALSE(g.is_reliable(4, 6));  // line
  CHECK(g.is_reliable(9, 13));       // clique
  CHECK(g.reliable().edge_count() == 2 + 3 + 4 + 10 + 10);
  CHECK(g_kappa_index(3, 2) == 2);
  CHECK(g_kappa_index(3, 4) == 1);
  CHECK(g_kappa_index(3, 18) == 3);
  CHECK(is_connected(g.reliable()));
}

TEST_CASE("G_kappa decoding is sound for every kappa with a correct MIS") {
  for (std::size_t k : {2u, 3u, 4u}) {
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
      Bits kappa(k);
      for (std::size_t i = 0; i < k; ++i) kappa[i] = (mask >> i) & 1u;
      const auto g = build_g_kappa(kappa);
      const auto mis = greedy_mis(g.reliable());
      REQUIRE(verify_mis(g.reliable(), mis).valid);
      const FixedOutput truth(mis);
      GKappaBitRevealPlayer player(truth, 0, 1);
      player.start(k);
      const auto move = player.next_move();
      REQUIRE(std::holds_alternative<BitGuess>(move));
      CHECK(std::get<BitGuess>(move).bits == kappa);
    }
  }
}

TEST_CASE("G_kappa player: simulation matches the hidden graph, one request per round") {
  const DecayMis mis;
  const std::size_t k = 8;
  const Round f = 30;
  const auto all = static_all_edges();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto player_seed = derive_seed(seed, StreamTag::player);
    GKappaBitRevealPlayer player(mis, f, player_seed);
    const auto game = play_bit_revealing(player, k, f, seed);
    CHECK(game.requests == f);
    const auto truth = run_execution(build_g_kappa(game.secret), *all, mis, KnowledgeMode::passive, f, player_seed);
    CHECK(player.simulated() == truth.transcript);
    REQUIRE(player.outputs().has_value());
    CHECK(*player.outputs() == truth.outputs);
  }
}
