#include "dualgraph/engine.hpp"

#include <cmath>
#include <stdexcept>

#include "dualgraph/seed.hpp"

namespace dualgraph {

double checked_out(const Algorithm& algorithm, const OutInput& input) {
  const double p = algorithm.out(input);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(algorithm.name() + ": out function returned " + std::to_string(p) +
                            " for node " + std::to_string(input.id));
  }
  return p;
}

std::uint64_t broadcast_coin_bits(std::uint64_t seed, NodeId id, Round round) {
  return derive_seed(seed, StreamTag::broadcast, {id, round});
}

std::uint64_t out_coin_bits(std::uint64_t seed, NodeId id) {
  return derive_seed(seed, StreamTag::out_coin, {id});
}

Execution::Execution(std::size_t n, const Algorithm& algorithm, KnowledgeMode mode,
                     const std::vector<IdSet>* neighbor_lists, std::uint64_t seed)
    : algorithm_(algorithm), mode_(mode), seed_(seed) {
  if (mode == KnowledgeMode::advance && (neighbor_lists == nullptr || neighbor_lists->size() != n)) {
    throw std::invalid_argument("advance knowledge requires a neighbor list per node");
  }
  contexts_.reserve(n);
  processes_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    NodeContext ctx{static_cast<NodeId>(i + 1), n, mode, std::nullopt};
    if (mode == KnowledgeMode::advance) ctx.neighbors = (*neighbor_lists)[i];
    contexts_.push_back(ctx);
    processes_.push_back(algorithm.spawn(contexts_.back()));
  }
}

std::span<const double> Execution::declare() {
  if (phase_ != Phase::idle) throw std::logic_error("declare() called twice for one round");
  const Round round = round_ + 1;
  intents_.clear();
  declared_.clear();
  for (auto& process : processes_) {
    BroadcastIntent intent = process->declare(round);
    if (!(intent.probability >= 0.0 && intent.probability <= 1.0)) {
      throw std::domain_error(algorithm_.name() + ": broadcast probability out of [0,1]");
    }
    declared_.push_back(intent.probability);
    intents_.push_back(std::move(intent));
  }
  phase_ = Phase::declared;
  return declared_;
}

const std::vector<Broadcast>& Execution::flip() {
  if (phase_ != Phase::declared) throw std::logic_error("flip() requires declare() first");
  const Round round = round_ + 1;
  broadcasts_.clear();
  for (std::size_t i = 0; i < intents_.size(); ++i) {
    const auto id = static_cast<NodeId>(i + 1);
    if (resolve_coin(broadcast_coin_bits(seed_, id, round), intents_[i].probability)) {
      broadcasts_.push_back({id, intents_[i].payload});
    }
  }
  coins_drawn_ = round;
  phase_ = Phase::flipped;
  return broadcasts_;
}

const RoundTranscript& Execution::deliver(EdgeChoice adversary, Receptions receptions) {
  if (phase_ != Phase::flipped) throw std::logic_error("deliver() requires flip() first");
  if (receptions.size() != processes_.size()) {
    throw std::invalid_argument("reception vector size does not match node count");
  }
  const Round round = round_ + 1;
  std::vector<bool> transmitted(processes_.size(), false);
  for (const auto& b : broadcasts_) transmitted[b.sender - 1] = true;
  for (std::size_t i = 0; i < processes_.size(); ++i) {
    processes_[i]->deliver(round, transmitted[i], receptions[i]);
  }
  transcript_.push_back(RoundTranscript{round, declared_, broadcasts_, std::move(adversary),
                                        std::move(receptions)});
  round_ = round;
  phase_ = Phase::idle;
  return transcript_.back();
}

std::vector<double> Execution::out_probabilities() const {
  std::vector<double> out;
  out.reserve(processes_.size());
  for (std::size_t i = 0; i < processes_.size(); ++i) {
    const NodeContext& ctx = contexts_[i];
    OutInput input{ctx.id, ctx.n, ctx.neighbors ? &*ctx.neighbors : nullptr,
                   processes_[i]->history()};
    out.push_back(checked_out(algorithm_, input));
  }
  return out;
}

std::vector<std::uint8_t> Execution::outputs() const {
  return outputs([this](NodeId id, double p) { return resolve_coin(out_coin_bits(seed_, id), p); });
}

std::vector<std::uint8_t> Execution::outputs(
    const std::function<bool(NodeId, double)>& resolver) const {
  const auto probabilities = out_probabilities();
  std::vector<std::uint8_t> bits(probabilities.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    bits[i] = resolver(static_cast<NodeId>(i + 1), probabilities[i]) ? 1 : 0;
  }
  return bits;
}

IdSet ExecutionResult::joined() const {
  IdSet ids;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i]) ids.push_back(static_cast<NodeId>(i + 1));
  }
  return ids;
}

std::vector<IdSet> neighbor_lists(const Graph& g) {
  std::vector<IdSet> lists(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto span = g.neighbors(static_cast<NodeId>(i + 1));
    lists[i].assign(span.begin(), span.end());
  }
  return lists;
}

const RoundTranscript& step_execution(Execution& exec, const DualGraph& graph, const Adversary& adversary) {
  const Round r = exec.next_round();
  const auto declared = exec.declare();
  EdgeChoice choice = EdgeChoice::none();
  const bool offline = adversary.adversary_class() == AdversaryClass::offline_adaptive;
  if (!offline) {
    AdversaryView view{graph, r, exec.transcript(), declared, nullptr, exec.coins_drawn_through()};
    choice = adversary.choose(view);
  }
  const auto& broadcasts = exec.flip();
  if (offline) {
    AdversaryView view{graph, r, exec.transcript(), declared, &broadcasts, exec.coins_drawn_through()};
    choice = adversary.choose(view);
  }
  auto receptions = resolve_round(graph, choice, broadcasts, r);
  return exec.deliver(std::move(choice), std::move(receptions));
}

ExecutionResult run_execution(const DualGraph& graph, const Adversary& adversary,
                              const Algorithm& algorithm, KnowledgeMode mode, Round rounds,
                              std::uint64_t seed) {
  const auto lists = neighbor_lists(graph.reliable());
  Execution exec(graph.size(), algorithm, mode, &lists, seed);
  for (Round r = 1; r <= rounds; ++r) step_execution(exec, graph, adversary);

  ExecutionResult result;
  result.out_probabilities = exec.out_probabilities();
  result.outputs = exec.outputs();
  result.transcript = exec.transcript();
  return result;
}

}  // namespace dualgraph
