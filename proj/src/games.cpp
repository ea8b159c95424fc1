#include "dualgraph/games.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dualgraph {

namespace {

std::string join_ids(const std::vector<NodeId>& ids) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? "," : "") << ids[i];
  out << ']';
  return out.str();
}

}  // namespace

TripleColoring::TripleColoring(std::size_t n, Fn fn, std::uint64_t seed)
    : n_(n), fn_(std::move(fn)), seed_(seed) {
  if (n < 3) throw std::invalid_argument("triple coloring needs n >= 3");
  if (!fn_) throw std::invalid_argument("triple coloring needs a function");
}

Color TripleColoring::operator()(NodeId ccw, NodeId self, NodeId cw) const {
  for (NodeId x : {ccw, self, cw})
    if (x < 1 || x > n_) throw std::out_of_range("triple id outside [n]");
  if (ccw == self || self == cw || ccw == cw) throw std::invalid_argument("triple ids must be distinct");
  const Color c = fn_(ccw, self, cw);
  if (c < 1 || c > 3) throw std::domain_error("triple coloring value outside {1,2,3}");
  return c;
}

std::uint64_t TripleColoring::domain_size() const {
  const std::uint64_t n = n_;
  return n * (n - 1) * (n - 2);
}

TripleColoring TripleColoring::constant(std::size_t n, Color color) {
  return TripleColoring(n, [color](NodeId, NodeId, NodeId) { return color; });
}

RingAssignment::RingAssignment(std::vector<NodeId> ids) : ids_(std::move(ids)), positions_(ids_.size(), 0) {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const NodeId id = ids_[i];
    if (id < 1 || id > ids_.size()) throw std::invalid_argument("ring assignment id outside [n]");
    if (positions_[id - 1] != 0) throw std::invalid_argument("ring assignment is not a bijection");
    positions_[id - 1] = i + 1;
  }
}

RingAssignment RingAssignment::identity(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  return RingAssignment(std::move(ids));
}

NodeId RingAssignment::clockwise(std::size_t position) const {
  return ids_.at(position % ids_.size());
}

NodeId RingAssignment::counterclockwise(std::size_t position) const {
  return ids_.at((position + ids_.size() - 2) % ids_.size());
}

Graph RingAssignment::ring() const { return Graph::ring(ids_); }

std::string to_string(GameKind kind) {
  switch (kind) {
    case GameKind::ring_coloring: return "ring-coloring";
    case GameKind::isolation: return "isolation";
    case GameKind::bit_reveal: return "bit-reveal";
  }
  return "?";
}

RingVerdict adjudicate_ring_coloring(const TripleColoring& coloring, const RingAssignment& assignment,
                                     const IdSet& exceptions, std::size_t budget) {
  const std::size_t n = assignment.size();
  if (coloring.n() != n) throw std::invalid_argument("coloring and assignment sizes differ");
  RingVerdict verdict;
  if (exceptions.size() > budget) {
    verdict.reason = "exception set of size " + std::to_string(exceptions.size()) + " exceeds budget " +
                     std::to_string(budget);
    return verdict;
  }
  std::vector<bool> removed(n + 1, false);
  for (NodeId id : exceptions)
    if (id >= 1 && id <= n) removed[id] = true;

  verdict.colors.resize(n);
  for (std::size_t i = 1; i <= n; ++i)
    verdict.colors[i - 1] = coloring(assignment.counterclockwise(i), assignment.at(i), assignment.clockwise(i));

  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = i % n + 1;
    if (removed[assignment.at(i)] || removed[assignment.at(j)]) continue;
    if (verdict.colors[i - 1] == verdict.colors[j - 1]) verdict.conflicts.emplace_back(i, j);
  }
  verdict.win = verdict.conflicts.empty();
  verdict.reason = verdict.win ? "proper after exceptions"
                               : std::to_string(verdict.conflicts.size()) + " monochromatic edge(s) survive";
  return verdict;
}

RingGameResult play_selective_ring_coloring(RingColoringPlayer& player, RingReferee& referee, std::size_t n,
                                            const ExceptionBudget& budget) {
  if (n < 4) throw std::invalid_argument("selective ring coloring needs n >= 4");
  // Round 1: both moves are made before either sees the other.
  TripleColoring coloring = player.commit(n);
  RingAssignment assignment = referee.assign(n);
  if (coloring.n() != n || assignment.size() != n) throw std::invalid_argument("round-1 move has wrong size");

  GameTranscript transcript;
  transcript.kind = GameKind::ring_coloring;
  transcript.log.push_back({"player", "commit coloring n=" + std::to_string(n) + " seed=" +
                                          std::to_string(coloring.seed())});
  transcript.log.push_back({"referee", "assignment " + join_ids(assignment.ids())});

  IdSet exceptions = player.exceptions(assignment);
  std::sort(exceptions.begin(), exceptions.end());
  exceptions.erase(std::unique(exceptions.begin(), exceptions.end()), exceptions.end());
  transcript.log.push_back({"player", "exceptions " + join_ids(exceptions)});
  transcript.rounds_used = 3;

  auto verdict = adjudicate_ring_coloring(coloring, assignment, exceptions, budget(n));
  transcript.win = verdict.win;
  transcript.reason = verdict.reason;
  transcript.log.push_back({"referee", verdict.win ? "win" : "lose"});
  return {std::move(transcript), std::move(assignment), std::move(exceptions), std::move(verdict)};
}

std::size_t block_shuffle_length(std::size_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
  if (n == 0) return 2;
  const double exponent = epsilon / 5.0;
  auto f = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), exponent)));
  // pow can land a hair below an exact integer root; nudge to the true floor.
  while (std::pow(static_cast<double>(f + 1), 1.0 / exponent) <= static_cast<double>(n) * (1 + 1e-12)) ++f;
  while (f > 1 && std::pow(static_cast<double>(f), 1.0 / exponent) > static_cast<double>(n) * (1 + 1e-12)) --f;
  return std::max<std::size_t>(2, f);
}

RingAssignment block_shuffle_referee(std::size_t n, double epsilon, std::uint64_t seed) {
  const std::size_t f = block_shuffle_length(n, epsilon);
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  Rng rng = make_rng(seed, StreamTag::referee, {n});
  for (std::size_t start = 0; start < n; start += f) {
    const std::size_t end = std::min(n, start + f);
    portable_shuffle(ids.begin() + static_cast<std::ptrdiff_t>(start), ids.begin() + static_cast<std::ptrdiff_t>(end),
                     rng);
  }
  return RingAssignment(std::move(ids));
}

BlockShuffleReferee::BlockShuffleReferee(double epsilon, std::uint64_t seed) : epsilon_(epsilon), seed_(seed) {
  block_shuffle_length(4, epsilon);  // validates epsilon
}

RingAssignment FixedReferee::assign(std::size_t n) {
  if (assignment_.size() != n) throw std::invalid_argument("fixed assignment has a different size");
  return assignment_;
}

// ---- isolation ----

IsolationResult play_isolation(IsolationPlayer& player, std::size_t k, std::size_t max_rounds,
                               std::uint64_t referee_seed) {
  if (k < 2) throw std::invalid_argument("isolation needs k >= 2");
  Rng rng = make_rng(referee_seed, StreamTag::referee, {k});
  const auto target = static_cast<NodeId>(1 + uniform_below(rng, k));

  IsolationResult result;
  result.target = target;
  auto& transcript = result.transcript;
  transcript.kind = GameKind::isolation;
  player.start(k);
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    const auto guess = player.next_guess();
    if (!guess) {
      transcript.reason = "player gave up";
      return result;
    }
    transcript.rounds_used = round;
    ++result.guesses;
    transcript.log.push_back({"player", "guess " + std::to_string(*guess)});
    if (*guess == target) {
      transcript.win = true;
      transcript.reason = "target guessed";
      transcript.log.push_back({"referee", "yes"});
      return result;
    }
    transcript.log.push_back({"referee", *guess >= 1 && *guess <= k ? "no" : "no (out of range)"});
    player.rejected(*guess);
  }
  transcript.reason = "round budget exhausted";
  return result;
}

void UniformGuessPlayer::start(std::size_t k) {
  k_ = k;
  rng_ = make_rng(seed_, StreamTag::player, {k});
}

std::optional<NodeId> UniformGuessPlayer::next_guess() { return static_cast<NodeId>(1 + uniform_below(rng_, k_)); }

void ExclusionPlayer::start(std::size_t k) {
  order_.resize(k);
  std::iota(order_.begin(), order_.end(), NodeId{1});
  Rng rng = make_rng(seed_, StreamTag::player, {k});
  portable_shuffle(order_.begin(), order_.end(), rng);
  next_ = 0;
}

std::optional<NodeId> ExclusionPlayer::next_guess() {
  if (next_ >= order_.size()) return std::nullopt;
  return order_[next_++];
}

std::optional<NodeId> SequentialGuessPlayer::next_guess() {
  if (next_ > k_) return std::nullopt;
  return next_++;
}

// ---- bit revealing ----

std::string bits_to_string(const Bits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitRevealResult play_bit_revealing(BitRevealPlayer& player, std::size_t k, std::size_t max_rounds,
                                   std::uint64_t referee_seed) {
  if (k < 1) throw std::invalid_argument("bit revealing needs k >= 1");
  BitRevealResult result;
  Rng rng = make_rng(referee_seed, StreamTag::referee, {k});
  result.secret.resize(k);
  for (std::size_t i = 0; i < k; i += 64) {
    const std::uint64_t word = rng();
    for (std::size_t b = 0; b < 64 && i + b < k; ++b) result.secret[i + b] = (word >> b) & 1u;
  }

  auto& transcript = result.transcript;
  transcript.kind = GameKind::bit_reveal;
  player.start(k);
  while (true) {
    BitMove move = player.next_move();
    if (auto* guess = std::get_if<BitGuess>(&move)) {
      transcript.log.push_back({"player", "guess " + bits_to_string(guess->bits)});
      transcript.rounds_used = result.requests;
      if (guess->bits.size() != k) {
        transcript.reason = "guess has length " + std::to_string(guess->bits.size()) + ", expected " +
                            std::to_string(k);
      } else {
        Bits normalized(guess->bits.size());
        std::transform(guess->bits.begin(), guess->bits.end(), normalized.begin(),
                       [](std::uint8_t b) -> std::uint8_t { return b ? 1 : 0; });
        transcript.win = normalized == result.secret;
        transcript.reason = transcript.win ? "exact match" : "mismatch";
      }
      transcript.log.push_back({"referee", transcript.win ? "win" : "lose"});
      return result;
    }
    const NodeId index = std::get<BitRequest>(move).index;
    if (result.requests >= max_rounds) {
      transcript.rounds_used = result.requests;
      transcript.reason = "round budget exhausted";
      return result;
    }
    ++result.requests;
    transcript.log.push_back({"player", "request " + std::to_string(index)});
    if (index >= 1 && index <= k) {
      const std::uint8_t bit = result.secret[index - 1];
      transcript.log.push_back({"referee", "bit " + std::to_string(bit)});
      player.revealed(index, bit);
    } else {
      transcript.log.push_back({"referee", "out of range"});
      player.revealed(index, std::nullopt);
    }
  }
}

void ReadThenGuessPlayer::start(std::size_t k) {
  k_ = k;
  issued_ = 0;
  known_.assign(k, 2);
  rng_ = make_rng(seed_, StreamTag::player, {k});
}

BitMove ReadThenGuessPlayer::next_move() {
  if (issued_ < std::min(reads_, k_)) return BitRequest{static_cast<NodeId>(++issued_)};
  Bits guess(k_);
  for (std::size_t i = 0; i < k_; ++i) guess[i] = known_[i] <= 1 ? known_[i] : static_cast<std::uint8_t>(rng_() >> 63);
  return BitGuess{std::move(guess)};
}

void ReadThenGuessPlayer::revealed(NodeId index, std::optional<std::uint8_t> bit) {
  if (bit && index >= 1 && index <= k_) known_[index - 1] = *bit;
}

}  // namespace dualgraph
