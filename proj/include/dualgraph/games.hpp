#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dualgraph/graph.hpp"
#include "dualgraph/seed.hpp"

namespace dualgraph {

using Color = std::uint32_t;

/// A total map from ordered distinct triples over [n] to {1, 2, 3}, held
/// lazily as a function. Evaluation validates both the triple and the value.
class TripleColoring {
 public:
  using Fn = std::function<Color(NodeId, NodeId, NodeId)>;

  TripleColoring(std::size_t n, Fn fn, std::uint64_t seed = 0);

  Color operator()(NodeId ccw, NodeId self, NodeId cw) const;
  std::size_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  /// n! / (n - 3)!
  std::uint64_t domain_size() const;

  static TripleColoring constant(std::size_t n, Color color);

 private:
  std::size_t n_;
  Fn fn_;
  std::uint64_t seed_;
};

/// Bijection from ring positions u_1..u_n to ids; u_{i+1} is clockwise of
/// u_i and u_1 is clockwise of u_n.
class RingAssignment {
 public:
  explicit RingAssignment(std::vector<NodeId> ids);
  static RingAssignment identity(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  /// Id at 1-based position.
  NodeId at(std::size_t position) const { return ids_.at(position - 1); }
  NodeId clockwise(std::size_t position) const;
  NodeId counterclockwise(std::size_t position) const;
  /// 1-based position of an id.
  std::size_t position_of(NodeId id) const { return positions_.at(id - 1); }
  const std::vector<NodeId>& ids() const { return ids_; }
  /// The ring as a graph on ids.
  Graph ring() const;

  friend bool operator==(const RingAssignment& a, const RingAssignment& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<NodeId> ids_;
  std::vector<std::size_t> positions_;
};

enum class GameKind { ring_coloring, isolation, bit_reveal };
std::string to_string(GameKind kind);

struct Exchange {
  std::string from;  // "player" or "referee"
  std::string message;
};

struct GameTranscript {
  GameKind kind = GameKind::isolation;
  std::vector<Exchange> log;
  bool win = false;
  std::size_t rounds_used = 0;
  std::string reason;
};

// ---- selective ring coloring ----

class RingColoringPlayer {
 public:
  virtual ~RingColoringPlayer() = default;
  virtual std::string name() const = 0;
  /// Round 1: the committed coloring, knowing only n.
  virtual TripleColoring commit(std::size_t n) = 0;
  /// Round 3: the exception set, after seeing the assignment.
  virtual IdSet exceptions(const RingAssignment& assignment) = 0;
};

class RingReferee {
 public:
  virtual ~RingReferee() = default;
  virtual RingAssignment assign(std::size_t n) = 0;
};

using ExceptionBudget = std::function<std::size_t(std::size_t n)>;

struct RingVerdict {
  bool win = false;
  std::string reason;
  /// Adjacent surviving position pairs (i, i+1 mod n) with equal colors.
  std::vector<std::pair<std::size_t, std::size_t>> conflicts;
  std::vector<Color> colors;  // by position
};

/// Colors u_i with C(l(u_i ccw), l(u_i), l(u_i cw)), removes the exception
/// ids and reports surviving monochromatic ring edges.
RingVerdict adjudicate_ring_coloring(const TripleColoring& coloring, const RingAssignment& assignment,
                                     const IdSet& exceptions, std::size_t budget);

struct RingGameResult {
  GameTranscript transcript;
  RingAssignment assignment;
  IdSet exceptions;
  RingVerdict verdict;
};

RingGameResult play_selective_ring_coloring(RingColoringPlayer& player, RingReferee& referee, std::size_t n,
                                            const ExceptionBudget& budget);

/// f(n) = max(2, floor(n^(eps/5))), with the floor corrected for rounding.
std::size_t block_shuffle_length(std::size_t n, double epsilon);

/// Identity assignment with ids permuted uniformly inside consecutive
/// blocks of block_shuffle_length positions.
RingAssignment block_shuffle_referee(std::size_t n, double epsilon, std::uint64_t seed);

class BlockShuffleReferee final : public RingReferee {
 public:
  BlockShuffleReferee(double epsilon, std::uint64_t seed);
  RingAssignment assign(std::size_t n) override { return block_shuffle_referee(n, epsilon_, seed_); }

 private:
  double epsilon_;
  std::uint64_t seed_;
};

class FixedReferee final : public RingReferee {
 public:
  explicit FixedReferee(RingAssignment assignment) : assignment_(std::move(assignment)) {}
  RingAssignment assign(std::size_t n) override;

 private:
  RingAssignment assignment_;
};

/// Commits a fixed coloring and a fixed exception set.
class FixedRingPlayer final : public RingColoringPlayer {
 public:
  FixedRingPlayer(TripleColoring coloring, IdSet exceptions)
      : coloring_(std::move(coloring)), exceptions_(std::move(exceptions)) {}
  std::string name() const override { return "fixed"; }
  TripleColoring commit(std::size_t) override { return coloring_; }
  IdSet exceptions(const RingAssignment&) override { return exceptions_; }

 private:
  TripleColoring coloring_;
  IdSet exceptions_;
};

// ---- k-isolation ----

class IsolationPlayer {
 public:
  virtual ~IsolationPlayer() = default;
  virtual std::string name() const = 0;
  virtual void start(std::size_t k) = 0;
  /// Next guess; nullopt means the player gives up.
  virtual std::optional<NodeId> next_guess() = 0;
  /// The referee's "no".
  virtual void rejected(NodeId) {}
};

struct IsolationResult {
  GameTranscript transcript;
  NodeId target = 0;
  std::size_t guesses = 0;
};

/// Target drawn uniformly from [k] on the referee's own stream.
IsolationResult play_isolation(IsolationPlayer& player, std::size_t k, std::size_t max_rounds,
                               std::uint64_t referee_seed);

/// Uniform guesses with replacement.
class UniformGuessPlayer final : public IsolationPlayer {
 public:
  explicit UniformGuessPlayer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "uniform"; }
  void start(std::size_t k) override;
  std::optional<NodeId> next_guess() override;

 private:
  std::uint64_t seed_;
  std::size_t k_ = 0;
  Rng rng_;
};

/// Uniform guesses among the ids not yet rejected.
class ExclusionPlayer final : public IsolationPlayer {
 public:
  explicit ExclusionPlayer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "exclusion"; }
  void start(std::size_t k) override;
  std::optional<NodeId> next_guess() override;

 private:
  std::uint64_t seed_;
  std::vector<NodeId> order_;
  std::size_t next_ = 0;
};

/// Repeats the same guess forever.
class ConstantGuessPlayer final : public IsolationPlayer {
 public:
  explicit ConstantGuessPlayer(NodeId guess) : guess_(guess) {}
  std::string name() const override { return "constant"; }
  void start(std::size_t) override {}
  std::optional<NodeId> next_guess() override { return guess_; }

 private:
  NodeId guess_;
};

/// Guesses 1, 2, 3, ...
class SequentialGuessPlayer final : public IsolationPlayer {
 public:
  std::string name() const override { return "sequential"; }
  void start(std::size_t k) override { k_ = k, next_ = 1; }
  std::optional<NodeId> next_guess() override;

 private:
  std::size_t k_ = 0;
  NodeId next_ = 1;
};

// ---- k-bit revealing ----

using Bits = std::vector<std::uint8_t>;

struct BitRequest {
  NodeId index = 0;  // 1-based
};
struct BitGuess {
  Bits bits;
};
using BitMove = std::variant<BitRequest, BitGuess>;

class BitRevealPlayer {
 public:
  virtual ~BitRevealPlayer() = default;
  virtual std::string name() const = 0;
  virtual void start(std::size_t k) = 0;
  virtual BitMove next_move() = 0;
  /// The referee's answer to the last request; nullopt for an index outside [k].
  virtual void revealed(NodeId index, std::optional<std::uint8_t> bit) = 0;
};

struct BitRevealResult {
  GameTranscript transcript;
  Bits secret;
  std::size_t requests = 0;
};

/// kappa drawn uniformly from the referee's own stream. A guess is allowed
/// after any number of requests (including none); requests beyond
/// max_rounds lose.
BitRevealResult play_bit_revealing(BitRevealPlayer& player, std::size_t k, std::size_t max_rounds,
                                   std::uint64_t referee_seed);

/// Reads bits 1..t, then guesses with unread bits uniform.
class ReadThenGuessPlayer final : public BitRevealPlayer {
 public:
  ReadThenGuessPlayer(std::size_t reads, std::uint64_t seed) : reads_(reads), seed_(seed) {}
  std::string name() const override { return "read-then-guess"; }
  void start(std::size_t k) override;
  BitMove next_move() override;
  void revealed(NodeId index, std::optional<std::uint8_t> bit) override;

 private:
  std::size_t reads_;
  std::uint64_t seed_;
  std::size_t k_ = 0;
  std::size_t issued_ = 0;
  Bits known_;
  Rng rng_;
};

class FixedGuessPlayer final : public BitRevealPlayer {
 public:
  explicit FixedGuessPlayer(Bits guess) : guess_(std::move(guess)) {}
  std::string name() const override { return "fixed-guess"; }
  void start(std::size_t) override {}
  BitMove next_move() override { return BitGuess{guess_}; }
  void revealed(NodeId, std::optional<std::uint8_t>) override {}

 private:
  Bits guess_;
};

std::string bits_to_string(const Bits& bits);

}  // namespace dualgraph
