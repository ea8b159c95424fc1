#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace dualgraph {

// Domain tags mixed into derived seeds so unrelated streams never coincide.
enum class StreamTag : std::uint64_t {
  broadcast = 0x62636173,
  out_coin = 0x6f757463,
  referee = 0x72656665,
  player = 0x706c6179,
  trial = 0x74726961,
  kappa = 0x6b617070,
  network = 0x6e657477,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based derivation: every label is absorbed through a full avalanche
// round, so (m, 1) and (m, 2) land on unrelated outputs.
constexpr std::uint64_t derive_seed_labels(std::uint64_t master, std::span<const std::uint64_t> labels) noexcept {
  std::uint64_t h = splitmix64(master ^ 0x243f6a8885a308d3ULL);
  std::uint64_t position = 0;
  for (std::uint64_t label : labels) {
    ++position;
    h = splitmix64(h ^ splitmix64(label + position * 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> labels) noexcept {
  return derive_seed_labels(master, std::span<const std::uint64_t>(labels.begin(), labels.size()));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamTag tag,
                                    std::initializer_list<std::uint64_t> labels = {}) noexcept {
  std::uint64_t h = derive_seed(master, {static_cast<std::uint64_t>(tag)});
  std::uint64_t position = 0;
  for (std::uint64_t label : labels) {
    ++position;
    h = splitmix64(h ^ splitmix64(label + position * 0x9e3779b97f4a7c15ULL));
  }
  return h;
}

/// Maps 64 random bits to [0, 1) using the top 53 bits.
constexpr double uniform01(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Resolves a Bernoulli(p) decision from 64 random bits. p <= 0 never fires,
/// p >= 1 always fires.
constexpr bool resolve_coin(std::uint64_t bits, double p) noexcept {
  return uniform01(bits) < p;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, StreamTag tag,
                    std::initializer_list<std::uint64_t> labels = {}) {
  return Rng(derive_seed(master, tag, labels));
}

/// Uniform integer in [0, bound) by rejection; unlike std::uniform_int_distribution
/// the result is identical across standard library implementations.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::uint64_t(0) - (std::uint64_t(0) - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (limit == 0 || x < limit) return x % bound;
  }
}

/// Fisher-Yates shuffle built on uniform_below.
template <typename RandomIt>
void portable_shuffle(RandomIt first, RandomIt last, Rng& rng) {
  const auto count = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = count; i > 1; --i) {
    const std::uint64_t j = uniform_below(rng, i);
    std::swap(first[i - 1], first[j]);
  }
}

}  // namespace dualgraph
