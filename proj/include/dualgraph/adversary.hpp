#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dualgraph/model.hpp"

namespace dualgraph {

enum class AdversaryClass { static_choice, online_adaptive, offline_adaptive };

/// What the engine hands an adversary before it picks round `round`'s edges.
/// `realized` is null for static and online adversaries: the engine consults
/// them before drawing the round's coins.
struct AdversaryView {
  const DualGraph& graph;
  Round round;
  std::span<const RoundTranscript> history;
  std::span<const double> declared;
  const std::vector<Broadcast>* realized = nullptr;
  Round coins_drawn_through = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual AdversaryClass adversary_class() const = 0;
  virtual EdgeChoice choose(const AdversaryView& view) const = 0;
  virtual std::string name() const = 0;
};

/// Same subset every round.
class StaticAdversary final : public Adversary {
 public:
  explicit StaticAdversary(EdgeChoice fixed, std::string label = "static")
      : fixed_(std::move(fixed)), label_(std::move(label)) {}

  AdversaryClass adversary_class() const override { return AdversaryClass::static_choice; }
  EdgeChoice choose(const AdversaryView&) const override { return fixed_; }
  std::string name() const override { return label_; }

 private:
  EdgeChoice fixed_;
  std::string label_;
};

std::unique_ptr<Adversary> static_all_edges();
std::unique_ptr<Adversary> static_no_edges();

/// Sum of declared broadcast probabilities, i.e. E[B_r].
double expected_broadcasters(std::span<const double> declared);

/// Online adaptive: all of E' \ E when E[B_r] >= c * log2(n), otherwise none.
class ThresholdAdversary final : public Adversary {
 public:
  explicit ThresholdAdversary(double c);

  AdversaryClass adversary_class() const override { return AdversaryClass::online_adaptive; }
  EdgeChoice choose(const AdversaryView& view) const override;
  std::string name() const override { return "threshold"; }

  double c() const { return c_; }
  bool saturates(std::span<const double> declared, std::size_t n) const;

 private:
  double c_;
};

std::unique_ptr<Adversary> threshold_adversary(double c);

/// Smallest threshold constant b for which E[B_r] < b log2 n keeps
/// Pr[B_r > log2 n] <= n^-confidence (multiplicative Chernoff tail
/// (e mu / x)^x with x = log2 n).
double silencing_threshold_constant(double confidence_exponent = 1.0);

/// Wrappers for ad-hoc strategies (tests, experiments).
class FunctionAdversary final : public Adversary {
 public:
  using Strategy = std::function<EdgeChoice(const AdversaryView&)>;
  FunctionAdversary(AdversaryClass cls, Strategy strategy, std::string label)
      : cls_(cls), strategy_(std::move(strategy)), label_(std::move(label)) {}

  AdversaryClass adversary_class() const override { return cls_; }
  EdgeChoice choose(const AdversaryView& view) const override { return strategy_(view); }
  std::string name() const override { return label_; }

 private:
  AdversaryClass cls_;
  Strategy strategy_;
  std::string label_;
};

}  // namespace dualgraph
