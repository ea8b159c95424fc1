#include "dualgraph/adversary.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dualgraph {

std::unique_ptr<Adversary> static_all_edges() {
  return std::make_unique<StaticAdversary>(EdgeChoice::all(), "static_all");
}

std::unique_ptr<Adversary> static_no_edges() {
  return std::make_unique<StaticAdversary>(EdgeChoice::none(), "static_none");
}

double expected_broadcasters(std::span<const double> declared) {
  return std::accumulate(declared.begin(), declared.end(), 0.0);
}

ThresholdAdversary::ThresholdAdversary(double c) : c_(c) {
  if (!(c > 0.0)) throw std::invalid_argument("threshold constant c must be positive");
}

bool ThresholdAdversary::saturates(std::span<const double> declared, std::size_t n) const {
  if (n < 2) return false;
  return expected_broadcasters(declared) >= c_ * std::log2(static_cast<double>(n));
}

EdgeChoice ThresholdAdversary::choose(const AdversaryView& view) const {
  return saturates(view.declared, view.graph.size()) ? EdgeChoice::all() : EdgeChoice::none();
}

std::unique_ptr<Adversary> threshold_adversary(double c) {
  return std::make_unique<ThresholdAdversary>(c);
}

double silencing_threshold_constant(double confidence_exponent) {
  // (e b)^(log2 n) <= n^-a  <=>  log2(e b) <= -a.
  return std::exp2(-confidence_exponent) / std::exp(1.0);
}

}  // namespace dualgraph
