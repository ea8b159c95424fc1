#include "dualgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dualgraph {

namespace {

// Continued fraction for the regularized incomplete beta (Numerical Recipes form).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

double regularized_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

}  // namespace

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  if (successes > trials) throw std::invalid_argument("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double spread = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - spread), std::min(1.0, center + spread)};
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double student_t_cdf(double t, double dof) {
  if (dof <= 0) throw std::invalid_argument("degrees of freedom must be positive");
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * regularized_beta(dof / 2.0, 0.5, x);
  return t >= 0 ? 1.0 - tail : tail;
}

TTest one_sided_t_test(std::span<const double> xs, double mu0, bool greater) {
  if (xs.size() < 2) throw std::invalid_argument("t-test needs at least two samples");
  const double m = mean(xs);
  const double s = stddev(xs);
  const double dof = static_cast<double>(xs.size() - 1);
  TTest result;
  if (s == 0.0) {
    const bool supports = greater ? m > mu0 : m < mu0;
    result.statistic = m == mu0 ? 0.0 : (m > mu0 ? INFINITY : -INFINITY);
    result.p_value = supports ? 0.0 : 1.0;
    if (m == mu0) result.p_value = 0.5;
    return result;
  }
  result.statistic = (m - mu0) / (s / std::sqrt(static_cast<double>(xs.size())));
  const double cdf = student_t_cdf(result.statistic, dof);
  result.p_value = greater ? 1.0 - cdf : cdf;
  return result;
}

LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("least squares needs >= 2 paired points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("least squares needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace dualgraph
