#pragma once

#include <cstddef>
#include <span>

namespace dualgraph {

struct Interval {
  double low = 0.0;
  double high = 0.0;
  double half_width() const { return (high - low) / 2.0; }
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);

struct TTest {
  double statistic = 0.0;
  double p_value = 1.0;  // one-sided
};

/// One-sample t-test. `greater` tests H1: mu > mu0, otherwise H1: mu < mu0.
TTest one_sided_t_test(std::span<const double> xs, double mu0, bool greater);

/// Student t CDF with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
LinearFit least_squares(std::span<const double> xs, std::span<const double> ys);

}  // namespace dualgraph
