#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Statistical battery: OLS, pooled/Welch t-test, variance-ratio F-test,
// one-way ANOVA. p-values come from the regularized incomplete beta function
// implemented here.
namespace haptibench::stats {

struct LinRegResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double residual_std = 0.0;
  std::size_t n = 0;
  // y was constant: R^2 is reported as 1 by convention.
  bool constant_response = false;
  bool operator==(const LinRegResult&) const = default;
};

/// Ordinary least squares y = intercept + slope * x.
/// Throws DegenerateDesign when n < 2 or all x are equal.
LinRegResult linear_regression(std::span<const double> x, std::span<const double> y);

struct TTestResult {
  double t_stat = 0.0;
  double df = 0.0;  // n1 + n2 - 2 when pooled, Welch-Satterthwaite otherwise
  double p_value = 1.0;  // two-sided
  bool pooled = true;
  bool operator==(const TTestResult&) const = default;
};

/// Two-sample t-test of mean(a) - mean(b). Throws InsufficientSamples when
/// either sample has fewer than 2 values.
TTestResult two_sample_t_test(std::span<const double> a, std::span<const double> b,
                              bool pooled = true);

struct FTestResult {
  double f_stat = 1.0;
  std::size_t df1 = 0;
  std::size_t df2 = 0;
  double p_value = 1.0;  // two-sided
  bool operator==(const FTestResult&) const = default;
};

/// F = var(a) / var(b). Throws ZeroVariance when var(b) == 0.
FTestResult f_test_variance(std::span<const double> a, std::span<const double> b);

struct AnovaResult {
  double f_stat = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  double p_value = 1.0;
  bool operator==(const AnovaResult&) const = default;
};

/// Needs >= 2 groups of >= 2 values each (InsufficientGroups otherwise).
AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

/// I_x(a, b) by continued fraction (modified Lentz). DomainError unless
/// a > 0, b > 0 and x in [0, 1].
double incomplete_beta_regularized(double a, double b, double x);

double student_t_cdf(double t, double df);
/// Upper tail P(T >= t).
double student_t_sf(double t, double df);
double f_cdf(double f, double df1, double df2);
/// Upper tail P(F >= f).
double f_sf(double f, double df1, double df2);

}  // namespace haptibench::stats
