#include "haptibench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "haptibench/error.hpp"
#include "haptibench/signal.hpp"

namespace haptibench::stats {

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), evaluated with modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEpsilon) return h;
  }
  throw Error(ErrorKind::DomainError, "incomplete beta continued fraction did not converge");
}

double sum_squares(std::span<const double> v, double m) {
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss;
}

}  // namespace

double incomplete_beta_regularized(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::DomainError, "incomplete beta requires a, b > 0 and 0 <= x <= 1");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // the fraction converges fast only on this side of the mean
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double tail = 0.5 * incomplete_beta_regularized(df / 2.0, 0.5, df / (df + t * t));
  return t >= 0.0 ? tail : 1.0 - tail;
}

double student_t_cdf(double t, double df) { return student_t_sf(-t, df); }

double f_cdf(double f, double df1, double df2) {
  if (f <= 0.0) return 0.0;
  if (std::isinf(f)) return 1.0;
  return incomplete_beta_regularized(df1 / 2.0, df2 / 2.0, df1 * f / (df1 * f + df2));
}

double f_sf(double f, double df1, double df2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return incomplete_beta_regularized(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

LinRegResult linear_regression(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw Error(ErrorKind::DegenerateDesign, "regression needs >= 2 paired points");
  }
  const double mx = signal::mean(x);
  const double my = signal::mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::DegenerateDesign, "all x values are equal");

  LinRegResult r;
  r.n = n;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    ss_res += e * e;
  }
  if (syy == 0.0) {
    r.constant_response = true;
    r.r_squared = 1.0;
  } else {
    r.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  r.residual_std = n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2)) : 0.0;
  return r;
}

TTestResult two_sample_t_test(std::span<const double> a, std::span<const double> b, bool pooled) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "t-test needs >= 2 values per sample");
  }
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double m1 = signal::mean(a);
  const double m2 = signal::mean(b);
  const double v1 = sum_squares(a, m1) / (n1 - 1.0);
  const double v2 = sum_squares(b, m2) / (n2 - 1.0);

  TTestResult r;
  r.pooled = pooled;
  double se = 0.0;
  if (pooled) {
    r.df = n1 + n2 - 2.0;
    const double sp2 = ((n1 - 1.0) * v1 + (n2 - 1.0) * v2) / r.df;
    se = std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
  } else {
    const double q1 = v1 / n1;
    const double q2 = v2 / n2;
    se = std::sqrt(q1 + q2);
    const double denom = q1 * q1 / (n1 - 1.0) + q2 * q2 / (n2 - 1.0);
    r.df = denom > 0.0 ? (q1 + q2) * (q1 + q2) / denom : n1 + n2 - 2.0;
  }
  const double diff = m1 - m2;
  if (se == 0.0) {
    r.t_stat = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  } else {
    r.t_stat = diff / se;
  }
  r.p_value = std::min(1.0, 2.0 * student_t_sf(std::abs(r.t_stat), r.df));
  return r;
}

FTestResult f_test_variance(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorKind::InsufficientSamples, "F-test needs >= 2 values per sample");
  }
  const double v1 = sum_squares(a, signal::mean(a)) / static_cast<double>(a.size() - 1);
  const double v2 = sum_squares(b, signal::mean(b)) / static_cast<double>(b.size() - 1);
  if (v2 == 0.0) throw Error(ErrorKind::ZeroVariance, "denominator sample has zero variance");
  FTestResult r;
  r.df1 = a.size() - 1;
  r.df2 = b.size() - 1;
  r.f_stat = v1 / v2;
  const double d1 = static_cast<double>(r.df1);
  const double d2 = static_cast<double>(r.df2);
  r.p_value = std::min(1.0, 2.0 * std::min(f_cdf(r.f_stat, d1, d2), f_sf(r.f_stat, d1, d2)));
  return r;
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw Error(ErrorKind::InsufficientGroups, "ANOVA needs >= 2 groups");
  std::size_t total = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorKind::InsufficientGroups, "each ANOVA group needs >= 2 values");
    total += g.size();
    for (double v : g) grand_sum += v;
  }
  const double grand_mean = grand_sum / static_cast<double>(total);
  double ss_between = 0.0, ss_within = 0.0;
  for (const auto& g : groups) {
    const double m = signal::mean(g);
    ss_between += static_cast<double>(g.size()) * (m - grand_mean) * (m - grand_mean);
    ss_within += sum_squares(g, m);
  }
  AnovaResult r;
  r.df_between = groups.size() - 1;
  r.df_within = total - groups.size();
  const double msb = ss_between / static_cast<double>(r.df_between);
  const double msw = ss_within / static_cast<double>(r.df_within);
  if (msw == 0.0) {
    r.f_stat = msb == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    r.f_stat = msb / msw;
  }
  r.p_value = f_sf(r.f_stat, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
  return r;
}

}  // namespace haptibench::stats
