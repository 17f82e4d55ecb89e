#include "oracle.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

namespace oracle {

double mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / v.size());
}

double sample_var(const std::vector<double>& v) {
  const long double m = mean(v);
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(ss / (v.size() - 1));
}

Line ols(const std::vector<double>& x, const std::vector<double>& y) {
  const long double n = x.size();
  long double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += (long double)x[i] * x[i];
    sxy += (long double)x[i] * y[i];
    syy += (long double)y[i] * y[i];
  }
  const long double cxx = sxx - sx * sx / n;
  const long double cxy = sxy - sx * sy / n;
  const long double cyy = syy - sy * sy / n;
  const long double b = cxy / cxx;
  const long double a = (sy - b * sx) / n;
  const long double r2 = cyy == 0 ? 1.0L : cxy * cxy / (cxx * cyy);
  return {static_cast<double>(b), static_cast<double>(a), static_cast<double>(r2)};
}

Test pooled_t(const std::vector<double>& a, const std::vector<double>& b) {
  const double n1 = a.size(), n2 = b.size();
  const double df = n1 + n2 - 2;
  const double sp2 = ((n1 - 1) * sample_var(a) + (n2 - 1) * sample_var(b)) / df;
  const double t = (mean(a) - mean(b)) / std::sqrt(sp2 * (1 / n1 + 1 / n2));
  boost::math::students_t dist(df);
  const double p = 2 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return {t, df, 0, std::min(1.0, p)};
}

Test variance_f(const std::vector<double>& a, const std::vector<double>& b) {
  const double f = sample_var(a) / sample_var(b);
  const double d1 = a.size() - 1.0, d2 = b.size() - 1.0;
  boost::math::fisher_f dist(d1, d2);
  const double lower = boost::math::cdf(dist, f);
  const double upper = boost::math::cdf(boost::math::complement(dist, f));
  return {f, d1, d2, std::min(1.0, 2 * std::min(lower, upper))};
}

Test anova(const std::vector<std::vector<double>>& groups) {
  long double grand = 0;
  std::size_t n = 0;
  for (const auto& g : groups) {
    for (double x : g) grand += x;
    n += g.size();
  }
  grand /= n;
  long double ssb = 0, ssw = 0;
  for (const auto& g : groups) {
    const long double m = mean(g);
    ssb += g.size() * (m - grand) * (m - grand);
    for (double x : g) ssw += (x - m) * (x - m);
  }
  const double d1 = groups.size() - 1.0, d2 = n - groups.size();
  const double f = static_cast<double>((ssb / d1) / (ssw / d2));
  boost::math::fisher_f dist(d1, d2);
  return {f, d1, d2, boost::math::cdf(boost::math::complement(dist, f))};
}

double ibeta_simpson(double a, double b, double x, int intervals) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  if (intervals % 2) ++intervals;
  const double h = x / intervals;
  auto f = [&](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); };
  long double s = f(0) + f(x);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(i * h);
  const double beta = std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  return static_cast<double>(s * h / 3 / beta);
}

double ibeta_binomial(int a, int b, double x) {
  const int n = a + b - 1;
  long double sum = 0;
  for (int j = a; j <= n; ++j) {
    long double c = 1;
    for (int k = 1; k <= j; ++k) c = c * (n - j + k) / k;
    sum += c * std::pow((long double)x, j) * std::pow(1.0L - x, n - j);
  }
  return static_cast<double>(sum);
}

}  // namespace oracle
