#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

// Test-side oracles, independent of the library's implementation paths.
namespace testsupport {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double m,
                               double b, double fa, double fm, double fb, double whole,
                               double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return detail::adaptive_simpson(f, a, m, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb),
                                  tol, 40);
}

// Kolmogorov-Smirnov statistic of samples against a model CDF.
inline double ks_statistic(std::span<const double> samples,
                           const std::function<double(double)>& cdf) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double model = cdf(sorted[i]);
    d = std::max(d, std::abs(model - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(model - static_cast<double>(i) / n));
  }
  return d;
}

// Absolute-tolerance comparison for CHECK(...) sites.
inline bool near(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol;
}

inline double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

inline double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace testsupport
