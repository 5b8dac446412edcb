#include <doctest.h>

#include <cmath>
#include <vector>

#include "etiquette/dist/empirical.hpp"
#include "etiquette/dist/exponential.hpp"
#include "etiquette/dist/laplace.hpp"
#include "etiquette/dist/lognormal.hpp"
#include "etiquette/errors.hpp"
#include "support/oracles.hpp"

using namespace etiquette::dist;
using testsupport::near;

TEST_CASE("lognormal arithmetic-moment parameterization") {
  const auto hw = lognormal_from_arith_moments(1.42, 0.08);
  CHECK(near(std::exp(hw.log_mu), 1.39, 0.01));  // median
  const auto local = lognormal_from_arith_moments(2.07, 0.18);
  CHECK(near(std::exp(local.log_mu), 2.03, 0.01));

  // Round-trip of the moment maps is exact to 1e-9 relative.
  const auto back = lognormal_from_log_moments(hw.log_mu, hw.log_sigma);
  CHECK(back.arith_mean == doctest::Approx(1.42).epsilon(1e-9));
  CHECK(back.arith_var == doctest::Approx(0.08).epsilon(1e-9));

  const auto degenerate = lognormal_from_arith_moments(5.0, 0.0);
  CHECK(degenerate.log_sigma == 0.0);
  for (double p : {0.01, 0.5, 0.99}) {
    CHECK(lognormal_quantile(degenerate, p) == doctest::Approx(5.0).epsilon(1e-14));
  }

  CHECK_THROWS_AS(lognormal_from_arith_moments(-1.0, 0.1), etiquette::DomainError);
  CHECK_THROWS_AS(lognormal_from_arith_moments(1.0, -0.1), etiquette::DomainError);
}

TEST_CASE("lognormal quantiles reproduce the published headway percentiles") {
  const auto hw = lognormal_from_arith_moments(1.42, 0.08);
  CHECK(near(lognormal_quantile(hw, 0.25), 1.21, 0.01));
  CHECK(near(lognormal_quantile(hw, 0.50), 1.39, 0.01));
  CHECK(near(lognormal_quantile(hw, 0.75), 1.60, 0.01));
  const auto local = lognormal_from_arith_moments(2.07, 0.18);
  CHECK(near(lognormal_quantile(local, 0.25), 1.77, 0.01));
  CHECK(near(lognormal_quantile(local, 0.50), 2.03, 0.01));
  CHECK(near(lognormal_quantile(local, 0.75), 2.33, 0.01));
}

TEST_CASE("lognormal fit recovers arithmetic moments from samples") {
  const auto truth = lognormal_from_arith_moments(1.42, 0.08);
  const auto samples = lognormal_sample(truth, 100000, 99);
  const auto fit = lognormal_fit(samples);
  CHECK(fit.arith_mean == doctest::Approx(1.42).epsilon(0.01));
  CHECK(fit.arith_var == doctest::Approx(0.08).epsilon(0.05));
  CHECK_THROWS_AS(lognormal_fit(std::vector<double>{1.0, -2.0, 3.0}), etiquette::DomainError);
}

TEST_CASE("laplace fit and density") {
  const auto p = laplace_fit(std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(p.mu == 0.0);
  CHECK(p.lambda == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(laplace_pdf(p, p.mu) == doctest::Approx(p.lambda / 2.0).epsilon(1e-12));

  // Even-count median averages the central order statistics.
  const auto even = laplace_fit(std::vector<double>{4.0, 1.0, 2.0, 8.0});
  CHECK(even.mu == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(laplace_fit(std::vector<double>{2.0, 2.0, 2.0}), etiquette::DegenerateDataError);
  CHECK_THROWS_AS(laplace_fit(std::vector<double>{1.0}), etiquette::InsufficientDataError);
}

TEST_CASE("laplace round-trip against the reference lane-change parameters") {
  const LaplaceParams truth{16.537, -0.0120};
  const auto samples = laplace_sample(truth, 100000, 5150);
  const auto fit = laplace_fit(samples);
  CHECK(fit.lambda == doctest::Approx(truth.lambda).epsilon(0.02));
  CHECK(near(fit.mu, truth.mu, 0.02 * std::abs(truth.mu) + 5e-4));
  const double d = testsupport::ks_statistic(
      samples, [&](double x) { return laplace_cdf(truth, x); });
  CHECK(d < 0.01);
}

TEST_CASE("exponential fit and quantiles") {
  CHECK(exponential_fit(std::vector<double>{1.0, 2.0, 3.0}).mu == doctest::Approx(2.0));
  CHECK_THROWS_AS(exponential_fit(std::vector<double>{1.0, 0.0}), etiquette::DomainError);

  const ExponentialParams ttc_recip{0.0376};
  const double q70 = exponential_quantile(ttc_recip, 0.70);
  CHECK(q70 == doctest::Approx(0.04527).epsilon(1e-3));
  CHECK(near(1.0 / q70, 22.1, 0.1));  // back in TTC terms
  CHECK(exponential_quantile(ttc_recip, 0.0) == 0.0);
  CHECK_THROWS_AS(exponential_quantile(ttc_recip, 1.0), etiquette::DomainError);

  const auto samples = exponential_sample(ttc_recip, 100000, 64);
  CHECK(exponential_fit(samples).mu == doctest::Approx(0.0376).epsilon(0.02));
}

TEST_CASE("empirical percentile uses the (n-1)p+1 rank convention") {
  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[static_cast<std::size_t>(i)] = i + 1;
  CHECK(empirical_percentile(grid, 0.025) == doctest::Approx(3.475).epsilon(1e-12));
  CHECK(empirical_percentile(grid, 0.0) == 1.0);
  CHECK(empirical_percentile(grid, 1.0) == 100.0);
  const std::vector<double> single{5.0};
  for (double p : {0.0, 0.3, 1.0}) CHECK(empirical_percentile(single, p) == 5.0);
  CHECK_THROWS_AS(empirical_percentile(std::vector<double>{}, 0.5), etiquette::DomainError);
  CHECK_THROWS_AS(empirical_percentile(single, 1.5), etiquette::DomainError);
}
