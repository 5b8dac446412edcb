#include <doctest.h>

#include <algorithm>
#include <vector>

#include "etiquette/dist/gmm.hpp"
#include "etiquette/dist/rng.hpp"
#include "etiquette/errors.hpp"
#include "support/oracles.hpp"

using namespace etiquette::dist;

namespace {

std::vector<double> three_cluster_sample(std::size_t n, std::uint64_t seed) {
  GmmParams truth;
  truth.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  truth.means = {8.0, 15.0, 30.0};
  truth.variances = {1.0, 1.0, 1.0};
  return gmm_sample(truth, n, seed);
}

}  // namespace

TEST_CASE("em recovers well-separated clusters") {
  const auto samples = three_cluster_sample(30000, 11);
  const auto fit = gmm_fit_em(samples);
  std::vector<double> means = fit.params.means;
  std::sort(means.begin(), means.end());
  CHECK(testsupport::near(means[0], 8.0, 0.2));
  CHECK(testsupport::near(means[1], 15.0, 0.2));
  CHECK(testsupport::near(means[2], 30.0, 0.2));
  CHECK(fit.params.highest_mean_component() ==
        static_cast<std::size_t>(std::max_element(fit.params.means.begin(),
                                                  fit.params.means.end()) -
                                 fit.params.means.begin()));
}

TEST_CASE("em log-likelihood is monotone non-decreasing") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto samples = three_cluster_sample(5000, seed);
    const auto fit = gmm_fit_em(samples);
    for (std::size_t i = 1; i < fit.log_likelihood_trace.size(); ++i) {
      CHECK(fit.log_likelihood_trace[i] >= fit.log_likelihood_trace[i - 1] - 1e-9);
    }
  }
}

TEST_CASE("single-cluster data degenerates gracefully") {
  Rng rng(5);
  std::vector<double> samples(4000);
  for (double& x : samples) x = 20.0 + 0.7 * rng.normal();
  const auto fit = gmm_fit_em(samples);
  // Components collapse onto the one cluster; the mixture mean is exact.
  CHECK(fit.params.mixture_mean() ==
        doctest::Approx(testsupport::mean_of(samples)).epsilon(1e-6));
  for (double m : fit.params.means) CHECK(testsupport::near(m, 20.0, 1.0));
}

TEST_CASE("em floors and validation") {
  std::vector<double> few(25, 1.0);
  CHECK_THROWS_AS(gmm_fit_em(few), etiquette::InsufficientDataError);
  std::vector<double> flat(100, 2.0);
  CHECK_THROWS_AS(gmm_fit_em(flat), etiquette::DegenerateDataError);
  // Variance floor keeps all components positive even under near-collapse.
  const auto samples = three_cluster_sample(600, 17);
  const auto fit = gmm_fit_em(samples);
  for (double v : fit.params.variances) CHECK(v > 0.0);
  double weight_sum = 0.0;
  for (double w : fit.params.weights) weight_sum += w;
  CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
}
