#include <doctest.h>

#include <vector>

#include "etiquette/dist/gmm.hpp"
#include "etiquette/dist/rng.hpp"
#include "etiquette/errors.hpp"
#include "etiquette/estimation/free_flow.hpp"
#include "support/oracles.hpp"

using namespace etiquette;
using estimation::free_flow_link_model;

namespace {

// Jam / synchronized / free phases on one link.
std::vector<double> tri_modal_speeds(std::size_t n, std::uint64_t seed) {
  dist::GmmParams truth;
  truth.weights = {0.25, 0.35, 0.40};
  truth.means = {3.0, 12.0, 29.0};
  truth.variances = {1.0, 1.0, 1.0};
  return dist::gmm_sample(truth, n, seed);
}

}  // namespace

TEST_CASE("the highest-mean component is the free-flow phase") {
  const auto speeds = tri_modal_speeds(6000, 3);
  const auto model = free_flow_link_model("L1", speeds, 20.1);
  CHECK(testsupport::near(model.free_flow_mean, 29.0, 0.5));
  CHECK(model.free_flow_sd > 0.5);
  CHECK(model.free_flow_sd < 2.0);
  REQUIRE(model.hcm_base.has_value());
  CHECK(*model.hcm_base == doctest::Approx(22.3));  // 45 mph limit plus 2.2 m/s
}

TEST_CASE("unimodal links degenerate to the sample mean") {
  // With one tight cluster the three components collapse onto it and the
  // highest-mean one lands at the sample mean. (For wide clusters the
  // quantile-partition EM keeps tail components ~1 sd out, so the sample-mean
  // agreement is only as tight as the cluster itself.)
  dist::Rng rng(8);
  std::vector<double> speeds(2000);
  for (double& v : speeds) v = 27.0 + 0.15 * rng.normal();
  const auto model = free_flow_link_model("L2", speeds, std::nullopt);
  CHECK(testsupport::near(model.free_flow_mean, testsupport::mean_of(speeds), 0.2));
  CHECK(!model.hcm_base.has_value());
}

TEST_CASE("free-flow model floor") {
  std::vector<double> few(10, 20.0);
  CHECK_THROWS_AS(free_flow_link_model("L3", few, std::nullopt),
                  InsufficientDataError);
}
