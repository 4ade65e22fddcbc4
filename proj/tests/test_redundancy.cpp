#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdarwin/info.hpp"
#include "qdarwin/redundancy.hpp"

using namespace qdarwin;

namespace {
constexpr double kQuarter = std::numbers::pi / 4;
}

TEST_CASE("redundancy bound") {
  const double mu = bound_mu(0.1);
  CHECK(mu > 0.225);
  CHECK(mu < 0.235);
  CHECK(binary_entropy(std::pow(std::cos(mu / 2), 2)) == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(bound_mu(0.01) < bound_mu(0.1));
  CHECK(bound_mu(1e-9) < 1e-3);
  CHECK_THROWS_AS(bound_mu(0.0), std::invalid_argument);
  CHECK_THROWS_AS(bound_mu(1.0), std::invalid_argument);
}

TEST_CASE("pointer observable with orthogonal records is maximally redundant") {
  const auto r = m_delta_search(ModelParams::uniform(50, kQuarter), ObservableAngle{0.0}, 0.1);
  CHECK(r.status == RedundancyStatus::ok);
  REQUIRE(r.m_delta.has_value());
  CHECK(*r.m_delta == 1);
  CHECK(*r.r_delta == 50.0);
  CHECK(r.i_full == doctest::Approx(1.0));
}

TEST_CASE("conjugate observable needs the whole environment") {
  const auto r =
      m_delta_search(ModelParams::uniform(20, kQuarter), ObservableAngle{std::numbers::pi / 2}, 0.1);
  CHECK(r.status == RedundancyStatus::ok);
  REQUIRE(r.m_delta.has_value());
  CHECK(*r.m_delta == 20);
  CHECK(*r.r_delta == 1.0);
}

TEST_CASE("no interaction means no imprint") {
  const auto r = m_delta_search(ModelParams::uniform(10, 0.0), ObservableAngle{0.0}, 0.1);
  CHECK(r.status == RedundancyStatus::no_imprint);
  CHECK_FALSE(r.m_delta.has_value());
  CHECK(std::string(to_string(r.status)) == "no_imprint");
}

TEST_CASE("search brackets the threshold") {
  const auto params = ModelParams::uniform(30, 0.3);
  const ObservableAngle obs{0.1};
  const auto r = m_delta_search(params, obs, 0.1);
  REQUIRE(r.m_delta.has_value());
  const double threshold = 0.9 * r.i_full;
  for (const auto& [m, bits] : r.curve) {
    if (m >= *r.m_delta) CHECK(bits >= threshold - 1e-9);
    if (m < *r.m_delta) CHECK(bits < threshold);
  }
  bool has_below = false;
  for (const auto& pt : r.curve) has_below |= pt.first + 1 == *r.m_delta;
  CHECK(has_below);
  CHECK(std::is_sorted(r.curve.begin(), r.curve.end()));
}

TEST_CASE("completeness") {
  for (double mu : {-1.2, 0.0, 0.7}) {
    const auto c = completeness(ModelParams::uniform(50, kQuarter), ObservableAngle{mu});
    CHECK(c.ratio == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Small action: the whole environment holds orthogonal conditional records,
  // so I_N equals H(sigma) = H2((1 + gamma sin mu) / 2) with gamma = cos^50(0.1).
  const double gamma = std::pow(std::cos(0.1), 50);
  const auto c = completeness(ModelParams::uniform(50, 0.05), ObservableAngle{std::numbers::pi / 2});
  CHECK(c.h_sigma == doctest::Approx(binary_entropy((1 + gamma) / 2)).epsilon(1e-9));
  CHECK(c.i_n == doctest::Approx(c.h_sigma).epsilon(1e-6));
  CHECK(completeness(ModelParams::uniform(5, 0.0), ObservableAngle{0.3}).i_n < 1e-9);
}

TEST_CASE("fragment information matches the pointer identity") {
  const auto params = ModelParams::uniform(50, kQuarter);
  for (double mu : {0.0, 0.5, 1.0, 1.5}) {
    CHECK(theorem_identity_gap(params, ObservableAngle{mu}, 10) < 1e-6);
  }
  CHECK_THROWS_AS(theorem_identity_gap(params, ObservableAngle{0.2}, 26), std::domain_error);
  CHECK_THROWS_AS(theorem_identity_gap(ModelParams::uniform(50, 0.05), ObservableAngle{0.2}, 1),
                  std::domain_error);
}
