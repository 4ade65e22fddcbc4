#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdarwin/info.hpp"
#include "qdarwin/random_strategy.hpp"

using namespace qdarwin;

TEST_CASE("entropies") {
  CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
  CHECK(shannon_entropy(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(shannon_entropy(std::vector<double>{0.6, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy(std::vector<double>{1.1, -0.1}), std::invalid_argument);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0 + 1e-13) == 0.0);
  CHECK_THROWS(binary_entropy(1.1));
}

TEST_CASE("joint distributions") {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.0, 0.0, 0.5;
  CHECK(mutual_information(JointDistribution(p)) == doctest::Approx(1.0));
  p << 0.25, 0.25, 0.25, 0.25;
  CHECK(mutual_information(JointDistribution(p)) == doctest::Approx(0.0));
  p << 0.3, 0.3, 0.3, 0.3;
  CHECK_THROWS_AS(JointDistribution{p}, std::invalid_argument);
  p << 0.5, -1e-13, 0.0, 0.5 + 1e-13;
  CHECK(JointDistribution(p).p()(0, 1) == 0.0);
  p << 0.5, -1e-6, 0.0, 0.5 + 1e-6;
  CHECK_THROWS_AS(JointDistribution{p}, std::invalid_argument);
}

TEST_CASE("trivial measurement carries no information") {
  const auto params = ModelParams::random(5, 0.0, std::numbers::pi / 4, 1);
  const EffectiveState eff = reduce(build_state(params), Fragment::first(2));
  const auto joint = joint_distribution(eff, ObservableAngle{0.2}, SpanPovm::trivial());
  CHECK(mutual_information(joint) < 1e-12);
}

TEST_CASE("remainder column appears only when the span is smaller than the fragment") {
  const auto params = ModelParams::random(5, 0.1, 0.7, 1);
  const BranchState st = build_state(params);
  const SpanPovm meas = SpanPovm::projective(0.4, 1.1);
  CHECK(joint_distribution(reduce(st, Fragment::first(1)), ObservableAngle{0.3}, meas).cols() == 2);
  const auto j2 = joint_distribution(reduce(st, Fragment::first(2)), ObservableAngle{0.3}, meas);
  CHECK(j2.cols() == 3);
  CHECK(j2.col_labels().back() == "remainder");
  CHECK(std::abs(j2.col_marginal()[2]) < 1e-12);
}

TEST_CASE("local product measurements are rejected by the span path") {
  const auto params = ModelParams::uniform(3, 0.5);
  const EffectiveState eff = reduce(build_state(params), Fragment::first(1));
  const LocalProduct meas{{Mat2c::Identity()}};
  CHECK_THROWS_AS(joint_distribution(eff, ObservableAngle{0.0}, meas), std::invalid_argument);
}

TEST_CASE("coarse-graining outcomes never adds information") {
  const auto params = ModelParams::random(6, 0.0, std::numbers::pi / 4, 4);
  const EffectiveState eff = reduce(build_state(params), Fragment::first(3));
  const ObservableAngle obs{0.4};
  std::vector<Eigen::Vector3d> dirs;
  for (int j = 0; j < 3; ++j) {
    const double t = 2 * std::numbers::pi * j / 3;
    dirs.emplace_back(std::cos(t), 0.0, std::sin(t));
  }
  const SpanPovm trine = SpanPovm::from_bloch({2.0 / 3, 2.0 / 3, 2.0 / 3}, dirs);
  const SpanPovm merged{{trine.elements[0] + trine.elements[1], trine.elements[2]}};
  CHECK(mutual_information(joint_distribution(eff, obs, merged)) <=
        mutual_information(joint_distribution(eff, obs, trine)) + 1e-12);
}

TEST_CASE("span POVMs are validated") {
  CHECK_NOTHROW(SpanPovm::projective(1.0, 2.0).validate());
  SpanPovm bad = SpanPovm::projective(1.0, 2.0);
  bad.elements[0] *= 1.01;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SpanPovm negative{{2 * Mat2c::Identity(), -Mat2c::Identity()}};
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("information via the pointer observable") {
  CHECK(info_via_pointer(ObservableAngle{0.0}, 0.0) == doctest::Approx(1.0));
  CHECK(info_via_pointer(ObservableAngle{std::numbers::pi / 2}, 0.0) < 1e-12);
  const double expected = 1.0 - binary_entropy(std::pow(std::cos(0.25), 2));
  CHECK(info_via_pointer(ObservableAngle{0.5}, 0.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(info_via_pointer(ObservableAngle{0.5}, 0.0) == doctest::Approx(0.667).epsilon(1e-3));
  // Measuring the pointer first removes all coherence, so gamma drops out.
  for (double g : {0.1, 0.5, 0.9, 1.0}) {
    CHECK(info_via_pointer(ObservableAngle{0.5}, g) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS(info_via_pointer(ObservableAngle{0.5}, 1.5));
}

TEST_CASE("observable entropy of the decohered system") {
  CHECK(observable_entropy(ObservableAngle{0.3}, system_state(0.0)) == doctest::Approx(1.0));
  CHECK(observable_entropy(ObservableAngle{std::numbers::pi / 2}, system_state(1.0)) < 1e-12);
  const double g = 0.6;
  CHECK(observable_entropy(ObservableAngle{std::numbers::pi / 2}, system_state(g)) ==
        doctest::Approx(binary_entropy((1 + g) / 2)));
}
