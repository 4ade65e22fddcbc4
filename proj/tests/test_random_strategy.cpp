#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "qdarwin/random_strategy.hpp"

using namespace qdarwin;

namespace {
constexpr double kQuarter = std::numbers::pi / 4;
}

TEST_CASE("strategies are nested and orthonormal") {
  const auto big = sample_strategy(12, 99);
  const auto small = sample_strategy(5, 99);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(big.bases[k].bloch == small.bases[k].bloch);
    CHECK(big.bases[k].phase == small.bases[k].phase);
  }
  CHECK(big.prefix(5).m() == 5);
  CHECK_NOTHROW(big.measurement().validate());
  CHECK(sample_strategy(5, 100).bases[0].bloch != small.bases[0].bloch);
}

TEST_CASE("random bases are uniform on the Bloch sphere") {
  // chi-square with 9 degrees of freedom; 27.88 is the 0.1% critical value.
  constexpr int bins = 10, draws = 20000;
  std::array<int, bins> z{}, phi{};
  const auto s = sample_strategy(draws, 5);
  for (const auto& b : s.bases) {
    CHECK(std::abs(b.bloch.norm() - 1.0) < 1e-12);
    z[std::min(bins - 1, static_cast<int>((b.bloch.z() + 1) / 2 * bins))]++;
    const double az = std::atan2(b.bloch.y(), b.bloch.x()) + std::numbers::pi;
    phi[std::min(bins - 1, static_cast<int>(az / (2 * std::numbers::pi) * bins))]++;
  }
  auto chi2 = [&](const std::array<int, bins>& h) {
    const double e = static_cast<double>(draws) / bins;
    double c = 0;
    for (int v : h) c += (v - e) * (v - e) / e;
    return c;
  };
  CHECK(chi2(z) < 27.88);
  CHECK(chi2(phi) < 27.88);
}

TEST_CASE("no qubits measured, no information") {
  const auto params = ModelParams::random(10, 0.0, kQuarter, 1);
  const auto r = info_local(params, ObservableAngle{0.0}, sample_strategy(0, 1), ExactMethod{});
  CHECK(r.bits == 0.0);
}

TEST_CASE("measuring along the records") {
  // At a = pi/4 the records are the sigma_x eigenstates.
  const auto params = ModelParams::uniform(4, kQuarter);
  LocalStrategy strat;
  strat.bases.push_back(LocalBasis{Eigen::Vector3d::UnitX(), 0.0});
  CHECK(info_local(params, ObservableAngle{0.0}, strat, ExactMethod{}).bits ==
        doctest::Approx(1.0).epsilon(1e-12));
  strat.bases[0].bloch = Eigen::Vector3d::UnitZ();
  CHECK(info_local(params, ObservableAngle{0.0}, strat, ExactMethod{}).bits < 1e-12);
}

TEST_CASE("system marginal does not depend on the environment measurement") {
  const auto params = ModelParams::random(6, 0.0, kQuarter, 2);
  const BranchState st = build_state(params);
  const auto frag = Fragment::of({0, 2, 5}, 6);
  const ObservableAngle obs{0.6};
  const auto a = local_joint_distribution(st, frag, obs, sample_strategy(3, 1).measurement());
  const auto b = local_joint_distribution(st, frag, obs, sample_strategy(3, 2).measurement());
  CHECK((a.row_marginal() - b.row_marginal()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("measuring more qubits never hurts") {
  const auto params = ModelParams::random(12, 0.0, kQuarter, 8);
  const auto strat = sample_strategy(12, 4);
  double prev = 0.0;
  for (std::size_t m = 0; m <= 12; ++m) {
    const double bits = info_local(params, ObservableAngle{0.3}, strat.prefix(m), ExactMethod{}).bits;
    CHECK(bits >= prev - 1e-12);
    prev = bits;
  }
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
  const auto params = ModelParams::random(20, 0.0, kQuarter, 6);
  const auto strat = sample_strategy(12, 3);
  for (double mu : {0.0, 0.8}) {
    const auto exact = info_local(params, ObservableAngle{mu}, strat, ExactMethod{});
    const auto mc = info_local(params, ObservableAngle{mu}, strat, MonteCarloMethod{20000, 11});
    CHECK(mc.diagnostics.samples == 20000);
    CHECK(mc.diagnostics.stderr_bits > 0.0);
    CHECK(std::abs(mc.bits - exact.bits) < 4 * mc.diagnostics.stderr_bits);
    const auto again = info_local(params, ObservableAngle{mu}, strat, MonteCarloMethod{20000, 11});
    CHECK(again.bits == mc.bits);
  }
}

TEST_CASE("method limits") {
  const auto params = ModelParams::random(30, 0.0, kQuarter, 6);
  CHECK_THROWS_AS(info_local(params, ObservableAngle{0.0}, sample_strategy(21, 1), ExactMethod{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      info_local(params, ObservableAngle{0.0}, sample_strategy(5, 1), MonteCarloMethod{999, 1}),
      std::invalid_argument);
  CHECK_THROWS_AS(info_local(params, ObservableAngle{0.0}, sample_strategy(31, 1), ExactMethod{}),
                  std::invalid_argument);
}

TEST_CASE("curve is identical for any worker count") {
  const auto params = ModelParams::random(25, 0.0, kQuarter, 4);
  const std::vector<double> mus{0.0, 0.7};
  const std::vector<std::size_t> ms{0, 3, 22, 25};
  Fig1cOptions opts;
  opts.replicas = 3;
  opts.mc_samples = 5000;
  const auto one = fig1c_curve(params, mus, ms, opts);
  opts.threads = 3;
  const auto three = fig1c_curve(params, mus, ms, opts);
  REQUIRE(one.size() == three.size());
  CHECK(one.size() == 2 * 4 * 2);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].mean_bits == three[i].mean_bits);
    CHECK(one[i].stderr_bits == three[i].stderr_bits);
    CHECK(one[i].method == three[i].method);
  }
  CHECK(one[0].m == 0);
  CHECK(one[0].mean_bits == 0.0);
  CHECK(one[4].method == "monte_carlo");
}
