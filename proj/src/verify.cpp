#include "qdarwin/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qdarwin/info.hpp"
#include "qdarwin/oracle.hpp"
#include "qdarwin/random_strategy.hpp"
#include "qdarwin/rng.hpp"

namespace qdarwin {

namespace {

struct Instance {
  ModelParams params;
  Fragment frag;
  ObservableAngle obs;
  SpanPovm povm;
  std::uint64_t strategy_seed = 0;
};

Eigen::Vector3d random_direction(Rng& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

// Random orthogonal pair, or a trine rotated to a random orientation.
SpanPovm random_povm(Rng& rng) {
  const Eigen::Vector3d n = random_direction(rng);
  if (rng.below(2) == 0) return SpanPovm::projective(std::acos(n.z()), std::atan2(n.y(), n.x()));
  Eigen::Vector3d u = n.cross(Eigen::Vector3d::UnitX());
  if (u.norm() < 1e-3) u = n.cross(Eigen::Vector3d::UnitY());
  u.normalize();
  const Eigen::Vector3d v = n.cross(u);
  std::vector<Eigen::Vector3d> dirs;
  for (int j = 0; j < 3; ++j) {
    const double t = 2 * std::numbers::pi * j / 3;
    dirs.push_back(std::cos(t) * u + std::sin(t) * v);
  }
  return SpanPovm::from_bloch({2.0 / 3, 2.0 / 3, 2.0 / 3}, dirs);
}

Instance draw(const VerifyOptions& options, std::size_t index) {
  Rng rng(derive_seed(options.seed, SeedStream::verify, index));
  Instance inst;
  const std::size_t n = 1 + rng.below(options.max_env);
  inst.params.seed = options.seed;
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t pin = rng.below(8);
    const double a = rng.uniform(0.0, std::numbers::pi / 4);
    inst.params.actions.push_back(pin == 0 ? 0.0 : pin == 1 ? std::numbers::pi / 4 : a);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t k = n; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
  order.resize(rng.below(n + 1));
  inst.frag = Fragment::of(order, n);
  inst.obs.mu = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
  inst.povm = random_povm(rng);
  inst.strategy_seed = rng.next();
  return inst;
}

void record(VerifyCheck& check, double err) {
  check.max_error = std::max(check.max_error, std::isfinite(err) ? err : HUGE_VAL);
  ++check.comparisons;
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass(); });
}

VerifyReport run_oracle_equivalence(const VerifyOptions& options) {
  const double tol = options.tolerance;
  VerifyCheck statevector{"statevector", 0, tol, 0};
  VerifyCheck reduced{"reduced_state", 0, tol, 0};
  VerifyCheck joint{"span_joint_distribution", 0, tol, 0};
  VerifyCheck local_joint{"local_joint_distribution", 0, tol, 0};
  VerifyCheck local_info{"local_exact_information", 0, tol, 0};

  const std::array methods{Orthonormalization::symmetric, Orthonormalization::gram_schmidt_0,
                           Orthonormalization::gram_schmidt_1};

  for (std::size_t i = 0; i < options.instances; ++i) {
    const Instance inst = draw(options, i);
    const BranchState state = build_state(inst.params);
    const oracle::DenseState dense = oracle::evolve_dense(inst.params);
    record(statevector, (oracle::branch_statevector(state) - dense.amplitudes).cwiseAbs().maxCoeff());

    const Eigen::MatrixXcd rho_dense = oracle::dense_reduced(dense, inst.frag);
    for (auto method : methods) {
      const EffectiveState eff = reduce(state, inst.frag, method);
      const Eigen::MatrixXcd w = oracle::span_vectors(state, inst.frag, eff);
      record(reduced, (oracle::lift_state(w, eff.rho) - rho_dense).cwiseAbs().maxCoeff());

      const Eigen::MatrixXd fast = joint_distribution(eff, inst.obs, inst.povm).p();
      const Eigen::MatrixXd slow =
          oracle::dense_joint_distribution(rho_dense, inst.obs, oracle::lift_povm(w, inst.povm));
      // The dense table always carries the complement column; the fast one
      // only when the fragment space is larger than the span.
      const Eigen::Index shared = std::min(fast.cols(), slow.cols());
      double err = (fast.leftCols(shared) - slow.leftCols(shared)).cwiseAbs().maxCoeff();
      if (slow.cols() > fast.cols()) err = std::max(err, slow.rightCols(1).cwiseAbs().maxCoeff());
      record(joint, err);
    }

    if (inst.frag.size() <= kMaxExactLocal) {
      const LocalStrategy strat = sample_strategy(inst.frag.size(), inst.strategy_seed);
      const Eigen::MatrixXd fast =
          local_joint_distribution(state, inst.frag, inst.obs, strat.measurement()).p();
      const Eigen::MatrixXd slow =
          oracle::dense_local_joint(dense, inst.frag, inst.obs, strat.measurement());
      record(local_joint, (fast - slow).cwiseAbs().maxCoeff());
      const double bits = info_local(state, inst.frag, inst.obs, strat, ExactMethod{}).bits;
      record(local_info, std::abs(bits - mutual_information(JointDistribution(slow))));
    }
  }
  return {options.instances, {statevector, reduced, joint, local_joint, local_info}};
}

}  // namespace qdarwin
