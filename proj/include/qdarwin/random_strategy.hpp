#pragma once

// Information gathered by an observer who measures m environment qubits one
// by one, each in an independently chosen random basis.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdarwin/info.hpp"
#include "qdarwin/model.hpp"

namespace qdarwin {

struct LocalBasis {
  Eigen::Vector3d bloch;  // direction of the outcome-0 vector
  double phase = 0.0;     // global phase of both vectors

  /// Columns are the outcome-0 and outcome-1 vectors.
  Mat2c vectors() const;
};

struct LocalStrategy {
  std::vector<LocalBasis> bases;
  std::uint64_t seed = 0;

  std::size_t m() const { return bases.size(); }
  LocalProduct measurement() const;
  /// First m bases; strategies from one seed are nested.
  LocalStrategy prefix(std::size_t m) const;
};

/// m Haar-random single-qubit bases. Basis k depends only on (seed, k).
LocalStrategy sample_strategy(std::size_t m, std::uint64_t seed);

struct ExactMethod {};
struct MonteCarloMethod {
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
};
using LocalMethod = std::variant<ExactMethod, MonteCarloMethod>;

inline constexpr std::size_t kMaxExactLocal = 20;
inline constexpr std::size_t kMinMonteCarloSamples = 1000;
inline constexpr double kMaxMonteCarloStderr = 0.02;

/// I(sigma(mu) : e) for the product measurement on the first m environment
/// qubits. Exact enumerates all 2^m outcome strings (m <= 20). MonteCarlo
/// samples outcome strings qubit by qubit and averages H(sigma) - H(sigma|e);
/// it throws std::runtime_error if the standard error exceeds 0.02 bits.
InfoResult info_local(const ModelParams& params, const ObservableAngle& obs,
                      const LocalStrategy& strat, const LocalMethod& method);

/// Same on an explicit fragment; strat.m() must equal frag.size() and basis t
/// applies to the t-th fragment qubit.
InfoResult info_local(const BranchState& state, const Fragment& frag, const ObservableAngle& obs,
                      const LocalStrategy& strat, const LocalMethod& method);

/// Full table p(i, j) for the product measurement; column j encodes the
/// outcome string with the first fragment qubit as the most significant bit.
JointDistribution local_joint_distribution(const BranchState& state, const Fragment& frag,
                                           const ObservableAngle& obs, const LocalProduct& meas);

struct Fig1cOptions {
  int replicas = 8;
  std::size_t exact_max_m = kMaxExactLocal;
  std::size_t mc_samples = 20000;
  unsigned threads = 1;
};

struct Fig1cRow {
  double mu = 0.0;
  std::size_t m = 0;
  double mean_bits = 0.0;
  double stderr_bits = 0.0;
  std::string method;  // "exact" or "monte_carlo"
  int replicas = 1;    // 1 marks the single-draw row
};

/// For each (mu, m): the mean over `replicas` nested random strategies (seeded
/// from params.seed) and the single first draw. Rows come in grid order, mean
/// row first.
std::vector<Fig1cRow> fig1c_curve(const ModelParams& params, std::span<const double> mu_grid,
                                  std::span<const std::size_t> m_grid,
                                  const Fig1cOptions& options = {});

}  // namespace qdarwin
