#pragma once

// Dense statevector reference for small environments.
//
// Basis convention (used by every function here): the system is the most
// significant qubit, followed by environment qubits 0, 1, ..., N-1, i.e.
//   index = s * 2^N + sum_k bit_k * 2^(N-1-k).
// Reduced states on system (x) fragment use the same ordering restricted to
// the kept qubits: system first, then fragment qubits in increasing order.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/measurement.hpp"
#include "qdarwin/model.hpp"

namespace qdarwin::oracle {

inline constexpr std::size_t kMaxDenseEnv = 12;
inline constexpr std::size_t kMaxExhaustiveFragment = 4;  // fragment dimension 16

struct DenseState {
  Eigen::VectorXcd amplitudes;
  std::size_t n_env = 0;
};

/// Applies exp(-i a_k sigma_z (x) sigma_y^{(k)}) to the initial product state.
/// gate_order permutes the gate sequence (empty = 0..N-1).
DenseState evolve_dense(const ModelParams& params, std::span<const std::size_t> gate_order = {});

/// c0 |0>|E^0> + c1 |1>|E^1> written out densely.
Eigen::VectorXcd branch_statevector(const BranchState& state);

/// Exact partial trace over every environment qubit outside frag.
Eigen::MatrixXcd dense_reduced(const DenseState& state, const Fragment& frag);

// Alignment between the 4-dimensional effective representation and the dense
// system (x) fragment space.

/// 2^m x 2 matrix whose columns are the span basis vectors of an EffectiveState
/// (second column zero for a one-dimensional span).
Eigen::MatrixXcd span_vectors(const BranchState& state, const Fragment& frag,
                              const EffectiveState& eff);
/// (1 (x) W) rho (1 (x) W)^dagger.
Eigen::MatrixXcd lift_state(const Eigen::MatrixXcd& span_vecs, const Mat4c& rho);
/// Span POVM lifted to the fragment space plus the complement projector last.
std::vector<Eigen::MatrixXcd> lift_povm(const Eigen::MatrixXcd& span_vecs, const SpanPovm& povm);

/// p(i, j) = Tr[(P_i (x) E_j) rho] with explicit dense operators.
Eigen::MatrixXd dense_joint_distribution(const Eigen::MatrixXcd& rho_sf, const ObservableAngle& obs,
                                         const std::vector<Eigen::MatrixXcd>& elements);

/// p(i, j) for a product measurement, rotating the statevector into the
/// measured bases and summing squared amplitudes. Columns follow
/// local_joint_distribution (first fragment qubit most significant).
Eigen::MatrixXd dense_local_joint(const DenseState& state, const Fragment& frag,
                                  const ObservableAngle& obs, const LocalProduct& meas);

struct ExhaustiveGrid {
  int theta_points = 721;  // includes both poles
  int phi_points = 144;    // includes 0 and pi
  int random_povms = 100000;
  std::uint64_t seed = 0;
};

struct ExhaustiveResult {
  double bits = 0.0;             // max over everything tried
  double grid_bits = 0.0;        // projective grid on the support
  double random_bits = 0.0;      // random POVMs on the full fragment space
  int support_rank = 0;
};

/// Brute-force accessible information: a projective grid on the support of
/// the fragment state (found by diagonalizing the dense reduced state) plus
/// random rank-1 POVMs on the whole fragment space.
ExhaustiveResult dense_exhaustive_info(const DenseState& state, const Fragment& frag,
                                       const ObservableAngle& obs,
                                       const ExhaustiveGrid& grid = {});

}  // namespace qdarwin::oracle
