#pragma once

// System qubit coupled to N environment qubits through
//   H = sum_k g_k sigma_z (x) sigma_y^{(k)},
// starting from (|0> + |1>)/sqrt(2) (x) |0...0>. After time t the global state
// keeps the two-branch form
//   |psi> = c0 |0> (x)_k |e_k^0> + c1 |1> (x)_k |e_k^1>,
// with per-qubit records fixed by the actions a_k = g_k t.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdarwin {

using cplx = std::complex<double>;
using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

struct ModelParams {
  std::vector<double> actions;  // a_k in radians, one per environment qubit
  std::uint64_t seed = 0;

  std::size_t n_env() const { return actions.size(); }
  bool uniform_actions() const;

  /// Throws std::invalid_argument on an empty environment or non-finite action.
  void validate() const;

  static ModelParams uniform(std::size_t n_env, double action, std::uint64_t seed = 0);
  /// Actions drawn independently from [lo, hi] with the given seed.
  static ModelParams random(std::size_t n_env, double lo, double hi, std::uint64_t seed);
};

/// Sorted set of environment-qubit indices.
class Fragment {
 public:
  Fragment() = default;

  /// Sorts the indices; rejects duplicates and indices >= n_env.
  static Fragment of(std::vector<std::size_t> indices, std::size_t n_env);
  static Fragment first(std::size_t m);
  static Fragment all(std::size_t n_env) { return first(n_env); }

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const std::size_t> indices() const { return indices_; }
  bool contains(std::size_t k) const;
  Fragment complement(std::size_t n_env) const;
  /// Adds one qubit (must be absent).
  Fragment with(std::size_t k, std::size_t n_env) const;

  friend bool operator==(const Fragment&, const Fragment&) = default;

 private:
  explicit Fragment(std::vector<std::size_t> sorted) : indices_(std::move(sorted)) {}
  std::vector<std::size_t> indices_;
};

/// sigma(mu) = cos(mu) sigma_z + sin(mu) sigma_x. mu = 0 is the pointer observable.
struct ObservableAngle {
  double mu = 0.0;

  /// Eigenvector for outcome 0 (eigenvalue +1): cos(mu/2)|0> + sin(mu/2)|1>;
  /// outcome 1 is its orthogonal complement.
  Vec2c eigenvector(int outcome) const;
  Mat2c projector(int outcome) const;
};

struct BranchState {
  std::array<cplx, 2> sys_amps;
  /// records[k][b] is |e_k^b>.
  std::vector<std::array<Vec2c, 2>> records;

  std::size_t n_env() const { return records.size(); }
  /// <e_k^0|e_k^1>
  cplx record_overlap(std::size_t k) const;
  /// prod over the indices of <e_k^0|e_k^1>; 1 for an empty set.
  cplx branch_overlap(std::span<const std::size_t> indices) const;
};

enum class Orthonormalization {
  symmetric,       // Lowdin, G^{1/2} coordinates
  gram_schmidt_0,  // first basis vector along branch 0
  gram_schmidt_1,  // first basis vector along branch 1
};

/// Exact reduced state of system (x) fragment on a 4-dimensional basis:
/// system qubit (x) an orthonormal basis of span{|E_F^0>, |E_F^1>}.
/// rho is indexed as 2 * system + span.
struct EffectiveState {
  Mat2c gram;         // <E_F^a|E_F^b>
  Mat2c ortho_basis;  // column b = coordinates of |E_F^b> in the span basis
  double damping = 1; // record overlap over qubits outside the fragment
  Mat4c rho;
  int span_dim = 2;
  std::size_t fragment_size = 0;

  /// Hilbert-space dimension of the fragment, 2^m.
  double fragment_dim() const { return std::ldexp(1.0, static_cast<int>(fragment_size)); }

  /// Conditional fragment operator tau_i = Tr_S[(P_i (x) 1) rho] for a
  /// system outcome of obs.
  Mat2c conditional(const ObservableAngle& obs, int outcome) const;
  /// Reduced system state.
  Mat2c system_state() const;
};

/// Span overlaps above this magnitude are treated as a one-dimensional span.
inline constexpr double kDegenerateSpanTol = 1e-12;

BranchState build_state(const ModelParams& params);

/// gamma_F = prod_{k in frag} <e_k^0|e_k^1> (= cos 2a_k for this model).
double fragment_overlap(const BranchState& state, const Fragment& frag);

EffectiveState reduce(const BranchState& state, const Fragment& frag,
                      Orthonormalization method = Orthonormalization::symmetric);

/// Record overlap of the whole environment; the system coherence factor.
double total_overlap(const BranchState& state);

}  // namespace qdarwin
