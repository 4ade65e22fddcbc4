#pragma once

// Entropies and mutual information, in bits.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/measurement.hpp"
#include "qdarwin/model.hpp"

namespace qdarwin {

/// Probabilities in [-kClampTol, 0) are rounding and become 0; anything more
/// negative is rejected.
inline constexpr double kClampTol = 1e-12;

struct InfoDiagnostics {
  int iterations = 0;
  int restarts = 0;
  bool converged = true;
  double restart_spread = 0.0;  // best minus worst restart, bits
  double min_bits = 0.0;        // over fragment samples
  double max_bits = 0.0;
  double stderr_bits = 0.0;     // Monte-Carlo only
  std::size_t samples = 0;
};

struct InfoResult {
  double bits = 0.0;
  std::optional<MeasurementSpec> measurement;
  InfoDiagnostics diagnostics;
};

/// p(i, j) over system outcomes i (rows) and environment outcomes j (columns).
class JointDistribution {
 public:
  /// Clamps rounding negatives; throws std::invalid_argument if an entry is
  /// below -kClampTol or the total differs from 1 by more than 1e-10.
  explicit JointDistribution(Eigen::MatrixXd p, std::vector<std::string> row_labels = {},
                             std::vector<std::string> col_labels = {});

  const Eigen::MatrixXd& p() const { return p_; }
  Eigen::Index rows() const { return p_.rows(); }
  Eigen::Index cols() const { return p_.cols(); }
  Eigen::VectorXd row_marginal() const { return p_.rowwise().sum(); }
  Eigen::VectorXd col_marginal() const { return p_.colwise().sum().transpose(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

 private:
  Eigen::MatrixXd p_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// -sum p log2 p with 0 log 0 = 0. Rejects negative entries (beyond
/// rounding) and totals off 1 by more than 1e-9.
double shannon_entropy(std::span<const double> dist);
double shannon_entropy(const Eigen::VectorXd& dist);

/// H2(p); p may exceed [0, 1] by at most 1e-12.
double binary_entropy(double p);

/// H(rows) + H(cols) - H(joint), clamped at 0 for values down to -1e-9.
double mutual_information(const JointDistribution& joint);

/// p(i, j) = Tr[(P_i (x) E_j) rho] for a SpanPovm. When the fragment space is
/// larger than the span, a final "remainder" column holds the complement
/// outcome. LocalProduct measurements are rejected here; see info_local.
JointDistribution joint_distribution(const EffectiveState& state, const ObservableAngle& obs,
                                     const MeasurementSpec& meas);

/// Outcome distribution of sigma(mu) on a system state.
Eigen::Vector2d observable_distribution(const ObservableAngle& obs, const Mat2c& rho_s);
double observable_entropy(const ObservableAngle& obs, const Mat2c& rho_s);
/// Decohered-model system state 1/2 [[1, g], [g, 1]].
Mat2c system_state(double gamma_total);

/// I(sigma : pi) with pi = sigma_z measured first and sigma(mu) after it:
/// p(pi_j, sigma_i) = Tr[sigma_i pi_j rho_S pi_j].
double info_via_pointer(const ObservableAngle& obs, double gamma_total);

}  // namespace qdarwin
