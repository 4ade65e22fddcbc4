#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qdarwin/model.hpp"

namespace qdarwin {

/// Measurement on the two-dimensional branch span, in span coordinates. The
/// projector onto the span's orthogonal complement inside the fragment space
/// is implicitly an extra "remainder" outcome.
struct SpanPovm {
  std::vector<Mat2c> elements;

  /// Throws std::invalid_argument unless the elements are PSD and sum to the
  /// span identity within tol.
  void validate(double tol = 1e-10) const;
  std::size_t outcomes() const { return elements.size(); }

  /// One outcome, the identity.
  static SpanPovm trivial();
  /// Orthogonal pair (1 +- n.sigma)/2 for the Bloch direction (theta, phi).
  static SpanPovm projective(double theta, double phi);
  /// Rank-1 elements w_j |v_j><v_j| = (w_j / 2)(1 + n_j . sigma).
  static SpanPovm from_bloch(const std::vector<double>& weights,
                             const std::vector<Eigen::Vector3d>& directions);
};

/// One orthonormal basis per fragment qubit; column j is the vector of outcome j.
struct LocalProduct {
  std::vector<Mat2c> bases;

  void validate(double tol = 1e-12) const;
};

using MeasurementSpec = std::variant<SpanPovm, LocalProduct>;

/// (cos t/2, e^{i p} sin t/2).
Vec2c bloch_state(double theta, double phi);
Vec2c bloch_state(const Eigen::Vector3d& n);
/// weight * (1 + n.sigma) / 2, i.e. weight |v><v| for the unit Bloch direction n.
Mat2c rank_one(double weight, const Eigen::Vector3d& n);
Eigen::Vector3d bloch_vector(const Mat2c& m);

}  // namespace qdarwin
