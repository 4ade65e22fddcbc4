#include "qdarwin/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdarwin {

void SpanPovm::validate(double tol) const {
  if (elements.empty()) throw std::invalid_argument("POVM has no elements");
  Mat2c sum = Mat2c::Zero();
  for (const auto& e : elements) {
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("POVM element is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Mat2c> es(e);
    if (es.eigenvalues().minCoeff() < -tol) {
      throw std::invalid_argument("POVM element is not positive semidefinite");
    }
    sum += e;
  }
  if ((sum - Mat2c::Identity()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("POVM elements do not sum to the identity on the span");
  }
}

SpanPovm SpanPovm::trivial() { return SpanPovm{{Mat2c::Identity()}}; }

SpanPovm SpanPovm::projective(double theta, double phi) {
  const Eigen::Vector3d n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                          std::cos(theta));
  return SpanPovm{{rank_one(1.0, n), rank_one(1.0, -n)}};
}

SpanPovm SpanPovm::from_bloch(const std::vector<double>& weights,
                              const std::vector<Eigen::Vector3d>& directions) {
  if (weights.size() != directions.size()) {
    throw std::invalid_argument("weights and directions differ in length");
  }
  SpanPovm povm;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    povm.elements.push_back(rank_one(weights[j], directions[j]));
  }
  return povm;
}

void LocalProduct::validate(double tol) const {
  for (const auto& b : bases) {
    if ((b.adjoint() * b - Mat2c::Identity()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("local basis is not orthonormal");
    }
  }
}

Vec2c bloch_state(double theta, double phi) {
  return Vec2c(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
}

Vec2c bloch_state(const Eigen::Vector3d& n) {
  const double norm = n.norm();
  if (norm == 0.0) throw std::invalid_argument("zero Bloch vector");
  const double theta = std::acos(std::clamp(n.z() / norm, -1.0, 1.0));
  return bloch_state(theta, std::atan2(n.y(), n.x()));
}

Mat2c rank_one(double weight, const Eigen::Vector3d& n) {
  const Eigen::Vector3d u = n.normalized();
  Mat2c m;
  m << 1.0 + u.z(), cplx(u.x(), -u.y()), cplx(u.x(), u.y()), 1.0 - u.z();
  return 0.5 * weight * m;
}

Eigen::Vector3d bloch_vector(const Mat2c& m) {
  return {2 * m(1, 0).real(), 2 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

}  // namespace qdarwin
