#include "qdarwin/info.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdarwin {

namespace {

double clamp_probability(double x) {
  if (x < -kClampTol) {
    throw std::invalid_argument("negative probability " + std::to_string(x));
  }
  return x < 0.0 ? 0.0 : x;
}

double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace

JointDistribution::JointDistribution(Eigen::MatrixXd p, std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels)
    : p_(std::move(p)), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
  if (p_.size() == 0) throw std::invalid_argument("empty joint distribution");
  p_ = p_.unaryExpr(&clamp_probability);
  const double total = p_.sum();
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("joint distribution sums to " + std::to_string(total));
  }
  if (!row_labels_.empty() && static_cast<Eigen::Index>(row_labels_.size()) != p_.rows()) {
    throw std::invalid_argument("row label count mismatch");
  }
  if (!col_labels_.empty() && static_cast<Eigen::Index>(col_labels_.size()) != p_.cols()) {
    throw std::invalid_argument("column label count mismatch");
  }
}

double shannon_entropy(std::span<const double> dist) {
  double total = 0.0, h = 0.0;
  for (double raw : dist) {
    const double p = clamp_probability(raw);
    total += p;
    h += entropy_term(p);
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution sums to " + std::to_string(total));
  }
  return h;
}

double shannon_entropy(const Eigen::VectorXd& dist) {
  return shannon_entropy(std::span<const double>(dist.data(), static_cast<std::size_t>(dist.size())));
}

double binary_entropy(double p) {
  if (p < -kClampTol || p > 1.0 + kClampTol) {
    throw std::invalid_argument("binary_entropy argument outside [0, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  return entropy_term(p) + entropy_term(1.0 - p);
}

double mutual_information(const JointDistribution& joint) {
  double h_joint = 0.0;
  for (Eigen::Index i = 0; i < joint.p().size(); ++i) h_joint += entropy_term(joint.p().data()[i]);
  double h_rows = 0.0, h_cols = 0.0;
  for (double x : joint.row_marginal()) h_rows += entropy_term(x);
  for (double x : joint.col_marginal()) h_cols += entropy_term(x);
  const double mi = h_rows + h_cols - h_joint;
  if (mi < -1e-9) throw std::logic_error("negative mutual information " + std::to_string(mi));
  return std::max(mi, 0.0);
}

JointDistribution joint_distribution(const EffectiveState& state, const ObservableAngle& obs,
                                     const MeasurementSpec& meas) {
  const auto* povm = std::get_if<SpanPovm>(&meas);
  if (povm == nullptr) {
    throw std::invalid_argument(
        "local product measurements act on the full fragment; use info_local");
  }
  povm->validate();
  const bool remainder = state.fragment_dim() > state.span_dim;
  const auto outcomes = static_cast<Eigen::Index>(povm->outcomes());
  Eigen::MatrixXd p(2, outcomes + (remainder ? 1 : 0));
  for (int i = 0; i < 2; ++i) {
    const Mat2c tau = state.conditional(obs, i);
    double captured = 0.0;
    for (Eigen::Index j = 0; j < outcomes; ++j) {
      p(i, j) = (povm->elements[static_cast<std::size_t>(j)] * tau).trace().real();
      captured += p(i, j);
    }
    // The reduced state lives on the span, so the complement outcome carries
    // only whatever weight the span elements missed.
    if (remainder) p(i, outcomes) = tau.trace().real() - captured;
  }
  std::vector<std::string> rows{"sigma+", "sigma-"};
  std::vector<std::string> cols;
  for (Eigen::Index j = 0; j < outcomes; ++j) cols.push_back("e" + std::to_string(j));
  if (remainder) cols.emplace_back("remainder");
  return JointDistribution(std::move(p), std::move(rows), std::move(cols));
}

Eigen::Vector2d observable_distribution(const ObservableAngle& obs, const Mat2c& rho_s) {
  return {(obs.projector(0) * rho_s).trace().real(), (obs.projector(1) * rho_s).trace().real()};
}

double observable_entropy(const ObservableAngle& obs, const Mat2c& rho_s) {
  return shannon_entropy(observable_distribution(obs, rho_s));
}

Mat2c system_state(double gamma_total) {
  Mat2c rs;
  rs << 0.5, 0.5 * gamma_total, 0.5 * gamma_total, 0.5;
  return rs;
}

double info_via_pointer(const ObservableAngle& obs, double gamma_total) {
  if (std::abs(gamma_total) > 1.0 + 1e-12) throw std::invalid_argument("|gamma_total| > 1");
  const Mat2c rs = system_state(gamma_total);
  const ObservableAngle pointer{0.0};
  Eigen::Matrix2d p;
  for (int j = 0; j < 2; ++j) {
    const Mat2c pj = pointer.projector(j);
    const Mat2c post = pj * rs * pj;
    for (int i = 0; i < 2; ++i) p(i, j) = (obs.projector(i) * post).trace().real();
  }
  return mutual_information(JointDistribution(p));
}

}  // namespace qdarwin
