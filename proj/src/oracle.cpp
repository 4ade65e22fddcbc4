#include "qdarwin/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qdarwin/rng.hpp"

namespace qdarwin::oracle {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

double h_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

double table_mi(const MatrixXd& p) {
  double h_joint = 0.0, h_rows = 0.0, h_cols = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) h_joint += h_term(std::max(p(i, j), 0.0));
    h_rows += h_term(p.row(i).cwiseMax(0.0).sum());
  }
  for (Eigen::Index j = 0; j < p.cols(); ++j) h_cols += h_term(p.col(j).cwiseMax(0.0).sum());
  return std::max(0.0, h_rows + h_cols - h_joint);
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_env(std::size_t n) {
  if (n == 0 || n > kMaxDenseEnv) {
    throw std::invalid_argument("dense oracle supports 1 <= N <= " + std::to_string(kMaxDenseEnv));
  }
}

// Rows: system then fragment qubits; columns: the remaining qubits.
MatrixXcd split_amplitudes(const DenseState& state, const Fragment& frag) {
  const std::size_t n = state.n_env;
  const Fragment rest = frag.complement(n);
  const std::size_t m = frag.size();
  MatrixXcd psi = MatrixXcd::Zero(Eigen::Index{2} << m, Eigen::Index{1} << rest.size());
  for (std::size_t x = 0; x < (std::size_t{2} << n); ++x) {
    std::size_t row = (x >> n) & 1U, col = 0;
    for (std::size_t k : frag.indices()) row = (row << 1) | ((x >> (n - 1 - k)) & 1U);
    for (std::size_t k : rest.indices()) col = (col << 1) | ((x >> (n - 1 - k)) & 1U);
    psi(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        state.amplitudes[static_cast<Eigen::Index>(x)];
  }
  return psi;
}

// tau_i = Tr_S[(P_i (x) 1) rho] on the fragment space.
std::array<MatrixXcd, 2> conditionals(const MatrixXcd& rho_sf, const ObservableAngle& obs) {
  const Eigen::Index d = rho_sf.rows() / 2;
  std::array<MatrixXcd, 2> tau;
  for (int i = 0; i < 2; ++i) {
    const Mat2c p = obs.projector(i);
    tau[i] = MatrixXcd::Zero(d, d);
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) tau[i] += p(s, sp) * rho_sf.block(sp * d, s * d, d, d);
    }
  }
  return tau;
}

cplx gaussian(Rng& rng) {
  // Box-Muller; 1 - u keeps the logarithm finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
  const double t = 2 * std::numbers::pi * rng.uniform();
  return {r * std::cos(t) / std::sqrt(2.0), r * std::sin(t) / std::sqrt(2.0)};
}

}  // namespace

DenseState evolve_dense(const ModelParams& params, std::span<const std::size_t> gate_order) {
  params.validate();
  const std::size_t n = params.n_env();
  check_env(n);
  std::vector<std::size_t> order(gate_order.begin(), gate_order.end());
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  if (order.size() != n) throw std::invalid_argument("gate order must list every qubit once");

  DenseState st;
  st.n_env = n;
  st.amplitudes = VectorXcd::Zero(Eigen::Index{2} << n);
  st.amplitudes[0] = 1.0 / std::sqrt(2.0);
  st.amplitudes[Eigen::Index{1} << n] = 1.0 / std::sqrt(2.0);

  Mat2c sz, sy;
  sz << 1, 0, 0, -1;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  const MatrixXcd zy = kron(sz, sy);  // two-qubit basis index 2 s + e

  const std::size_t sys_bit = std::size_t{1} << n;
  for (std::size_t k : order) {
    const double a = params.actions.at(k);
    // (sigma_z (x) sigma_y)^2 = 1, so the exponential is cos a - i sin a ZY.
    const MatrixXcd gate = std::cos(a) * MatrixXcd::Identity(4, 4) - cplx(0, std::sin(a)) * zy;
    const std::size_t env_bit = std::size_t{1} << (n - 1 - k);
    for (std::size_t x = 0; x < (sys_bit << 1); ++x) {
      if ((x & sys_bit) || (x & env_bit)) continue;
      const std::array<std::size_t, 4> idx{x, x | env_bit, x | sys_bit, x | sys_bit | env_bit};
      Eigen::Vector4cd v;
      for (int q = 0; q < 4; ++q) v[q] = st.amplitudes[static_cast<Eigen::Index>(idx[q])];
      const Eigen::Vector4cd w = gate * v;
      for (int q = 0; q < 4; ++q) st.amplitudes[static_cast<Eigen::Index>(idx[q])] = w[q];
    }
  }
  return st;
}

VectorXcd branch_statevector(const BranchState& state) {
  const std::size_t n = state.n_env();
  check_env(n);
  VectorXcd out(Eigen::Index{2} << n);
  for (int b = 0; b < 2; ++b) {
    MatrixXcd branch = MatrixXcd::Constant(1, 1, state.sys_amps[b]);
    for (std::size_t k = 0; k < n; ++k) branch = kron(branch, state.records[k][b]);
    out.segment(b * (Eigen::Index{1} << n), Eigen::Index{1} << n) = branch.col(0);
  }
  return out;
}

MatrixXcd dense_reduced(const DenseState& state, const Fragment& frag) {
  check_env(state.n_env);
  if (!frag.empty() && frag.indices().back() >= state.n_env) {
    throw std::invalid_argument("fragment does not fit the environment");
  }
  const MatrixXcd psi = split_amplitudes(state, frag);
  return psi * psi.adjoint();
}

MatrixXcd span_vectors(const BranchState& state, const Fragment& frag, const EffectiveState& eff) {
  MatrixXcd v0 = MatrixXcd::Ones(1, 1), v1 = MatrixXcd::Ones(1, 1);
  for (std::size_t k : frag.indices()) {
    v0 = kron(v0, state.records[k][0]);
    v1 = kron(v1, state.records[k][1]);
  }
  MatrixXcd w = MatrixXcd::Zero(v0.rows(), 2);
  if (eff.span_dim == 1) {
    w.col(0) = v0.col(0) / eff.ortho_basis(0, 0);
    return w;
  }
  MatrixXcd v(v0.rows(), 2);
  v.col(0) = v0.col(0);
  v.col(1) = v1.col(0);
  return v * eff.ortho_basis.inverse();
}

MatrixXcd lift_state(const MatrixXcd& span_vecs, const Mat4c& rho) {
  const MatrixXcd l = kron(MatrixXcd::Identity(2, 2), span_vecs);
  return l * rho * l.adjoint();
}

std::vector<MatrixXcd> lift_povm(const MatrixXcd& span_vecs, const SpanPovm& povm) {
  std::vector<MatrixXcd> out;
  for (const auto& e : povm.elements) out.push_back(span_vecs * e * span_vecs.adjoint());
  const Eigen::Index d = span_vecs.rows();
  out.push_back(MatrixXcd::Identity(d, d) - span_vecs * span_vecs.adjoint());
  return out;
}

MatrixXd dense_joint_distribution(const MatrixXcd& rho_sf, const ObservableAngle& obs,
                                  const std::vector<MatrixXcd>& elements) {
  const auto tau = conditionals(rho_sf, obs);
  MatrixXd p(2, static_cast<Eigen::Index>(elements.size()));
  for (int i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < elements.size(); ++j) {
      if (elements[j].rows() != tau[i].rows()) throw std::invalid_argument("dimension mismatch");
      p(i, static_cast<Eigen::Index>(j)) = (elements[j] * tau[i]).trace().real();
    }
  }
  return p;
}

MatrixXd dense_local_joint(const DenseState& state, const Fragment& frag,
                           const ObservableAngle& obs, const LocalProduct& meas) {
  if (meas.bases.size() != frag.size()) throw std::invalid_argument("one basis per qubit");
  const MatrixXcd psi = split_amplitudes(state, frag);
  MatrixXcd rot(2, 2);
  for (int i = 0; i < 2; ++i) rot.row(i) = obs.eigenvector(i).adjoint();
  for (const auto& b : meas.bases) rot = kron(rot, b.adjoint());
  const MatrixXcd rotated = rot * psi;
  const Eigen::VectorXd row_prob = rotated.rowwise().squaredNorm();
  const Eigen::Index cols = Eigen::Index{1} << frag.size();
  MatrixXd p(2, cols);
  for (int i = 0; i < 2; ++i) p.row(i) = row_prob.segment(i * cols, cols).transpose();
  return p;
}

ExhaustiveResult dense_exhaustive_info(const DenseState& state, const Fragment& frag,
                                       const ObservableAngle& obs, const ExhaustiveGrid& grid) {
  if (frag.size() > kMaxExhaustiveFragment) {
    throw std::invalid_argument("exhaustive search supports fragments of at most " +
                                std::to_string(kMaxExhaustiveFragment) + " qubits");
  }
  const auto tau = conditionals(dense_reduced(state, frag), obs);
  const Eigen::Index d = tau[0].rows();
  ExhaustiveResult res;

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(tau[0] + tau[1]);
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (es.eigenvalues()[k] > 1e-12) support.push_back(k);
  }
  res.support_rank = static_cast<int>(support.size());
  if (support.size() > 2) throw std::logic_error("fragment state has rank above 2");
  if (support.size() == 2) {
    MatrixXcd u(d, 2);
    u.col(0) = es.eigenvectors().col(support[0]);
    u.col(1) = es.eigenvectors().col(support[1]);
    std::array<Mat2c, 2> t;
    for (int i = 0; i < 2; ++i) t[i] = u.adjoint() * tau[i] * u;
    MatrixXd p(2, 2);
    for (int a = 0; a < grid.theta_points; ++a) {
      const double theta = std::numbers::pi * a / std::max(grid.theta_points - 1, 1);
      for (int b = 0; b < grid.phi_points; ++b) {
        const double phi = 2 * std::numbers::pi * b / grid.phi_points;
        const Vec2c v = bloch_state(theta, phi);
        for (int i = 0; i < 2; ++i) {
          p(i, 0) = v.dot(t[i] * v).real();
          p(i, 1) = t[i].trace().real() - p(i, 0);
        }
        res.grid_bits = std::max(res.grid_bits, table_mi(p));
      }
    }
  }

  Rng rng(derive_seed(grid.seed, SeedStream::verify, frag.size()));
  for (int s = 0; s < grid.random_povms; ++s) {
    const Eigen::Index outcomes = d + s % 3;
    MatrixXcd g(d, outcomes);
    for (Eigen::Index c = 0; c < outcomes; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) g(r, c) = gaussian(rng);
    }
    // Rank-1 elements S^{-1/2} g_k g_k^dagger S^{-1/2} with S = sum_k g_k g_k^dagger.
    Eigen::SelfAdjointEigenSolver<MatrixXcd> gs(g * g.adjoint());
    const MatrixXcd w = gs.operatorInverseSqrt() * g;
    MatrixXd p(2, outcomes);
    for (int i = 0; i < 2; ++i) {
      for (Eigen::Index c = 0; c < outcomes; ++c) p(i, c) = w.col(c).dot(tau[i] * w.col(c)).real();
    }
    res.random_bits = std::max(res.random_bits, table_mi(p));
  }
  res.bits = std::max(res.grid_bits, res.random_bits);
  return res;
}

}  // namespace qdarwin::oracle
