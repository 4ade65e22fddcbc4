#include "qdarwin/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qdarwin/rng.hpp"

namespace qdarwin {

bool ModelParams::uniform_actions() const {
  return std::adjacent_find(actions.begin(), actions.end(), std::not_equal_to<>()) ==
         actions.end();
}

void ModelParams::validate() const {
  if (actions.empty()) throw std::invalid_argument("environment must have at least one qubit");
  for (std::size_t k = 0; k < actions.size(); ++k) {
    if (!std::isfinite(actions[k])) {
      throw std::invalid_argument("action " + std::to_string(k) + " is not finite");
    }
  }
}

ModelParams ModelParams::uniform(std::size_t n_env, double action, std::uint64_t seed) {
  return ModelParams{std::vector<double>(n_env, action), seed};
}

ModelParams ModelParams::random(std::size_t n_env, double lo, double hi, std::uint64_t seed) {
  Rng rng(derive_seed(seed, SeedStream::random_actions, 0));
  ModelParams p{std::vector<double>(n_env), seed};
  for (auto& a : p.actions) a = rng.uniform(lo, hi);
  return p;
}

Fragment Fragment::of(std::vector<std::size_t> indices, std::size_t n_env) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw std::invalid_argument("fragment has duplicate indices");
  }
  if (!indices.empty() && indices.back() >= n_env) {
    throw std::invalid_argument("fragment index " + std::to_string(indices.back()) +
                                " out of range for N=" + std::to_string(n_env));
  }
  return Fragment(std::move(indices));
}

Fragment Fragment::first(std::size_t m) {
  std::vector<std::size_t> idx(m);
  for (std::size_t k = 0; k < m; ++k) idx[k] = k;
  return Fragment(std::move(idx));
}

bool Fragment::contains(std::size_t k) const {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

Fragment Fragment::complement(std::size_t n_env) const {
  std::vector<std::size_t> rest;
  rest.reserve(n_env - std::min(n_env, size()));
  for (std::size_t k = 0; k < n_env; ++k) {
    if (!contains(k)) rest.push_back(k);
  }
  return Fragment(std::move(rest));
}

Fragment Fragment::with(std::size_t k, std::size_t n_env) const {
  if (contains(k)) throw std::invalid_argument("qubit already in fragment");
  auto idx = indices_;
  idx.push_back(k);
  return of(std::move(idx), n_env);
}

Vec2c ObservableAngle::eigenvector(int outcome) const {
  const double c = std::cos(mu / 2), s = std::sin(mu / 2);
  if (outcome == 0) return Vec2c(c, s);
  return Vec2c(-s, c);
}

Mat2c ObservableAngle::projector(int outcome) const {
  const Vec2c v = eigenvector(outcome);
  return v * v.adjoint();
}

cplx BranchState::record_overlap(std::size_t k) const {
  return records[k][0].dot(records[k][1]);  // Eigen's dot conjugates the left side
}

cplx BranchState::branch_overlap(std::span<const std::size_t> indices) const {
  cplx g = 1.0;
  for (std::size_t k : indices) g *= record_overlap(k);
  return g;
}

BranchState build_state(const ModelParams& params) {
  params.validate();
  BranchState st;
  const double amp = 1.0 / std::sqrt(2.0);
  st.sys_amps = {cplx(amp), cplx(amp)};
  st.records.reserve(params.n_env());
  // exp(-i a sigma_z (x) sigma_y) applied to |b>|0>: sigma_z = +1 rotates
  // |0> to (cos a, sin a), sigma_z = -1 to (cos a, -sin a).
  for (double a : params.actions) {
    const double c = std::cos(a), s = std::sin(a);
    st.records.push_back({Vec2c(c, s), Vec2c(c, -s)});
  }
  return st;
}

double fragment_overlap(const BranchState& state, const Fragment& frag) {
  return state.branch_overlap(frag.indices()).real();
}

double total_overlap(const BranchState& state) {
  cplx g = 1.0;
  for (std::size_t k = 0; k < state.n_env(); ++k) g *= state.record_overlap(k);
  return g.real();
}

namespace {

Mat2c span_coordinates(cplx g, Orthonormalization method, int& span_dim) {
  Mat2c c = Mat2c::Zero();
  if (std::abs(g) > 1.0 - kDegenerateSpanTol) {
    // |E^1> = g |E^0> up to rounding.
    span_dim = 1;
    c(0, 0) = 1.0;
    c(0, 1) = g;
    return c;
  }
  span_dim = 2;
  const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
  switch (method) {
    case Orthonormalization::symmetric: {
      Mat2c gram;
      gram << 1.0, g, std::conj(g), 1.0;
      Eigen::SelfAdjointEigenSolver<Mat2c> es(gram);
      const Eigen::Vector2d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
      c = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
      break;
    }
    case Orthonormalization::gram_schmidt_0:
      c << 1.0, g, 0.0, s;
      break;
    case Orthonormalization::gram_schmidt_1:
      c << std::conj(g), 1.0, s, 0.0;
      break;
  }
  return c;
}

}  // namespace

EffectiveState reduce(const BranchState& state, const Fragment& frag, Orthonormalization method) {
  const std::size_t n = state.n_env();
  if (!frag.empty() && frag.indices().back() >= n) {
    throw std::invalid_argument("fragment does not fit the environment");
  }
  const cplx g_frag = state.branch_overlap(frag.indices());
  const Fragment rest = frag.complement(n);
  const cplx g_rest = state.branch_overlap(rest.indices());

  EffectiveState eff;
  eff.gram << 1.0, g_frag, std::conj(g_frag), 1.0;
  eff.ortho_basis = span_coordinates(g_frag, method, eff.span_dim);
  eff.damping = g_rest.real();
  eff.fragment_size = frag.size();

  // Tr_rest |E_R^b><E_R^b'| = <E_R^b'|E_R^b>.
  Mat2c coherence;
  coherence << 1.0, std::conj(g_rest), g_rest, 1.0;

  eff.rho.setZero();
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      const cplx w = state.sys_amps[b] * std::conj(state.sys_amps[bp]) * coherence(b, bp);
      eff.rho.block<2, 2>(2 * b, 2 * bp) =
          w * eff.ortho_basis.col(b) * eff.ortho_basis.col(bp).adjoint();
    }
  }
  return eff;
}

Mat2c EffectiveState::conditional(const ObservableAngle& obs, int outcome) const {
  const Mat2c p = obs.projector(outcome);
  Mat2c tau = Mat2c::Zero();
  for (int s = 0; s < 2; ++s) {
    for (int sp = 0; sp < 2; ++sp) {
      tau += p(s, sp) * rho.block<2, 2>(2 * sp, 2 * s);
    }
  }
  return tau;
}

Mat2c EffectiveState::system_state() const {
  Mat2c rs;
  for (int s = 0; s < 2; ++s) {
    for (int sp = 0; sp < 2; ++sp) rs(s, sp) = rho.block<2, 2>(2 * s, 2 * sp).trace();
  }
  return rs;
}

}  // namespace qdarwin
