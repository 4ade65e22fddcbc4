#include "qdarwin/redundancy.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qdarwin {

const char* to_string(RedundancyStatus status) {
  switch (status) {
    case RedundancyStatus::ok:
      return "ok";
    case RedundancyStatus::no_imprint:
      return "no_imprint";
    case RedundancyStatus::threshold_not_met:
      return "threshold_not_met";
  }
  return "?";
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

}  // namespace

RedundancyResult m_delta_search(const ModelParams& params, const ObservableAngle& obs,
                                double delta, const RedundancyOptions& options) {
  check_delta(delta);
  const BranchState state = build_state(params);
  const std::size_t n = params.n_env();

  RedundancyResult res;
  res.delta = delta;
  std::map<std::size_t, double> probed;
  auto info = [&](std::size_t m) {
    if (auto it = probed.find(m); it != probed.end()) return it->second;
    const InfoResult r = optimal_fragment_info(state, params, obs, m, options.policy,
                                               options.family, options.optimizer);
    res.converged = res.converged && r.diagnostics.converged;
    probed.emplace(m, r.bits);
    return r.bits;
  };

  res.i_full = info(n);
  auto finish = [&] {
    res.curve.assign(probed.begin(), probed.end());
    return res;
  };
  if (res.i_full <= options.no_imprint_tol) {
    res.status = RedundancyStatus::no_imprint;
    return finish();
  }
  const double threshold = (1.0 - delta) * res.i_full - kThresholdSlack;
  auto passes = [&](std::size_t m) { return info(m) >= threshold; };

  // Doubling finds a passing m; bisection closes the gap to the last failure.
  std::size_t fail = 0, pass = 1;
  while (pass < n && !passes(pass)) {
    fail = pass;
    pass = std::min(n, pass * 2);
  }
  if (!passes(pass)) {
    res.status = RedundancyStatus::threshold_not_met;
    return finish();
  }
  while (pass - fail > 1) {
    const std::size_t mid = fail + (pass - fail) / 2;
    (passes(mid) ? pass : fail) = mid;
  }
  res.m_delta = pass;
  res.r_delta = static_cast<double>(n) / static_cast<double>(pass);
  // Record the failing neighbour so the bracket is visible in the curve.
  if (pass > 1) info(pass - 1);
  return finish();
}

Completeness completeness(const ModelParams& params, const ObservableAngle& obs,
                          const RedundancyOptions& options) {
  const BranchState state = build_state(params);
  const std::size_t n = params.n_env();
  const InfoResult full = optimal_fragment_info(state, params, obs, n, options.policy,
                                                options.family, options.optimizer);
  Completeness c;
  c.i_n = full.bits;
  c.converged = full.diagnostics.converged;
  c.h_sigma = observable_entropy(obs, reduce(state, Fragment{}).system_state());
  c.ratio = c.h_sigma < 1e-12 ? 1.0 : c.i_n / c.h_sigma;
  return c;
}

double completeness_check(const ModelParams& params, const ObservableAngle& obs,
                          const RedundancyOptions& options) {
  return completeness(params, obs, options).ratio;
}

double theorem_identity_gap(const ModelParams& params, const ObservableAngle& obs,
                            std::size_t m, double delta, const RedundancyOptions& options) {
  const std::size_t n = params.n_env();
  if (2 * m > n) {
    throw std::domain_error("m = " + std::to_string(m) + " exceeds N/2");
  }
  const RedundancyResult pointer = m_delta_search(params, ObservableAngle{0.0}, delta, options);
  if (!pointer.m_delta || m < *pointer.m_delta) {
    throw std::domain_error("m = " + std::to_string(m) + " is below m_delta(pi)");
  }
  const BranchState state = build_state(params);
  const InfoResult im = optimal_fragment_info(state, params, obs, m, options.policy,
                                              options.family, options.optimizer);
  return std::abs(im.bits - info_via_pointer(obs, total_overlap(state)));
}

double bound_mu(double delta) {
  check_delta(delta);
  auto excess = [delta](double mu) {
    const double c = std::cos(mu / 2);
    return binary_entropy(c * c) - delta;
  };
  // H2(cos^2(mu/2)) rises from 0 at mu = 0 to 1 at mu = pi/2.
  double lo = 0.0, hi = std::numbers::pi / 2;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace qdarwin
