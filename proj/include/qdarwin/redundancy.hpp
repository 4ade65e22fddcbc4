#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdarwin/optimize.hpp"

namespace qdarwin {

enum class RedundancyStatus {
  ok,
  no_imprint,         // the whole environment carries no information
  threshold_not_met,  // even m = N misses (1 - delta) I_N; numerically guarded
};

const char* to_string(RedundancyStatus status);

struct RedundancyResult {
  double delta = 0.1;
  RedundancyStatus status = RedundancyStatus::ok;
  std::optional<std::size_t> m_delta;
  std::optional<double> r_delta;  // N / m_delta
  std::vector<std::pair<std::size_t, double>> curve;  // probed (m, I_m), sorted by m
  double i_full = 0.0;
  bool converged = true;
};

struct RedundancyOptions {
  FragmentPolicy policy{};
  MeasurementFamily family = MeasurementFamily::projective2;
  OptimizerOptions optimizer{};
  double no_imprint_tol = 1e-9;  // bits
};

/// Comparisons against (1 - delta) I_N allow this much rounding.
inline constexpr double kThresholdSlack = 1e-10;

/// Smallest m with I_m >= (1 - delta) I_N, by doubling then bisection.
RedundancyResult m_delta_search(const ModelParams& params, const ObservableAngle& obs,
                                double delta, const RedundancyOptions& options = {});

struct Completeness {
  double i_n = 0.0;      // I_N(sigma), bits
  double h_sigma = 0.0;  // H(sigma) on the reduced system state
  double ratio = 1.0;    // i_n / h_sigma; 1 when h_sigma vanishes
  bool converged = true;
};

Completeness completeness(const ModelParams& params, const ObservableAngle& obs,
                          const RedundancyOptions& options = {});
double completeness_check(const ModelParams& params, const ObservableAngle& obs,
                          const RedundancyOptions& options = {});

/// |I_m(sigma) - I(sigma : pi)|. m must satisfy m_delta(pi) <= m <= N/2;
/// throws std::domain_error otherwise.
double theorem_identity_gap(const ModelParams& params, const ObservableAngle& obs,
                            std::size_t m, double delta = 0.1,
                            const RedundancyOptions& options = {});

/// Positive mu* with H2(cos^2(mu*/2)) = delta, by bisection on (0, pi/2].
double bound_mu(double delta);

}  // namespace qdarwin
