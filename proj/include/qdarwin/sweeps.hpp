#pragma once

// Parameter sweeps behind the command-line subcommands. Each returns a CSV
// table whose rows are in grid order (mu outer, then action, then m).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdarwin/csv.hpp"
#include "qdarwin/verify.hpp"

namespace qdarwin {

struct RunConfig {
  std::size_t n_env = 50;
  /// "value" for uniform actions or "lo:hi". fig-a, fig-b and sweep turn a
  /// range into an action axis; fig-c draws random actions from it. Values
  /// accept "pi" forms such as pi/4 or 0.5*pi.
  std::string action = "0:pi/4";
  int action_points = 25;
  std::optional<int> mu_points;  // 61 by default, 13 for fig-c
  std::string m_grid;            // "lo:hi[:step]", "1,2,5" or empty for the default
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::size_t samples = 20000;   // Monte-Carlo samples per local estimate
  int replicas = 8;
  std::string out;               // empty or "-" for stdout
  unsigned threads = 0;          // 0 = available parallelism
  std::size_t exact_max_m = 20;
  std::size_t instances = 200;   // verify
  std::size_t max_env = 8;       // verify
};

struct ActionSpec {
  double lo = 0.0;
  double hi = 0.0;
  bool range = false;
};

/// Parses a number, optionally written as [x*]pi[/d]. Throws std::invalid_argument.
double parse_angle(const std::string& text);
ActionSpec parse_action(const std::string& text);

/// count points symmetric about 0 on [-pi/2, pi/2]; the middle one is exactly 0.
std::vector<double> mu_grid(int count);
/// lo + k (hi - lo) / points for k = 1..points; a single value for a fixed action.
std::vector<double> action_axis(const ActionSpec& spec, int points);
/// Empty spec: 0..10, then every 2 up to 20, every 5 up to N, and N itself.
std::vector<std::size_t> parse_m_grid(const std::string& spec, std::size_t n_env);

/// Columns mu, action, i_n_bits, h_sigma_bits, ratio.
Table run_fig_a(const RunConfig& config);
/// Columns mu, action, m_delta, r_delta, i_full_bits, bound_mu_flag, status,
/// converged. m_delta and r_delta are empty when undefined.
Table run_fig_b(const RunConfig& config);
/// Columns mu, m, mean_bits, stderr_bits, method, replicas.
Table run_fig_c(const RunConfig& config);
/// Columns mu, action, m, i_m_bits, i_pointer_bits, gap_bits, min_bits,
/// max_bits, converged.
Table run_sweep(const RunConfig& config);
/// Comment lines delta and mu_star; columns mu, h2_cos2, redundant_allowed.
Table run_bound(const RunConfig& config);

VerifyReport run_verify(const RunConfig& config);
Table verify_table(const VerifyReport& report);

}  // namespace qdarwin
