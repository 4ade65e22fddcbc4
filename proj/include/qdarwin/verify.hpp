#pragma once

// Randomized comparison of the branch-structure fast path against the dense
// oracle, shared by the test suite and the `verify` subcommand.

#include <cstdint>
#include <string>
#include <vector>

namespace qdarwin {

struct VerifyCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t comparisons = 0;
  bool pass() const { return max_error <= tolerance; }
};

struct VerifyReport {
  std::size_t instances = 0;
  std::vector<VerifyCheck> checks;
  bool pass() const;
};

struct VerifyOptions {
  std::size_t instances = 200;
  std::size_t max_env = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
};

/// Each instance draws N <= max_env, actions in [0, pi/4] (occasionally pinned
/// to 0 or pi/4), mu, a fragment, a span POVM and a local strategy, then
/// compares reduced states, joint distributions and exact local information.
VerifyReport run_oracle_equivalence(const VerifyOptions& options = {});

}  // namespace qdarwin
