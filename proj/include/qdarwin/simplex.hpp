#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qdarwin {

struct SimplexOptions {
  double initial_step = 0.1;
  double f_tol = 1e-8;  // spread of objective values over the simplex
  double x_tol = 1e-6;  // largest coordinate distance from the best vertex
  int max_evaluations = 4000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex (standard coefficients 1, 2, 1/2, 1/2).
SimplexResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                   const SimplexOptions& options = {});

}  // namespace qdarwin
