#include "qdarwin/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdarwin {

SimplexResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                   const SimplexOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_minimize: empty parameter vector");

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.initial_step;
  std::vector<double> vals(n + 1);
  SimplexResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + t * (worst[d] - centroid[d]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    // Stable sort keeps ties in vertex order, so runs are reproducible.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    double f_spread = vals[worst] - vals[best];
    double x_spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t d = 0; d < n; ++d) {
        x_spread = std::max(x_spread, std::abs(pts[i][d] - pts[best][d]));
      }
    }
    if (f_spread <= options.f_tol && x_spread <= options.x_tol) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= options.max_evaluations) break;
    ++res.iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / static_cast<double>(n);
    }

    along(-1.0, trial, pts[worst]);
    const double f_reflect = eval(trial);
    if (f_reflect < vals[best]) {
      along(-2.0, trial2, pts[worst]);
      const double f_expand = eval(trial2);
      if (f_expand < f_reflect) {
        pts[worst] = trial2;
        vals[worst] = f_expand;
      } else {
        pts[worst] = trial;
        vals[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < vals[second]) {
      pts[worst] = trial;
      vals[worst] = f_reflect;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point.
    const bool outside = f_reflect < vals[worst];
    along(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double f_contract = eval(trial2);
    if (f_contract < (outside ? f_reflect : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d) pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
      vals[i] = eval(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(vals.begin(), vals.end()) - vals.begin());
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace qdarwin
