#include "qdarwin/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qdarwin/rng.hpp"

namespace qdarwin {

namespace {

using std::numbers::pi;

double h_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Mutual information of a 2 x k table stored row-major; tiny negatives from
// rounding are treated as zero.
template <std::size_t K>
double table_mi(const std::array<double, 2 * K>& p) {
  double h_joint = 0.0, row0 = 0.0, row1 = 0.0, h_cols = 0.0;
  for (std::size_t j = 0; j < K; ++j) {
    const double a = std::max(p[j], 0.0), b = std::max(p[K + j], 0.0);
    h_joint += h_term(a) + h_term(b);
    row0 += a;
    row1 += b;
    h_cols += h_term(a + b);
  }
  return std::max(0.0, h_term(row0) + h_term(row1) + h_cols - h_joint);
}

// Binary ensemble of conditional span operators tau_i = (t_i + r_i . sigma) / 2.
struct Ensemble {
  std::array<double, 2> t{};
  std::array<Eigen::Vector3d, 2> r;
};

Ensemble ensemble_of(const EffectiveState& state, const ObservableAngle& obs) {
  Ensemble e;
  for (int i = 0; i < 2; ++i) {
    const Mat2c tau = state.conditional(obs, i);
    e.t[i] = tau.trace().real();
    e.r[i] = bloch_vector(tau);
  }
  return e;
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double projective_mi(const Ensemble& e, double theta, double phi) {
  const Eigen::Vector3d n = direction(theta, phi);
  std::array<double, 4> p{};
  for (int i = 0; i < 2; ++i) {
    const double proj = n.dot(e.r[i]);
    p[2 * i] = 0.5 * (e.t[i] + proj);
    p[2 * i + 1] = 0.5 * (e.t[i] - proj);
  }
  return table_mi<2>(p);
}

// Three rank-1 elements from (theta1, phi1, theta2, phi2, tau): the first two
// directions are free, t = sin^2(tau) splits their weight, and the third
// element closes the identity.
struct Povm3 {
  std::array<double, 3> w{};
  std::array<Eigen::Vector3d, 3> n;
};

Povm3 decode_povm3(std::span<const double> x) {
  Povm3 m;
  m.n[0] = direction(x[0], x[1]);
  m.n[1] = direction(x[2], x[3]);
  const double t = std::pow(std::sin(x[4]), 2);
  const Eigen::Vector3d v = t * m.n[0] + (1.0 - t) * m.n[1];
  const double s = 2.0 / (1.0 + v.norm());
  m.w = {s * t, s * (1.0 - t), 2.0 - s};
  if (m.w[2] > 1e-14) {
    m.n[2] = -(m.w[0] * m.n[0] + m.w[1] * m.n[1]) / m.w[2];
  } else {
    m.w[2] = 0.0;
    m.n[2] = Eigen::Vector3d::UnitZ();
  }
  return m;
}

double povm3_mi(const Ensemble& e, const Povm3& m) {
  std::array<double, 6> p{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) p[3 * i + j] = 0.5 * m.w[j] * (e.t[i] + m.n[j].dot(e.r[i]));
  }
  return table_mi<3>(p);
}

SpanPovm povm3_measurement(const Povm3& m) {
  std::vector<double> w;
  std::vector<Eigen::Vector3d> n;
  for (int j = 0; j < 3; ++j) {
    if (m.w[j] < 1e-14) continue;  // pruned
    w.push_back(m.w[j]);
    n.push_back(m.n[j]);
  }
  return SpanPovm::from_bloch(w, n);
}

struct Candidate {
  std::vector<double> x;
  double value;
};

// Keeps the `count` best candidates; ties stay in generation order.
std::vector<Candidate> best_candidates(std::vector<Candidate> all, int count) {
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(std::max(count, 1))));
  return all;
}

struct Refined {
  std::vector<double> x;
  double value = 0.0;
  InfoDiagnostics diag;
};

template <class F>
Refined refine(const F& objective, const std::vector<Candidate>& starts,
               const OptimizerOptions& options) {
  Refined out;
  out.value = -1.0;
  double worst = std::numeric_limits<double>::infinity();
  std::vector<double> values;
  for (const auto& start : starts) {
    const auto res = nelder_mead_minimize(
        [&](std::span<const double> x) { return -objective(x); }, start.x, options.simplex);
    double value = -res.value;
    std::vector<double> x = res.x;
    // The coarse point itself is a valid measurement; never lose it.
    if (start.value > value) {
      value = start.value;
      x = start.x;
    }
    values.push_back(value);
    out.diag.iterations += res.iterations;
    ++out.diag.restarts;
    worst = std::min(worst, value);
    if (value > out.value + options.tie_tol) {
      out.value = value;
      out.x = std::move(x);
    }
  }
  const auto agreeing = std::count_if(values.begin(), values.end(), [&](double v) {
    return v >= out.value - options.agreement_tol;
  });
  out.diag.converged = values.size() < 2 || agreeing >= 2;
  out.diag.restart_spread = out.value - worst;
  return out;
}

InfoResult optimize_projective(const Ensemble& e, const OptimizerOptions& options) {
  const int g = std::max(options.grid_points, 2);
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(g) * g);
  for (int a = 0; a < g; ++a) {
    const double theta = (a + 0.5) * pi / g;
    for (int b = 0; b < g; ++b) {
      const double phi = 2 * pi * b / g;
      grid.push_back({{theta, phi}, projective_mi(e, theta, phi)});
    }
  }
  auto objective = [&](std::span<const double> x) { return projective_mi(e, x[0], x[1]); };
  Refined r = refine(objective, best_candidates(std::move(grid), options.restarts), options);
  InfoResult result;
  result.bits = r.value;
  result.measurement = SpanPovm::projective(r.x[0], r.x[1]);
  result.diagnostics = r.diag;
  return result;
}

InfoResult optimize_povm3(const Ensemble& e, const OptimizerOptions& options) {
  Rng rng(derive_seed(options.seed, SeedStream::povm_search, 0));
  std::vector<Candidate> coarse;
  coarse.reserve(static_cast<std::size_t>(options.povm3_samples));
  for (int s = 0; s < options.povm3_samples; ++s) {
    std::vector<double> x{std::acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * pi),
                          std::acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * pi),
                          std::asin(std::sqrt(rng.uniform()))};
    const double v = povm3_mi(e, decode_povm3(x));
    coarse.push_back({std::move(x), v});
  }
  auto objective = [&](std::span<const double> x) { return povm3_mi(e, decode_povm3(x)); };
  Refined r = refine(objective, best_candidates(std::move(coarse), options.restarts), options);
  InfoResult result;
  result.bits = r.value;
  result.measurement = povm3_measurement(decode_povm3(r.x));
  result.diagnostics = r.diag;
  return result;
}

}  // namespace

double accessible_info_pure_pair(double prior, double overlap) {
  if (!(prior >= 0.0 && prior <= 1.0)) throw std::invalid_argument("prior outside [0, 1]");
  if (!(std::abs(overlap) <= 1.0 + 1e-12)) throw std::invalid_argument("|overlap| > 1");
  overlap = std::clamp(overlap, -1.0, 1.0);
  if (prior == 0.5) {
    return 1.0 - binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - overlap * overlap)));
  }
  // |psi_0,1> = (cos b, +-sin b) with cos 2b = overlap; measure along
  // (cos t, sin t) and its orthogonal complement.
  const double b = 0.5 * std::acos(overlap);
  const std::array<double, 2> priors{prior, 1.0 - prior};
  auto mi = [&](double t) {
    std::array<double, 4> p{};
    for (int i = 0; i < 2; ++i) {
      const double s = i == 0 ? b : -b;
      const double c = std::cos(t - s);
      p[2 * i] = priors[i] * c * c;
      p[2 * i + 1] = priors[i] * (1.0 - c * c);
    }
    return table_mi<2>(p);
  };
  constexpr int kGrid = 256;
  std::vector<Candidate> grid;
  for (int a = 0; a < kGrid; ++a) {
    const double t = pi * a / kGrid;
    grid.push_back({{t}, mi(t)});
  }
  OptimizerOptions options;
  options.restarts = 4;
  options.simplex.initial_step = pi / kGrid;
  options.simplex.x_tol = 1e-9;
  options.simplex.f_tol = 1e-14;
  const Refined r = refine([&](std::span<const double> x) { return mi(x[0]); },
                           best_candidates(std::move(grid), options.restarts), options);
  return r.value;
}

InfoResult optimize_info(const EffectiveState& state, const ObservableAngle& obs,
                         MeasurementFamily family, const OptimizerOptions& options) {
  const Ensemble e = ensemble_of(state, obs);
  switch (family) {
    case MeasurementFamily::projective2:
      return optimize_projective(e, options);
    case MeasurementFamily::povm3:
      return optimize_povm3(e, options);
  }
  throw std::invalid_argument("unknown measurement family");
}

std::vector<Fragment> sample_fragments(const ModelParams& params, std::size_t m,
                                       const FragmentPolicy& policy) {
  const std::size_t n = params.n_env();
  if (m > n) throw std::invalid_argument("fragment size exceeds environment");
  const bool canonical =
      policy.kind == FragmentPolicy::Kind::canonical ||
      (policy.kind == FragmentPolicy::Kind::automatic && params.uniform_actions()) || m == 0 ||
      m == n;
  if (canonical) return {Fragment::first(m)};
  if (policy.samples < 1) throw std::invalid_argument("fragment policy needs at least one sample");

  Rng rng(derive_seed(params.seed, SeedStream::fragments, m));
  std::vector<Fragment> out;
  std::vector<std::size_t> pool(n);
  for (int s = 0; s < policy.samples; ++s) {
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(pool[k], pool[j]);
    }
    out.push_back(Fragment::of({pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m)}, n));
  }
  return out;
}

InfoResult optimal_fragment_info(const BranchState& state, const ModelParams& params,
                                 const ObservableAngle& obs, std::size_t m,
                                 const FragmentPolicy& policy, MeasurementFamily family,
                                 const OptimizerOptions& options) {
  const auto fragments = sample_fragments(params, m, policy);
  std::vector<InfoResult> results;
  results.reserve(fragments.size());
  for (std::size_t s = 0; s < fragments.size(); ++s) {
    OptimizerOptions opts = options;
    opts.seed = derive_seed(options.seed ^ params.seed, SeedStream::povm_search, m * 4096 + s);
    results.push_back(optimize_info(reduce(state, fragments[s]), obs, family, opts));
  }
  std::vector<std::size_t> order(results.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return results[a].bits < results[b].bits; });
  InfoResult median = results[order[(order.size() - 1) / 2]];
  median.diagnostics.min_bits = results[order.front()].bits;
  median.diagnostics.max_bits = results[order.back()].bits;
  median.diagnostics.converged =
      std::all_of(results.begin(), results.end(),
                  [](const InfoResult& r) { return r.diagnostics.converged; });
  return median;
}

InfoResult optimal_fragment_info(const ModelParams& params, const ObservableAngle& obs,
                                 std::size_t m, const FragmentPolicy& policy,
                                 MeasurementFamily family, const OptimizerOptions& options) {
  return optimal_fragment_info(build_state(params), params, obs, m, policy, family, options);
}

}  // namespace qdarwin
