#include "qdarwin/random_strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qdarwin/parallel.hpp"
#include "qdarwin/rng.hpp"

namespace qdarwin {

namespace {

using std::numbers::pi;

double h_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Weights turning the branch cross-products A_b conj(A_b') of an outcome into
// p(i, outcome) = sum_{b,b'} weight_i(b, b') A_b conj(A_b').
struct OutcomeWeights {
  std::array<Mat2c, 2> with_amps;     // includes c_b conj(c_b')
  std::array<Mat2c, 2> without_amps;  // for Monte-Carlo messages that carry c_b
  Eigen::Vector2d sigma_marginal;
};

OutcomeWeights outcome_weights(const BranchState& state, const Fragment& frag,
                               const ObservableAngle& obs) {
  const cplx g_rest = state.branch_overlap(frag.complement(state.n_env()).indices());
  const cplx g_frag = state.branch_overlap(frag.indices());
  Mat2c coherence;
  coherence << 1.0, std::conj(g_rest), g_rest, 1.0;
  Mat2c frag_overlap;  // <E_F^b'|E_F^b>
  frag_overlap << 1.0, std::conj(g_frag), g_frag, 1.0;

  OutcomeWeights w;
  for (int i = 0; i < 2; ++i) {
    const Mat2c proj = obs.projector(i);
    double marginal = 0.0;
    for (int b = 0; b < 2; ++b) {
      for (int bp = 0; bp < 2; ++bp) {
        w.without_amps[i](b, bp) = proj(bp, b) * coherence(b, bp);
        w.with_amps[i](b, bp) =
            w.without_amps[i](b, bp) * state.sys_amps[b] * std::conj(state.sys_amps[bp]);
        marginal += (w.with_amps[i](b, bp) * frag_overlap(b, bp)).real();
      }
    }
    w.sigma_marginal[i] = marginal;
  }
  return w;
}

double outcome_probability(const Mat2c& weight, cplx a0, cplx a1) {
  return (weight(0, 0) * std::norm(a0) + weight(1, 1) * std::norm(a1) +
          weight(0, 1) * a0 * std::conj(a1) + weight(1, 0) * a1 * std::conj(a0))
      .real();
}

// Visits every outcome string in lexicographic order (first qubit most
// significant) with the branch amplitudes A_b = <phi_j|E_F^b>.
template <class Visit>
void enumerate_outcomes(const BranchState& state, const Fragment& frag,
                        const std::vector<Mat2c>& bases, Visit&& visit) {
  const auto idx = frag.indices();
  const std::size_t m = idx.size();
  auto recurse = [&](auto&& self, std::size_t depth, std::uint64_t code, cplx a0,
                     cplx a1) -> void {
    if (depth == m) {
      visit(code, a0, a1);
      return;
    }
    const auto& rec = state.records[idx[depth]];
    for (int j = 0; j < 2; ++j) {
      const auto phi = bases[depth].col(j);
      self(self, depth + 1, (code << 1) | static_cast<std::uint64_t>(j), a0 * phi.dot(rec[0]),
           a1 * phi.dot(rec[1]));
    }
  };
  recurse(recurse, 0, 0, cplx(1.0), cplx(1.0));
}

void check_strategy(const Fragment& frag, const LocalStrategy& strat, std::size_t n_env) {
  if (strat.m() != frag.size()) {
    throw std::invalid_argument("strategy has " + std::to_string(strat.m()) +
                                " bases for a fragment of " + std::to_string(frag.size()));
  }
  if (!frag.empty() && frag.indices().back() >= n_env) {
    throw std::invalid_argument("fragment does not fit the environment");
  }
}

InfoResult exact_local(const BranchState& state, const Fragment& frag,
                       const ObservableAngle& obs, const LocalProduct& meas) {
  if (frag.size() > kMaxExactLocal) {
    throw std::invalid_argument("exact enumeration supports m <= " +
                                std::to_string(kMaxExactLocal));
  }
  const OutcomeWeights w = outcome_weights(state, frag, obs);
  double h_joint = 0.0, h_env = 0.0, marg0 = 0.0, marg1 = 0.0;
  enumerate_outcomes(state, frag, meas.bases, [&](std::uint64_t, cplx a0, cplx a1) {
    const double p0 = std::max(0.0, outcome_probability(w.with_amps[0], a0, a1));
    const double p1 = std::max(0.0, outcome_probability(w.with_amps[1], a0, a1));
    h_joint += h_term(p0) + h_term(p1);
    h_env += h_term(p0 + p1);
    marg0 += p0;
    marg1 += p1;
  });
  InfoResult r;
  r.bits = std::max(0.0, h_term(marg0) + h_term(marg1) + h_env - h_joint);
  r.measurement = meas;
  r.diagnostics.samples = std::size_t{1} << frag.size();
  return r;
}

InfoResult monte_carlo_local(const BranchState& state, const Fragment& frag,
                             const ObservableAngle& obs, const LocalProduct& meas,
                             const MonteCarloMethod& mc) {
  if (mc.samples < kMinMonteCarloSamples) {
    throw std::invalid_argument("Monte-Carlo needs at least " +
                                std::to_string(kMinMonteCarloSamples) + " samples");
  }
  const OutcomeWeights w = outcome_weights(state, frag, obs);
  const double h_sigma = h_term(w.sigma_marginal[0]) + h_term(w.sigma_marginal[1]);
  const auto idx = frag.indices();
  Rng rng(mc.seed);

  Mat2c start;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) start(b, bp) = state.sys_amps[b] * std::conj(state.sys_amps[bp]);
  }

  // Welford accumulation of the per-sample information H(sigma) - H(sigma|e).
  double mean = 0.0, m2 = 0.0;
  for (std::size_t s = 0; s < mc.samples; ++s) {
    Mat2c msg = start;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const auto& rec = state.records[idx[t]];
      std::array<cplx, 2> a0, a1;
      std::array<double, 2> q;
      for (int j = 0; j < 2; ++j) {
        const auto phi = meas.bases[t].col(j);
        a0[j] = phi.dot(rec[0]);
        a1[j] = phi.dot(rec[1]);
        q[j] = msg(0, 0).real() * std::norm(a0[j]) + msg(1, 1).real() * std::norm(a1[j]);
      }
      const int j = rng.uniform() * (q[0] + q[1]) < q[0] ? 0 : 1;
      msg(0, 0) *= std::norm(a0[j]);
      msg(1, 1) *= std::norm(a1[j]);
      msg(0, 1) *= a0[j] * std::conj(a1[j]);
      msg(1, 0) *= a1[j] * std::conj(a0[j]);
      msg /= q[j];
    }
    double u0 = 0.0, u1 = 0.0;
    for (int b = 0; b < 2; ++b) {
      for (int bp = 0; bp < 2; ++bp) {
        u0 += (w.without_amps[0](b, bp) * msg(b, bp)).real();
        u1 += (w.without_amps[1](b, bp) * msg(b, bp)).real();
      }
    }
    u0 = std::max(u0, 0.0);
    u1 = std::max(u1, 0.0);
    const double total = u0 + u1;
    const double value = h_sigma - h_term(u0 / total) - h_term(u1 / total);
    const double delta = value - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (value - mean);
  }
  const auto n = static_cast<double>(mc.samples);
  const double stderr_bits = std::sqrt(m2 / (n - 1.0) / n);
  if (stderr_bits > kMaxMonteCarloStderr) {
    throw std::runtime_error("Monte-Carlo standard error " + std::to_string(stderr_bits) +
                             " bits exceeds " + std::to_string(kMaxMonteCarloStderr));
  }
  InfoResult r;
  r.bits = std::max(0.0, mean);
  r.measurement = meas;
  r.diagnostics.stderr_bits = stderr_bits;
  r.diagnostics.samples = mc.samples;
  return r;
}

}  // namespace

Mat2c LocalBasis::vectors() const {
  const Eigen::Vector3d n = bloch.normalized();
  const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phi = std::atan2(n.y(), n.x());
  const cplx g = std::polar(1.0, phase);
  Mat2c v;
  v.col(0) = g * bloch_state(theta, phi);
  v.col(1) = g * Vec2c(-std::polar(std::sin(theta / 2), -phi), std::cos(theta / 2));
  return v;
}

LocalProduct LocalStrategy::measurement() const {
  LocalProduct p;
  p.bases.reserve(bases.size());
  for (const auto& b : bases) p.bases.push_back(b.vectors());
  return p;
}

LocalStrategy LocalStrategy::prefix(std::size_t m) const {
  if (m > bases.size()) throw std::invalid_argument("prefix longer than strategy");
  return LocalStrategy{{bases.begin(), bases.begin() + static_cast<std::ptrdiff_t>(m)}, seed};
}

LocalStrategy sample_strategy(std::size_t m, std::uint64_t seed) {
  LocalStrategy s;
  s.seed = seed;
  s.bases.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Rng rng(derive_seed(seed, SeedStream::strategy_basis, k));
    // Uniform direction on the sphere: z uniform in [-1, 1], azimuth uniform.
    const double z = rng.uniform(-1.0, 1.0);
    const double az = rng.uniform(0.0, 2 * pi);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    s.bases.push_back(LocalBasis{{rho * std::cos(az), rho * std::sin(az), z},
                                 rng.uniform(0.0, 2 * pi)});
  }
  return s;
}

InfoResult info_local(const BranchState& state, const Fragment& frag, const ObservableAngle& obs,
                      const LocalStrategy& strat, const LocalMethod& method) {
  check_strategy(frag, strat, state.n_env());
  const LocalProduct meas = strat.measurement();
  // Nothing measured: exactly zero rather than H(sigma) - H(sigma) in floating point.
  if (frag.empty()) return InfoResult{0.0, meas, {}};
  if (std::holds_alternative<ExactMethod>(method)) return exact_local(state, frag, obs, meas);
  return monte_carlo_local(state, frag, obs, meas, std::get<MonteCarloMethod>(method));
}

InfoResult info_local(const ModelParams& params, const ObservableAngle& obs,
                      const LocalStrategy& strat, const LocalMethod& method) {
  if (strat.m() > params.n_env()) throw std::invalid_argument("strategy larger than environment");
  return info_local(build_state(params), Fragment::first(strat.m()), obs, strat, method);
}

JointDistribution local_joint_distribution(const BranchState& state, const Fragment& frag,
                                           const ObservableAngle& obs, const LocalProduct& meas) {
  if (meas.bases.size() != frag.size()) {
    throw std::invalid_argument("one local basis per fragment qubit is required");
  }
  if (frag.size() > kMaxExactLocal) throw std::invalid_argument("fragment too large to tabulate");
  meas.validate();
  const OutcomeWeights w = outcome_weights(state, frag, obs);
  Eigen::MatrixXd p(2, Eigen::Index{1} << frag.size());
  enumerate_outcomes(state, frag, meas.bases, [&](std::uint64_t code, cplx a0, cplx a1) {
    for (int i = 0; i < 2; ++i) {
      p(i, static_cast<Eigen::Index>(code)) = outcome_probability(w.with_amps[i], a0, a1);
    }
  });
  return JointDistribution(std::move(p));
}

std::vector<Fig1cRow> fig1c_curve(const ModelParams& params, std::span<const double> mu_grid,
                                  std::span<const std::size_t> m_grid,
                                  const Fig1cOptions& options) {
  if (options.replicas < 1) throw std::invalid_argument("replicas must be positive");
  const std::size_t n = params.n_env();
  std::size_t max_m = 0;
  for (std::size_t m : m_grid) {
    if (m > n) throw std::invalid_argument("m grid exceeds the environment size");
    max_m = std::max(max_m, m);
  }
  const BranchState state = build_state(params);
  const auto replicas = static_cast<std::size_t>(options.replicas);

  struct Point {
    double bits;
    double stderr_bits;
  };
  // One task per (mu, replica); each walks the whole m grid.
  const auto per_task = parallel_map<std::vector<Point>>(
      mu_grid.size() * replicas, options.threads, [&](std::size_t task) {
        const ObservableAngle obs{mu_grid[task / replicas]};
        const std::uint64_t strat_seed =
            derive_seed(params.seed, SeedStream::replicas, task % replicas);
        const LocalStrategy full = sample_strategy(max_m, strat_seed);
        std::vector<Point> points;
        for (std::size_t m : m_grid) {
          LocalMethod method = ExactMethod{};
          if (m > options.exact_max_m) {
            method = MonteCarloMethod{options.mc_samples,
                                      derive_seed(strat_seed, SeedStream::monte_carlo, m)};
          }
          const InfoResult r =
              info_local(state, Fragment::first(m), obs, full.prefix(m), method);
          points.push_back({r.bits, r.diagnostics.stderr_bits});
        }
        return points;
      });

  std::vector<Fig1cRow> rows;
  for (std::size_t a = 0; a < mu_grid.size(); ++a) {
    for (std::size_t g = 0; g < m_grid.size(); ++g) {
      const std::size_t m = m_grid[g];
      const std::string method = m > options.exact_max_m ? "monte_carlo" : "exact";
      double mean = 0.0;
      for (std::size_t r = 0; r < replicas; ++r) mean += per_task[a * replicas + r][g].bits;
      mean /= static_cast<double>(replicas);
      double se = per_task[a * replicas][g].stderr_bits;
      if (replicas > 1) {
        double ss = 0.0;
        for (std::size_t r = 0; r < replicas; ++r) {
          ss += std::pow(per_task[a * replicas + r][g].bits - mean, 2);
        }
        se = std::sqrt(ss / static_cast<double>(replicas - 1) / static_cast<double>(replicas));
      }
      rows.push_back({mu_grid[a], m, mean, se, method, options.replicas});
      if (replicas > 1) {
        const Point& first = per_task[a * replicas][g];
        rows.push_back({mu_grid[a], m, first.bits, first.stderr_bits, method, 1});
      }
    }
  }
  return rows;
}

}  // namespace qdarwin
