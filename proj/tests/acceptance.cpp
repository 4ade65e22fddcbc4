// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--criterion <name>]
//
// Names: oracle, bound, theorem, fig1b, fig1a, fig1c, optimizer. Without a
// name every criterion runs. The exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdarwin/info.hpp"
#include "qdarwin/optimize.hpp"
#include "qdarwin/oracle.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/random_strategy.hpp"
#include "qdarwin/redundancy.hpp"
#include "qdarwin/rng.hpp"
#include "qdarwin/sweeps.hpp"
#include "qdarwin/verify.hpp"

using namespace qdarwin;

namespace {

constexpr double kQuarter = std::numbers::pi / 4;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(what + (ok ? "" : " [violated]"));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

void runtime_limit(Outcome& out, Clock::time_point t0, double limit) {
  const double t = seconds_since(t0);
  out.require(t < limit, "runtime " + fmt(t, 3) + " s < " + fmt(limit) + " s");
}

// Projective scan in the real plane of two pure states, polished by
// golden-section search. Independent of the optimizer's closed form.
double pure_pair_scan(double overlap) {
  const double s = std::sqrt(std::max(0.0, 1.0 - overlap * overlap));
  auto info = [&](double t) {
    const double c0 = std::pow(std::cos(t), 2);
    const double c1 = std::pow(std::cos(t) * overlap + std::sin(t) * s, 2);
    Eigen::MatrixXd p(2, 2);
    p << c0 / 2, (1 - c0) / 2, c1 / 2, (1 - c1) / 2;
    return mutual_information(JointDistribution(p));
  };
  const int n = 4000;
  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (info(std::numbers::pi * k / n) > info(std::numbers::pi * best / n)) best = k;
  }
  double lo = std::numbers::pi * (best - 1) / n, hi = std::numbers::pi * (best + 1) / n;
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - r * (hi - lo), b = lo + r * (hi - lo);
    if (info(a) > info(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return info((lo + hi) / 2);
}

void oracle_equivalence(Outcome& out) {
  const auto t0 = Clock::now();
  const VerifyReport report = run_oracle_equivalence({200, 8, 2024, 1e-10});
  out.require(report.instances == 200, "200 instances, N <= 8");
  for (const auto& c : report.checks) {
    out.require(c.pass(), c.name + " max err " + fmt(c.max_error, 3) + " <= 1e-10");
  }
  runtime_limit(out, t0, 120.0);
}

void bound_reproduction(Outcome& out) {
  const double mu = bound_mu(0.1);
  out.require(mu >= 0.225 && mu <= 0.235, "bound_mu(0.1) = " + fmt(mu) + " in [0.225, 0.235]");
  const double h = binary_entropy(std::pow(std::cos(0.23 / 2), 2));
  out.require(std::abs(h - 0.10) <= 0.005, "H2(cos^2(0.23/2)) = " + fmt(h) + " in 0.10 +- 0.005");
}

void theorem_identity(Outcome& out) {
  const auto t0 = Clock::now();
  const auto params = ModelParams::uniform(50, kQuarter);
  const auto mus = mu_grid(61);
  const std::vector<std::size_t> ms{5, 10, 15, 20, 25};
  const auto gaps = parallel_map<double>(mus.size() * ms.size(), 0, [&](std::size_t i) {
    const ObservableAngle obs{mus[i / ms.size()]};
    const double c = std::cos(obs.mu / 2);
    return std::abs(optimal_fragment_info(params, obs, ms[i % ms.size()]).bits -
                    (1.0 - binary_entropy(c * c)));
  });
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  out.require(worst <= 0.01,
              "max |I_m - (1 - H2(cos^2(mu/2)))| = " + fmt(worst, 3) + " <= 0.01 (61 mu x 5 m)");
  runtime_limit(out, t0, 300.0);
}

void fig1b_phenomenology(Outcome& out) {
  const auto t0 = Clock::now();
  const RunConfig cfg;
  const Table t = run_fig_b(cfg);
  const auto mus = mu_grid(61);
  const auto actions = action_axis(parse_action(cfg.action), cfg.action_points);
  const std::size_t na = actions.size();
  const double step = mus[1] - mus[0];
  auto r_at = [&](std::size_t i_mu, std::size_t i_a) -> std::optional<double> {
    const Cell& c = t.rows[i_mu * na + i_a][3];
    if (const double* v = std::get_if<double>(&c)) return *v;
    return std::nullopt;
  };
  auto r_or_zero = [&](std::size_t i_mu, std::size_t i_a) { return r_at(i_mu, i_a).value_or(0.0); };

  const std::size_t zero = 30;
  const auto r0 = r_at(zero, na - 1);
  out.require(r0 && *r0 == 50.0, "R(0, pi/4) = " + (r0 ? fmt(*r0) : std::string("undefined")));

  bool even = true, peak = true, inside = true;
  double widest = 0.0;
  // Window edges as grid offsets from mu = 0, over columns that have a window.
  std::optional<std::size_t> lo_edge, hi_edge;
  for (std::size_t a = 0; a < na; ++a) {
    std::optional<std::size_t> edge;
    for (std::size_t i = 0; i < mus.size(); ++i) {
      even &= r_at(i, a) == r_at(mus.size() - 1 - i, a);
      peak &= r_or_zero(zero, a) >= r_or_zero(i, a);
      if (r_or_zero(i, a) >= 2.0) {
        widest = std::max(widest, std::abs(mus[i]));
        inside &= std::abs(mus[i]) < 0.25;
        const std::size_t offset = i > zero ? i - zero : zero - i;
        edge = std::max(edge.value_or(0), offset);
      }
    }
    if (edge) {
      lo_edge = std::min(lo_edge.value_or(*edge), *edge);
      hi_edge = std::max(hi_edge.value_or(*edge), *edge);
    }
  }
  out.require(even, "R even in mu");
  out.require(peak, "R maximal at mu = 0 in every action column");
  out.require(inside, "all R >= 2 points inside |mu| < 0.25 (widest |mu| = " + fmt(widest, 4) + ")");
  const std::size_t spread = hi_edge ? *hi_edge - *lo_edge : 0;
  out.require(hi_edge && spread < 1,
              "window edge spread across actions = " + std::to_string(spread) +
                  " grid steps < 1 (edges at " + std::to_string(lo_edge.value_or(0)) + ".." +
                  std::to_string(hi_edge.value_or(0)) + " steps of " + fmt(step, 4) + ")");
  runtime_limit(out, t0, 900.0);
}

void fig1a_completeness(Outcome& out) {
  const auto mus = mu_grid(61);
  const auto full = parallel_map<Completeness>(mus.size(), 0, [&](std::size_t i) {
    return completeness(ModelParams::uniform(50, kQuarter), ObservableAngle{mus[i]});
  });
  double worst = 0.0;
  for (const auto& c : full) worst = std::max(worst, std::abs(c.ratio - 1.0));
  out.require(worst <= 1e-6, "a = pi/4: max |I_N/H - 1| = " + fmt(worst, 3) + " <= 1e-6");

  const std::vector<double> small{0.005, 0.01, 0.015, 0.02};
  const auto weak = parallel_map<double>(small.size() * mus.size(), 0, [&](std::size_t i) {
    return completeness(ModelParams::uniform(50, small[i / mus.size()]),
                        ObservableAngle{mus[i % mus.size()]})
        .i_n;
  });
  for (std::size_t a = 0; a < small.size(); ++a) {
    const double top = *std::max_element(weak.begin() + a * mus.size(), weak.begin() + (a + 1) * mus.size());
    out.require(top < 0.1, "a = " + fmt(small[a]) + ": max I_N = " + fmt(top, 4) + " bits < 0.1");
  }
}

void fig1c_phenomenology(Outcome& out) {
  const auto t0 = Clock::now();
  const auto params = ModelParams::random(50, 0.0, kQuarter, 0);
  const std::vector<double> mus{0.0, std::numbers::pi / 2};
  const auto ms = parse_m_grid("", 50);
  Fig1cOptions opts;
  opts.threads = 0;
  std::vector<Fig1cRow> means;
  for (const auto& r : fig1c_curve(params, mus, ms, opts)) {
    if (r.replicas == opts.replicas) means.push_back(r);
  }
  const std::size_t per_mu = ms.size();

  bool monotone = true;
  for (std::size_t g = 1; g < per_mu; ++g) {
    const auto& a = means[g - 1];
    const auto& b = means[g];
    const bool noisy = a.method == "monte_carlo" || b.method == "monte_carlo";
    const double slack = noisy ? 3 * std::hypot(a.stderr_bits, b.stderr_bits) : 1e-12;
    monotone &= b.mean_bits >= a.mean_bits - slack;
  }
  out.require(monotone, "mu = 0 mean non-decreasing in m");
  const double i_n = completeness(params, ObservableAngle{0.0}).i_n;
  const double at_n = means[per_mu - 1].mean_bits;
  out.require(at_n > 0.9 * i_n, "mu = 0 mean at m = N: " + fmt(at_n, 4) + " > 0.9 I_N = " + fmt(0.9 * i_n, 4));
  double conj = 0.0;
  for (std::size_t g = 0; g < per_mu; ++g) {
    if (means[per_mu + g].m <= 25) conj = std::max(conj, means[per_mu + g].mean_bits);
  }
  out.require(conj < 0.05, "mu = pi/2 max mean for m <= N/2: " + fmt(conj, 3) + " < 0.05");

  const auto agree = parallel_map<int>(100, 0, [&](std::size_t trial) {
    Rng rng(derive_seed(77, SeedStream::verify, trial));
    const ObservableAngle obs{rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2)};
    const std::size_t m = 1 + trial % 15;
    const auto strat = sample_strategy(m, derive_seed(77, SeedStream::replicas, trial));
    const double exact = info_local(params, obs, strat, ExactMethod{}).bits;
    const auto mc = info_local(params, obs, strat,
                               MonteCarloMethod{20000, derive_seed(77, SeedStream::monte_carlo, trial)});
    return std::abs(mc.bits - exact) <= 3 * mc.diagnostics.stderr_bits ? 1 : 0;
  });
  int hits = 0;
  for (int a : agree) hits += a;
  out.require(hits >= 99, "Monte Carlo within 3 se of exact in " + std::to_string(hits) + "/100 trials (m <= 15)");
  runtime_limit(out, t0, 900.0);
}

void optimizer_soundness(Outcome& out) {
  const auto t0 = Clock::now();
  struct Pair {
    double fast, brute;
  };
  const auto pairs = parallel_map<Pair>(50, 0, [&](std::size_t i) {
    Rng rng(derive_seed(31, SeedStream::verify, i));
    const std::size_t n = 2 + rng.below(5);
    ModelParams params;
    for (std::size_t k = 0; k < n; ++k) params.actions.push_back(rng.uniform(0.0, kQuarter));
    std::vector<std::size_t> idx(n);
    for (std::size_t k = 0; k < n; ++k) idx[k] = k;
    for (std::size_t k = n; k > 1; --k) std::swap(idx[k - 1], idx[rng.below(k)]);
    idx.resize(1 + rng.below(std::min<std::size_t>(4, n)));
    const Fragment frag = Fragment::of(idx, n);
    const ObservableAngle obs{rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2)};
    const double fast = optimize_info(reduce(build_state(params), frag), obs).bits;
    oracle::ExhaustiveGrid grid;
    grid.seed = i;
    return Pair{fast, oracle::dense_exhaustive_info(oracle::evolve_dense(params), frag, obs, grid).bits};
  });
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, std::abs(p.fast - p.brute));
  out.require(worst <= 1e-4, "50 instances: max |optimize_info - exhaustive| = " + fmt(worst, 3) + " <= 1e-4");

  double closed = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double o = k / 20.0;
    closed = std::max(closed, std::abs(accessible_info_pure_pair(0.5, o) - pure_pair_scan(o)));
  }
  out.require(closed <= 1e-6, "pure-pair closed form vs scan over 21 overlaps: " + fmt(closed, 3) + " <= 1e-6");
  runtime_limit(out, t0, 600.0);
}

struct Criterion {
  const char* name;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"oracle", "oracle equivalence", oracle_equivalence},
      {"bound", "redundancy bound", bound_reproduction},
      {"theorem", "fragment information equals pointer identity", theorem_identity},
      {"fig1b", "redundancy phenomenology", fig1b_phenomenology},
      {"fig1a", "whole-environment completeness", fig1a_completeness},
      {"fig1c", "random local measurements", fig1c_phenomenology},
      {"optimizer", "optimizer soundness", optimizer_soundness},
  };
  std::optional<std::string> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--criterion <name>]\n", argv[0]);
      return 1;
    }
  }
  bool any = false, all_pass = true;
  for (const auto& c : all) {
    if (only && *only != c.name) continue;
    any = true;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::string detail;
    for (const auto& n : out.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %s (%s, %.1f s): %s\n", out.pass ? "PASS" : "FAIL", c.name, c.title,
                seconds_since(t0), detail.c_str());
    std::fflush(stdout);
    all_pass &= out.pass;
  }
  if (!any) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only->c_str());
    return 1;
  }
  return all_pass ? 0 : 1;
}
