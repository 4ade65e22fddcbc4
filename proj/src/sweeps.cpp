#include "qdarwin/sweeps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdarwin/info.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/random_strategy.hpp"
#include "qdarwin/redundancy.hpp"

namespace qdarwin {

namespace {

double parse_number(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return x;
}

std::size_t parse_count(std::string_view s) {
  std::size_t x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a non-negative integer: '" + std::string(s) + "'");
  }
  return x;
}

int mu_points(const RunConfig& config, int fallback) {
  const int n = config.mu_points.value_or(fallback);
  if (n < 1) throw std::invalid_argument("mu grid needs at least one point");
  return n;
}

ModelParams params_for(const RunConfig& config, double action) {
  return ModelParams::uniform(config.n_env, action, config.seed);
}

RedundancyOptions redundancy_options(const RunConfig& config) {
  RedundancyOptions opts;
  opts.optimizer.seed = config.seed;
  return opts;
}

struct GridPoint {
  double mu;
  double action;
};

std::vector<GridPoint> mu_action_grid(const RunConfig& config, int default_mu) {
  const auto mus = mu_grid(mu_points(config, default_mu));
  const auto actions = action_axis(parse_action(config.action), config.action_points);
  std::vector<GridPoint> grid;
  for (double mu : mus) {
    for (double a : actions) grid.push_back({mu, a});
  }
  return grid;
}

}  // namespace

double parse_angle(const std::string& text) {
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_number(text);
  double scale = 1.0, divisor = 1.0;
  const std::string_view before(text.data(), pos);
  const std::string_view after(text.data() + pos + 2, text.size() - pos - 2);
  if (!before.empty()) {
    if (before.back() != '*') throw std::invalid_argument("bad angle: '" + text + "'");
    scale = parse_number(before.substr(0, before.size() - 1));
  }
  if (!after.empty()) {
    if (after.front() != '/') throw std::invalid_argument("bad angle: '" + text + "'");
    divisor = parse_number(after.substr(1));
    if (divisor == 0.0) throw std::invalid_argument("bad angle: '" + text + "'");
  }
  return scale * std::numbers::pi / divisor;
}

ActionSpec parse_action(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const double a = parse_angle(text);
    return {a, a, false};
  }
  ActionSpec spec{parse_angle(text.substr(0, colon)), parse_angle(text.substr(colon + 1)), true};
  if (spec.hi < spec.lo) throw std::invalid_argument("action range must satisfy lo <= hi");
  return spec;
}

std::vector<double> mu_grid(int count) {
  if (count < 1) throw std::invalid_argument("mu grid needs at least one point");
  if (count == 1) return {0.0};
  std::vector<double> grid;
  const double half_step = std::numbers::pi / 2 / (count - 1);
  for (int i = 0; i < count; ++i) grid.push_back((2 * i - (count - 1)) * half_step);
  return grid;
}

std::vector<double> action_axis(const ActionSpec& spec, int points) {
  if (!spec.range) return {spec.lo};
  if (points < 1) throw std::invalid_argument("action axis needs at least one point");
  std::vector<double> axis;
  for (int k = 1; k <= points; ++k) axis.push_back(spec.lo + k * (spec.hi - spec.lo) / points);
  return axis;
}

std::vector<std::size_t> parse_m_grid(const std::string& spec, std::size_t n_env) {
  std::vector<std::size_t> grid;
  if (spec.empty()) {
    for (std::size_t m = 0; m <= std::min<std::size_t>(10, n_env); ++m) grid.push_back(m);
    for (std::size_t m = 12; m <= std::min<std::size_t>(20, n_env); m += 2) grid.push_back(m);
    for (std::size_t m = 25; m <= n_env; m += 5) grid.push_back(m);
    if (grid.back() != n_env) grid.push_back(n_env);
    return grid;
  }
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string_view> parts;
    std::string_view rest(spec);
    for (auto c = rest.find(':'); c != std::string_view::npos; c = rest.find(':')) {
      parts.push_back(rest.substr(0, c));
      rest.remove_prefix(c + 1);
    }
    parts.push_back(rest);
    if (parts.size() > 3) throw std::invalid_argument("m grid range is lo:hi[:step]");
    const std::size_t lo = parse_count(parts[0]), hi = parse_count(parts[1]);
    const std::size_t step = parts.size() == 3 ? parse_count(parts[2]) : 1;
    if (step == 0 || hi < lo) throw std::invalid_argument("bad m grid range '" + spec + "'");
    for (std::size_t m = lo; m <= hi; m += step) grid.push_back(m);
  } else {
    std::string_view rest(spec);
    while (true) {
      const auto c = rest.find(',');
      grid.push_back(parse_count(rest.substr(0, c)));
      if (c == std::string_view::npos) break;
      rest.remove_prefix(c + 1);
    }
  }
  for (std::size_t m : grid) {
    if (m > n_env) throw std::invalid_argument("m grid value exceeds the environment size");
  }
  return grid;
}

Table run_fig_a(const RunConfig& config) {
  const auto grid = mu_action_grid(config, 61);
  const auto opts = redundancy_options(config);
  const auto results = parallel_map<Completeness>(grid.size(), config.threads, [&](std::size_t i) {
    return completeness(params_for(config, grid[i].action), ObservableAngle{grid[i].mu}, opts);
  });
  Table t{{"mu", "action", "i_n_bits", "h_sigma_bits", "ratio"}, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& c = results[i];
    t.add({grid[i].mu, grid[i].action, c.i_n, c.h_sigma, c.ratio});
  }
  return t;
}

Table run_fig_b(const RunConfig& config) {
  const auto grid = mu_action_grid(config, 61);
  const auto opts = redundancy_options(config);
  const double mu_star = bound_mu(config.delta);
  const auto results =
      parallel_map<RedundancyResult>(grid.size(), config.threads, [&](std::size_t i) {
        return m_delta_search(params_for(config, grid[i].action), ObservableAngle{grid[i].mu},
                              config.delta, opts);
      });
  Table t{{"mu", "action", "m_delta", "r_delta", "i_full_bits", "bound_mu_flag", "status",
           "converged"},
          {},
          {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = results[i];
    const Cell m = r.m_delta ? Cell{static_cast<std::int64_t>(*r.m_delta)} : Cell{std::string{}};
    const Cell rd = r.r_delta ? Cell{*r.r_delta} : Cell{std::string{}};
    t.add({grid[i].mu, grid[i].action, m, rd, r.i_full,
           std::int64_t{std::abs(grid[i].mu) < mu_star}, std::string(to_string(r.status)),
           std::int64_t{r.converged}});
  }
  return t;
}

Table run_fig_c(const RunConfig& config) {
  const ActionSpec spec = parse_action(config.action);
  const ModelParams params = spec.range
                                 ? ModelParams::random(config.n_env, spec.lo, spec.hi, config.seed)
                                 : params_for(config, spec.lo);
  const auto mus = mu_grid(mu_points(config, 13));
  const auto ms = parse_m_grid(config.m_grid, config.n_env);
  Fig1cOptions opts;
  opts.replicas = config.replicas;
  opts.exact_max_m = config.exact_max_m;
  opts.mc_samples = config.samples;
  opts.threads = config.threads;
  Table t{{"mu", "m", "mean_bits", "stderr_bits", "method", "replicas"}, {}, {}};
  for (const auto& r : fig1c_curve(params, mus, ms, opts)) {
    t.add({r.mu, static_cast<std::int64_t>(r.m), r.mean_bits, r.stderr_bits, r.method,
           std::int64_t{r.replicas}});
  }
  return t;
}

Table run_sweep(const RunConfig& config) {
  const auto grid = mu_action_grid(config, 61);
  const auto ms = parse_m_grid(config.m_grid, config.n_env);
  const auto opts = redundancy_options(config);
  struct Point {
    InfoResult info;
    double pointer;
  };
  const auto results =
      parallel_map<Point>(grid.size() * ms.size(), config.threads, [&](std::size_t i) {
        const GridPoint& g = grid[i / ms.size()];
        const ModelParams params = params_for(config, g.action);
        const BranchState state = build_state(params);
        const ObservableAngle obs{g.mu};
        return Point{optimal_fragment_info(state, params, obs, ms[i % ms.size()], opts.policy,
                                           opts.family, opts.optimizer),
                     info_via_pointer(obs, total_overlap(state))};
      });
  Table t{{"mu", "action", "m", "i_m_bits", "i_pointer_bits", "gap_bits", "min_bits", "max_bits",
           "converged"},
          {},
          {}};
  for (std::size_t i = 0; i < results.size(); ++i) {
    const GridPoint& g = grid[i / ms.size()];
    const auto& p = results[i];
    t.add({g.mu, g.action, static_cast<std::int64_t>(ms[i % ms.size()]), p.info.bits, p.pointer,
           std::abs(p.info.bits - p.pointer), p.info.diagnostics.min_bits,
           p.info.diagnostics.max_bits, std::int64_t{p.info.diagnostics.converged}});
  }
  return t;
}

Table run_bound(const RunConfig& config) {
  const double mu_star = bound_mu(config.delta);
  Table t{{"mu", "h2_cos2", "redundant_allowed"},
          {"delta=" + format_double(config.delta), "mu_star=" + format_double(mu_star)},
          {}};
  for (double mu : mu_grid(mu_points(config, 61))) {
    const double c = std::cos(mu / 2);
    const double h = binary_entropy(c * c);
    t.add({mu, h, std::int64_t{h <= config.delta}});
  }
  return t;
}

VerifyReport run_verify(const RunConfig& config) {
  VerifyOptions opts;
  opts.instances = config.instances;
  opts.max_env = config.max_env;
  opts.seed = config.seed;
  return run_oracle_equivalence(opts);
}

Table verify_table(const VerifyReport& report) {
  Table t{{"check", "comparisons", "max_error", "tolerance", "pass"},
          {"instances=" + std::to_string(report.instances),
           std::string("result=") + (report.pass() ? "pass" : "fail")},
          {}};
  for (const auto& c : report.checks) {
    t.add({c.name, static_cast<std::int64_t>(c.comparisons), c.max_error, c.tolerance,
           std::int64_t{c.pass()}});
  }
  return t;
}

}  // namespace qdarwin
