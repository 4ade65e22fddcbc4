// qdarwin: sweeps over the system-environment model, written as CSV.
//
//   qdarwin fig-a | fig-b | fig-c | sweep | bound | verify [flags]
//
// Options may also come from a key=value file given with --config; flags on
// the command line take precedence.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdarwin/sweeps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace qdarwin;
  CLI::App app{"Redundancy of system observables in a spin environment"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with default flag values");

  RunConfig cfg;
  int mu_points = 0;
  app.add_option("--n", cfg.n_env, "environment qubits")->check(CLI::Range(1, 10000));
  app.add_option("--action", cfg.action, "uniform action 'a' or range 'lo:hi' (pi forms allowed)")
      ->capture_default_str();
  app.add_option("--action-grid", cfg.action_points, "points on the action axis")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--mu-grid", mu_points, "points on [-pi/2, pi/2] (default 61, fig-c 13)")
      ->check(CLI::PositiveNumber);
  app.add_option("--m-grid", cfg.m_grid, "fragment sizes: 'lo:hi[:step]' or 'm1,m2,...'");
  app.add_option("--delta", cfg.delta, "information deficit")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte-Carlo samples per estimate")
      ->capture_default_str();
  app.add_option("--replicas", cfg.replicas, "random strategies averaged per point")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--exact-max-m", cfg.exact_max_m, "largest m evaluated exactly")
      ->capture_default_str()
      ->check(CLI::Range(0, 20));
  app.add_option("--instances", cfg.instances, "verify: random instances")->capture_default_str();
  app.add_option("--out", cfg.out, "output path ('-' for stdout)");
  app.add_option("--threads", cfg.threads, "workers (0 = available parallelism)")
      ->capture_default_str();

  auto* fig_a = app.add_subcommand("fig-a", "whole-environment information versus H(sigma)");
  auto* fig_b = app.add_subcommand("fig-b", "redundancy R_delta over the (mu, action) grid");
  auto* fig_c = app.add_subcommand("fig-c", "random local measurements on m qubits");
  auto* sweep = app.add_subcommand("sweep", "optimal fragment information on a (mu, action, m) grid");
  auto* bound = app.add_subcommand("bound", "largest |mu| allowed to be redundant");
  auto* verify = app.add_subcommand("verify", "compare fast paths against the dense oracle");
  for (auto* sub : {fig_a, fig_b, fig_c, sweep, bound, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (mu_points > 0) cfg.mu_points = mu_points;
  if (cfg.delta <= 0.0 || cfg.delta >= 1.0) {
    std::cerr << "--delta must lie strictly between 0 and 1\n";
    return kExitUsage;
  }

  try {
    if (*verify) {
      const VerifyReport report = run_verify(cfg);
      write_csv(cfg.out, verify_table(report));
      std::cerr << "verify: " << (report.pass() ? "pass" : "FAIL") << '\n';
      return report.pass() ? kExitOk : kExitVerifyFailed;
    }
    Table table;
    if (*fig_a) table = run_fig_a(cfg);
    if (*fig_b) table = run_fig_b(cfg);
    if (*fig_c) table = run_fig_c(cfg);
    if (*sweep) table = run_sweep(cfg);
    if (*bound) table = run_bound(cfg);
    write_csv(cfg.out, table);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
