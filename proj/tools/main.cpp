#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace sqg::cli;
  CLI::App app{"squeezegate: spin-dependent squeezing gate simulator"};
  app.require_subcommand(1);
  RunOptions opt;
  std::string config;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config, "JSON experiment configuration");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
    sub->add_option("--seed", opt.seed, "reserved; no stochastic components")->capture_default_str();
  };
  auto* simulate = app.add_subcommand("simulate", "simulate a pulse schedule on spins and motion");
  auto* sweep = app.add_subcommand("sweep-overlap", "Toffoli overlap versus squeezing");
  auto* modes = app.add_subcommand("modes", "ion chain modes and sideband gaps");
  auto* traj = app.add_subcommand("trajectory", "phase-space trajectories per spin configuration");
  auto* estimate = app.add_subcommand("estimate", "gate timing and off-resonant error estimates");
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  for (auto* s : {simulate, sweep, modes, traj}) add_common(s, true);
  add_common(estimate, false);
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(opt);
    const json cfg = config.empty() ? json::object() : load_json(config);
    if (simulate->parsed()) return cmd_simulate(cfg, opt);
    if (sweep->parsed()) return cmd_sweep_overlap(cfg, opt);
    if (modes->parsed()) return cmd_modes(cfg, opt);
    if (traj->parsed()) return cmd_trajectory(cfg, opt);
    if (estimate->parsed()) return cmd_estimate(cfg, opt);
  } catch (const sqg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
