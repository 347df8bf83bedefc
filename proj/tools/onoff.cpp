#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "onoff/error.hpp"

namespace {

void add_chain(CLI::App* cmd, onoff::cli::MatrixOptions& chain) {
  cmd->add_option("--matrix", chain.matrix, "Row-major fractions, e.g. \"3/4 1/4 1/4 3/4\"");
  cmd->add_option("--alpha", chain.alpha, "Symmetric chain with switch probability p/q");
}

void add_session(CLI::App* cmd, onoff::cli::SimulateOptions& opts) {
  add_chain(cmd, opts.chain);
  cmd->add_option("--pattern", opts.pattern, "Privacy flags, e.g. ON,OFF,OFF");
  cmd->add_option("--horizon", opts.horizon, "Last query time T")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", opts.trials, "Independent sessions")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts.seed, "Base seed; trial k uses seed + k");
  cmd->add_option("--bits", opts.bits, "Message length L in bits");
  cmd->add_option("--trace", opts.trace_path, "Write per-trial requests and queries here");
  cmd->add_flag("--float", opts.with_float, "Add float columns next to exact ones");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ON-OFF private retrieval: rates, exact verification, simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "CSV destination (default stdout)");

  onoff::cli::RateOptions rate;
  auto* rate_cmd = app.add_subcommand("rate", "Optimal inverse download rate");
  add_chain(rate_cmd, rate.chain);
  rate_cmd->add_option("--alpha-steps", rate.alpha_steps,
                       "Sweep symmetric alpha = k/(2n) for k = 0..n");
  rate_cmd->add_option("--pattern", rate.pattern, "Emit one row per t of this pattern");
  rate_cmd->add_option("--gap", rate.gap, "Single gap (default 1)");
  rate_cmd->add_option("--gap-max", rate.gap_max, "Gaps 0..k");
  rate_cmd->add_flag("--float", rate.with_float);

  onoff::cli::VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Exact privacy/decodability/cost check");
  add_chain(verify_cmd, verify.chain);
  verify_cmd->add_option("--pattern", verify.pattern);
  verify_cmd->add_option("--t-max", verify.t_max);
  verify_cmd->add_option("--initial", verify.initial, "uniform or stationary");
  verify_cmd->add_flag("--float", verify.with_float);

  onoff::cli::ConverseOptions converse;
  auto* converse_cmd = app.add_subcommand("converse", "Closed-form LP bound vs grid search");
  add_chain(converse_cmd, converse.chain);
  converse_cmd->add_option("--gap", converse.gap);
  converse_cmd->add_option("--gap-max", converse.gap_max);
  converse_cmd->add_option("--grid-n", converse.grid_n)->check(CLI::Range(2, 100000));

  onoff::cli::SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo retrieval sessions");
  add_session(simulate_cmd, simulate);

  onoff::cli::SimulateOptions fetch;
  onoff::cli::NetOptions fetch_net;
  auto* fetch_cmd = app.add_subcommand("fetch", "Run sessions against a live server");
  add_session(fetch_cmd, fetch);
  fetch_cmd->add_option("--host", fetch_net.host);
  fetch_cmd->add_option("--port", fetch_net.port);

  onoff::cli::NetOptions serve_net;
  std::size_t serve_bits = 1024;
  std::uint64_t serve_seed = 0;
  auto* serve_cmd = app.add_subcommand("serve", "Reference retrieval server");
  serve_cmd->add_option("--bind", serve_net.host);
  serve_cmd->add_option("--port", serve_net.port);
  serve_cmd->add_option("--bits", serve_bits);
  serve_cmd->add_option("--seed", serve_seed);

  CLI11_PARSE(app, argc, argv);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot open " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    if (*rate_cmd) return onoff::cli::cmd_rate(rate, out);
    if (*verify_cmd) return onoff::cli::cmd_verify(verify, out);
    if (*converse_cmd) return onoff::cli::cmd_converse(converse, out);
    if (*simulate_cmd) return onoff::cli::cmd_simulate(simulate, out);
    if (*fetch_cmd) return onoff::cli::cmd_fetch(fetch, fetch_net, out);
    if (*serve_cmd) return onoff::cli::cmd_serve(serve_net, serve_bits, serve_seed);
  } catch (const onoff::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
