#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "onoff/converse.hpp"
#include "onoff/error.hpp"
#include "onoff/netproto.hpp"
#include "onoff/simulator.hpp"
#include "onoff/verifier.hpp"

namespace onoff::cli {
namespace {

std::string fmt(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

// "p/q" plus, when requested, a trailing float column.
std::string exact(const Rational& value, bool with_float) {
  return with_float ? value.to_string() + "," + fmt(value.to_double()) : value.to_string();
}

std::string exact_header(const std::string& name, bool with_float) {
  return with_float ? name + "," + name + "_float" : name;
}

SessionConfig session_config(const SimulateOptions& opts) {
  SessionConfig cfg;
  cfg.matrix = opts.chain.resolve();
  cfg.pattern = PrivacyPattern::parse(opts.pattern);
  cfg.horizon = opts.horizon;
  cfg.trials = opts.trials;
  cfg.seed = opts.seed;
  cfg.message_bits = opts.bits;
  cfg.trace = !opts.trace_path.empty();
  return cfg;
}

int write_session(const SimulateOptions& opts, const SessionConfig& cfg,
                  const SessionStats& stats, std::ostream& out) {
  out << "t,gap," << exact_header("theory_inverse_rate", opts.with_float)
      << ",empirical_inverse_rate,stderr,trials\n";
  for (std::size_t t = 0; t < stats.steps.size(); ++t) {
    const auto& step = stats.steps[t];
    out << t << ',' << step.gap << ','
        << exact(optimal_inverse_rate(cfg.matrix, step.gap), opts.with_float) << ','
        << fmt(step.mean_size()) << ',' << fmt(step.stderr_size()) << ',' << step.trials << '\n';
  }
  if (!opts.trace_path.empty()) {
    std::ofstream trace(opts.trace_path);
    trace << "trial,requests,queries\n";
    for (std::size_t k = 0; k < stats.traces.size(); ++k) {
      trace << k << ',';
      for (Source x : stats.traces[k].requests) trace << label(x);
      trace << ',';
      for (std::size_t i = 0; i < stats.traces[k].queries.size(); ++i) {
        trace << (i ? " " : "") << to_string(stats.traces[k].queries[i]);
      }
      trace << '\n';
    }
  }
  if (stats.decode_failures != 0) {
    std::cerr << "decode failures: " << stats.decode_failures << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

TransitionMatrix MatrixOptions::resolve() const {
  if (!matrix.empty() && !alpha.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give --matrix or --alpha, not both");
  }
  if (!alpha.empty()) return symmetric_matrix(Rational::parse(alpha));
  if (!matrix.empty()) return parse_matrix(matrix);
  throw Error(ErrorCode::kInvalidArgument, "one of --matrix or --alpha is required");
}

std::string MatrixOptions::label() const {
  return alpha.empty() ? matrix : "alpha=" + Rational::parse(alpha).to_string();
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

int cmd_rate(const RateOptions& opts, std::ostream& out) {
  std::vector<std::pair<std::string, TransitionMatrix>> chains;
  if (opts.alpha_steps > 0) {
    const long steps = static_cast<long>(opts.alpha_steps);
    for (long k = 0; k <= steps; ++k) {
      const Rational alpha(k, 2 * steps);
      chains.emplace_back(alpha.to_string(), symmetric_matrix(alpha));
    }
  } else {
    const std::string label = opts.chain.alpha.empty()
                                  ? opts.chain.matrix
                                  : Rational::parse(opts.chain.alpha).to_string();
    chains.emplace_back(label, opts.chain.resolve());
  }

  std::vector<std::size_t> gaps;
  if (!opts.pattern.empty()) {
    const auto pattern = PrivacyPattern::parse(opts.pattern);
    for (std::size_t t = 0; t < pattern.size(); ++t) gaps.push_back(pattern.gap(t));
  } else if (opts.gap_max) {
    for (std::size_t g = 0; g <= *opts.gap_max; ++g) gaps.push_back(g);
  } else {
    gaps.push_back(opts.gap.value_or(1));
  }

  out << "alpha_or_matrix,gap," << exact_header("pi_a", opts.with_float) << ','
      << exact_header("pi_b", opts.with_float) << ','
      << exact_header("inverse_rate", opts.with_float) << '\n';
  for (const auto& [label, m] : chains) {
    for (std::size_t g : gaps) {
      const PiFloor pi = pi_floor(m, g);
      out << csv_field(label) << ',' << g << ',' << exact(pi.pi_a, opts.with_float) << ','
          << exact(pi.pi_b, opts.with_float) << ','
          << exact(Rational(2) - pi.pi_a - pi.pi_b, opts.with_float) << '\n';
    }
  }
  return 0;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out) {
  const TransitionMatrix m = opts.chain.resolve();
  const auto pattern = PrivacyPattern::parse(opts.pattern);
  SourceProbs initial = uniform_probs();
  if (opts.initial == "stationary") {
    initial = stationary_distribution(m);
  } else if (opts.initial != "uniform") {
    throw Error(ErrorCode::kInvalidArgument, "initial must be uniform or stationary");
  }

  out << "matrix,pattern,t,gap," << exact_header("expected_cost", opts.with_float) << ','
      << exact_header("theorem_cost", opts.with_float) << ",factorizes,I1,I2,I3\n";
  bool all_ok = true;
  for (std::size_t t = 0; t <= opts.t_max; ++t) {
    const VerificationResult r = verify_case(m, pattern, t, initial);
    all_ok = all_ok && r.passed();
    out << csv_field(opts.chain.label()) << ',' << csv_field(pattern.to_string()) << ',' << t
        << ',' << r.gap << ',' << exact(r.expected_cost, opts.with_float) << ','
        << exact(r.theorem_cost, opts.with_float) << ','
        << (r.privacy.factorizes && r.decodable ? "true" : "false") << ',';
    if (r.terms) {
      out << fmt(r.terms->i1) << ',' << fmt(r.terms->i2) << ',' << fmt(r.terms->i3);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  return all_ok ? 0 : 1;
}

int cmd_converse(const ConverseOptions& opts, std::ostream& out) {
  const TransitionMatrix m = opts.chain.resolve();
  out << "matrix,gap,pi_a,pi_b,z1_star,z2_star,optimum,brute_force_optimum,grid_n\n";
  const std::size_t first = opts.gap_max ? 0 : opts.gap;
  const std::size_t last = opts.gap_max ? *opts.gap_max : opts.gap;
  for (std::size_t g = first; g <= last; ++g) {
    const PiFloor pi = pi_floor(m, g);
    const LpSolution lp = lp_minimize(m, g);
    out << csv_field(opts.chain.label()) << ',' << g << ',' << pi.pi_a << ',' << pi.pi_b << ','
        << lp.z1 << ',' << lp.z2 << ',' << lp.optimum << ','
        << fmt(brute_force_min(m, g, opts.grid_n)) << ',' << opts.grid_n << '\n';
  }
  return 0;
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out) {
  const SessionConfig cfg = session_config(opts);
  return write_session(opts, cfg, run_session(cfg), out);
}

int cmd_fetch(const SimulateOptions& opts, const NetOptions& net, std::ostream& out) {
  const SessionConfig cfg = session_config(opts);
  return write_session(opts, cfg, net::fetch(net.host, net.port, cfg), out);
}

int cmd_serve(const NetOptions& net, std::size_t bits, std::uint64_t seed) {
  net::Server server(net.host, net.port, bits, seed);
  std::cerr << "serving on " << net.host << ':' << server.port() << '\n';
  server.run();
  return 0;
}

}  // namespace onoff::cli
