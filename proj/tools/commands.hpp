#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "onoff/markov.hpp"
#include "onoff/scheme.hpp"

namespace onoff::cli {

// Chain selection shared by every command: --matrix "a/b c/d e/f g/h" or --alpha p/q.
struct MatrixOptions {
  std::string matrix;
  std::string alpha;

  TransitionMatrix resolve() const;
  std::string label() const;
};

struct RateOptions {
  MatrixOptions chain;
  std::size_t alpha_steps = 0;  // > 0 sweeps alpha = k / (2 * steps), k = 0..steps
  std::string pattern;          // one row per t when set
  std::optional<std::size_t> gap;
  std::optional<std::size_t> gap_max;
  bool with_float = false;
};

struct VerifyOptions {
  MatrixOptions chain;
  std::string pattern = "ON,OFF";
  std::size_t t_max = 1;
  std::string initial = "uniform";  // or "stationary"
  bool with_float = false;
};

struct ConverseOptions {
  MatrixOptions chain;
  std::size_t gap = 1;
  std::optional<std::size_t> gap_max;
  std::size_t grid_n = 101;
};

struct SimulateOptions {
  MatrixOptions chain;
  std::string pattern = "ON,OFF";
  std::size_t horizon = 1;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::size_t bits = 1024;
  std::string trace_path;  // per-trial requests/queries, off when empty
  bool with_float = false;
};

struct NetOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 4791;
};

// Each command writes CSV to out and returns the process exit status.
int cmd_rate(const RateOptions& opts, std::ostream& out);
int cmd_verify(const VerifyOptions& opts, std::ostream& out);
int cmd_converse(const ConverseOptions& opts, std::ostream& out);
int cmd_simulate(const SimulateOptions& opts, std::ostream& out);
int cmd_fetch(const SimulateOptions& opts, const NetOptions& net, std::ostream& out);
int cmd_serve(const NetOptions& net, std::size_t bits, std::uint64_t seed);

// Quotes a CSV field if it contains a comma or quote.
std::string csv_field(const std::string& value);

}  // namespace onoff::cli
