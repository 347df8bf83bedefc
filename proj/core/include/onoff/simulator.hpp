#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "onoff/markov.hpp"
#include "onoff/scheme.hpp"

namespace onoff {

// Fresh L-bit message W_{x,t}.
struct Message {
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Message&, const Message&) = default;
};

// Server-side messages of both sources at one time step.
struct MessageStore {
  std::array<Message, 2> messages;

  const Message& operator[](Source s) const { return messages[index(s)]; }
};

using Answer = std::vector<std::uint8_t>;

// Payloads of the sources in q, concatenated A then B.
Answer answer(QuerySymbol q, const MessageStore& store);

// Extracts W_x from an answer to q. Throws Error(kNotDecodable) if x is not
// in q or the answer length is not a multiple of |q|.
Message decode(const Answer& ans, QuerySymbol q, Source x);

// Uniform payload of message_bits / 8 bytes.
Message random_message(std::mt19937_64& gen, std::size_t message_bits);

struct SessionConfig {
  TransitionMatrix matrix = symmetric_matrix(Rational(1, 4));
  // Flags past the end of the pattern read as OFF.
  PrivacyPattern pattern{std::vector<bool>{true, false}};
  std::size_t horizon = 1;
  std::size_t message_bits = 1024;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  SourceProbs initial = uniform_probs();
  EncoderPolicy encoder = optimal_encoder();
  bool trace = false;
};

// Throws Error(kInvalidArgument) on trials == 0, horizon == 0, or a message
// size that is not a positive multiple of 8 bits.
void validate_config(const SessionConfig& cfg);

struct StepStats {
  std::size_t gap = 0;
  std::uint64_t bytes = 0;   // downloaded payload bytes, summed over trials
  std::uint64_t trials = 0;
  std::array<std::uint64_t, 3> histogram{};  // counts in kQuerySymbols order

  double mean_size() const;    // empirical E|Q_t|
  double stderr_size() const;  // standard error of that mean

  friend bool operator==(const StepStats&, const StepStats&) = default;
};

struct TrialTrace {
  std::vector<Source> requests;      // X_0..X_{T+1}
  std::vector<QuerySymbol> queries;  // Q_0..Q_T

  friend bool operator==(const TrialTrace&, const TrialTrace&) = default;
};

struct SessionStats {
  std::vector<StepStats> steps;  // one per t = 0..T
  std::uint64_t decode_failures = 0;
  std::vector<TrialTrace> traces;  // filled only when cfg.trace is set

  friend bool operator==(const SessionStats&, const SessionStats&) = default;
};

// Where answers come from: an in-process store or a remote server.
class RetrievalChannel {
 public:
  virtual ~RetrievalChannel() = default;

  virtual void begin_trial(std::uint64_t trial) = 0;
  virtual Answer retrieve(std::uint64_t t, QuerySymbol q) = 0;
  // Whether msg is exactly what the server holds for (x, t). Channels that
  // cannot see server state check only the length.
  virtual bool authentic(std::uint64_t t, Source x, const Message& msg) = 0;
  virtual void end_trial() = 0;
};

// Messages generated in-process, one fresh store per (trial, t).
class LocalChannel : public RetrievalChannel {
 public:
  LocalChannel(std::size_t message_bits, std::uint64_t seed);

  void begin_trial(std::uint64_t trial) override;
  Answer retrieve(std::uint64_t t, QuerySymbol q) override;
  bool authentic(std::uint64_t t, Source x, const Message& msg) override;
  void end_trial() override;

 private:
  const MessageStore& store_at(std::uint64_t t);

  std::size_t message_bits_;
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  std::vector<MessageStore> stores_;
};

// Called once per trial with the realized requests and queries.
using TrialObserver =
    std::function<void(const std::vector<Source>& requests, const std::vector<QuerySymbol>& queries)>;

// Each trial owns std::mt19937_64 seeded with seed + trial. Draw order per
// trial: X_0, then X_1..X_{T+1}, then Q_0..Q_T (one draw each, even when the
// query is deterministic). Draws are 53-bit uniforms compared exactly
// against rational probabilities.
SessionStats run_session(const SessionConfig& cfg);
SessionStats run_session(const SessionConfig& cfg, RetrievalChannel& channel,
                         const TrialObserver& observer = {});

// Plug-in mutual information (bits) between U_t = (X_{F^-(t)}, X_{t+1}) and
// Q_0..Q_t over the session's trials. Every observed query prefix gets one
// pseudo-count in each of the four U cells (add-one smoothing).
double empirical_leakage(const SessionConfig& cfg, std::size_t t);

}  // namespace onoff
