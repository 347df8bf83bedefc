#include "onoff/simulator.hpp"

#include <cmath>
#include <map>

#include "onoff/error.hpp"

namespace onoff {
namespace {

double next_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

bool below(double draw, const Rational& p) { return Rational::from_double(draw) < p; }

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Answer answer(QuerySymbol q, const MessageStore& store) {
  Answer out;
  for (Source s : kSources) {
    if (!contains(q, s)) continue;
    const auto& payload = store[s].payload;
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

Message decode(const Answer& ans, QuerySymbol q, Source x) {
  if (!contains(q, x)) {
    throw Error(ErrorCode::kNotDecodable,
                std::string("query ") + std::string(to_string(q)) + " omits source " + label(x));
  }
  if (ans.size() % size(q) != 0) {
    throw Error(ErrorCode::kNotDecodable, "answer length not a multiple of the query size");
  }
  const std::size_t block = ans.size() / size(q);
  const std::size_t offset = (q == QuerySymbol::kAB && x == Source::kB) ? block : 0;
  const auto first = ans.begin() + static_cast<std::ptrdiff_t>(offset);
  return Message{{first, first + static_cast<std::ptrdiff_t>(block)}};
}

Message random_message(std::mt19937_64& gen, std::size_t message_bits) {
  Message msg;
  msg.payload.resize(message_bits / 8);
  for (std::size_t i = 0; i < msg.payload.size(); i += 8) {
    std::uint64_t word = gen();
    for (std::size_t k = i; k < std::min(i + 8, msg.payload.size()); ++k) {
      msg.payload[k] = static_cast<std::uint8_t>(word & 0xFFU);
      word >>= 8;
    }
  }
  return msg;
}

void validate_config(const SessionConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (cfg.horizon == 0) throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  if (cfg.message_bits == 0 || cfg.message_bits % 8 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "message bits must be a positive multiple of 8");
  }
  if (cfg.initial[0] + cfg.initial[1] != Rational(1) || cfg.initial[0].sign() < 0 ||
      cfg.initial[1].sign() < 0) {
    throw Error(ErrorCode::kInvalidArgument, "initial distribution is not a probability vector");
  }
}

double StepStats::mean_size() const {
  if (trials == 0) return 0.0;
  const double n = static_cast<double>(trials);
  return static_cast<double>(histogram[0] + histogram[1] + 2 * histogram[2]) / n;
}

double StepStats::stderr_size() const {
  if (trials < 2) return 0.0;
  const double n = static_cast<double>(trials);
  const double mean = mean_size();
  const double second = static_cast<double>(histogram[0] + histogram[1] + 4 * histogram[2]) / n;
  const double var = std::max(0.0, second - mean * mean) * n / (n - 1);
  return std::sqrt(var / n);
}

LocalChannel::LocalChannel(std::size_t message_bits, std::uint64_t seed)
    : message_bits_(message_bits), seed_(seed) {}

void LocalChannel::begin_trial(std::uint64_t trial) {
  gen_.seed(mix(seed_ ^ mix(trial)));
  stores_.clear();
}

const MessageStore& LocalChannel::store_at(std::uint64_t t) {
  while (stores_.size() <= t) {
    MessageStore store;
    for (Source s : kSources) store.messages[index(s)] = random_message(gen_, message_bits_);
    stores_.push_back(std::move(store));
  }
  return stores_[t];
}

Answer LocalChannel::retrieve(std::uint64_t t, QuerySymbol q) { return answer(q, store_at(t)); }

bool LocalChannel::authentic(std::uint64_t t, Source x, const Message& msg) {
  return store_at(t)[x] == msg;
}

void LocalChannel::end_trial() { stores_.clear(); }

SessionStats run_session(const SessionConfig& cfg) {
  LocalChannel channel(cfg.message_bits, cfg.seed);
  return run_session(cfg, channel);
}

SessionStats run_session(const SessionConfig& cfg, RetrievalChannel& channel,
                         const TrialObserver& observer) {
  validate_config(cfg);
  const std::size_t horizon = cfg.horizon;
  const TransitionMatrix& m = cfg.matrix;
  EncoderCache encoders(m, cfg.encoder);

  SessionStats stats;
  stats.steps.resize(horizon + 1);
  for (std::size_t t = 0; t <= horizon; ++t) stats.steps[t].gap = cfg.pattern.gap(t);

  std::vector<Source> requests(horizon + 2);
  std::vector<QuerySymbol> queries(horizon + 1);
  for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
    std::mt19937_64 gen(cfg.seed + trial);
    requests[0] = below(next_uniform(gen), cfg.initial[0]) ? Source::kA : Source::kB;
    for (std::size_t i = 1; i < requests.size(); ++i) {
      requests[i] =
          below(next_uniform(gen), m.at(requests[i - 1], Source::kA)) ? Source::kA : Source::kB;
    }

    channel.begin_trial(trial);
    for (std::size_t t = 0; t <= horizon; ++t) {
      const Source x = requests[t];
      const UContext u{requests[cfg.pattern.last_on(t)], requests[t + 1]};
      const QuerySymbol q =
          sample_query(encoders.get(cfg.pattern.gap(t), x, u), next_uniform(gen));
      queries[t] = q;

      const Answer ans = channel.retrieve(t, q);
      auto& step = stats.steps[t];
      step.bytes += ans.size();
      step.trials += 1;
      step.histogram[index(q)] += 1;
      try {
        const Message msg = decode(ans, q, x);
        if (msg.payload.size() * 8 != cfg.message_bits || !channel.authentic(t, x, msg)) {
          stats.decode_failures += 1;
        }
      } catch (const Error&) {
        stats.decode_failures += 1;
      }
    }
    channel.end_trial();

    if (cfg.trace) stats.traces.push_back(TrialTrace{requests, queries});
    if (observer) observer(requests, queries);
  }
  return stats;
}

double empirical_leakage(const SessionConfig& cfg, std::size_t t) {
  if (t > cfg.horizon) {
    throw Error(ErrorCode::kInvalidArgument, "t beyond session horizon");
  }
  std::map<std::uint64_t, std::array<double, 4>> counts;  // q-prefix -> counts by U
  const TrialObserver observer = [&](const std::vector<Source>& requests,
                                     const std::vector<QuerySymbol>& queries) {
    std::uint64_t prefix = 0;
    for (std::size_t i = 0; i <= t; ++i) {
      prefix |= static_cast<std::uint64_t>(queries[i]) << (2 * i);
    }
    const UContext u{requests[cfg.pattern.last_on(t)], requests[t + 1]};
    counts[prefix][index(u)] += 1.0;
  };
  SessionConfig quiet = cfg;
  quiet.trace = false;
  LocalChannel channel(cfg.message_bits, cfg.seed);
  run_session(quiet, channel, observer);

  double total = 0.0;
  std::array<double, 4> by_u{};
  std::map<std::uint64_t, double> by_q;
  for (auto& [prefix, row] : counts) {
    for (std::size_t k = 0; k < 4; ++k) {
      row[k] += 1.0;
      by_u[k] += row[k];
      by_q[prefix] += row[k];
      total += row[k];
    }
  }
  double bits = 0.0;
  for (const auto& [prefix, row] : counts) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double joint = row[k] / total;
      bits += joint * std::log2(row[k] * total / (by_u[k] * by_q[prefix]));
    }
  }
  return std::max(0.0, bits);
}

}  // namespace onoff
