#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "onoff/markov.hpp"
#include "onoff/rational.hpp"

namespace onoff {

// Subset query. The numeric value doubles as the wire bitmask (bit0 = A, bit1 = B).
enum class QuerySymbol : std::uint8_t { kA = 1, kB = 2, kAB = 3 };

// Serialization and sampling order: {A} < {B} < {A,B}.
inline constexpr std::array<QuerySymbol, 3> kQuerySymbols = {QuerySymbol::kA, QuerySymbol::kB,
                                                              QuerySymbol::kAB};

constexpr std::size_t index(QuerySymbol q) { return static_cast<std::size_t>(q) - 1; }
constexpr std::size_t size(QuerySymbol q) { return q == QuerySymbol::kAB ? 2 : 1; }
constexpr QuerySymbol singleton(Source x) {
  return x == Source::kA ? QuerySymbol::kA : QuerySymbol::kB;
}
constexpr bool contains(QuerySymbol q, Source x) {
  return (static_cast<unsigned>(q) >> index(x)) & 1U;
}
std::string_view to_string(QuerySymbol q);

using QueryProbs = std::array<Rational, 3>;

// Per-column minimum of the bridge table at one gap.
struct PiFloor {
  Rational pi_a;
  Rational pi_b;
  std::size_t gap = 0;

  const Rational& operator[](Source s) const { return s == Source::kA ? pi_a : pi_b; }
};

// w(q | x, u): distribution of the query given the request and its context.
struct EncoderDistribution {
  QueryProbs probs;

  const Rational& operator[](QuerySymbol q) const { return probs[index(q)]; }
  Rational& operator[](QuerySymbol q) { return probs[index(q)]; }
};

// ON/OFF flags F_0..F_T with F_0 = ON. Times past the end read as OFF.
class PrivacyPattern {
 public:
  // Throws Error(kInvalidArgument) if empty or flags[0] is OFF.
  explicit PrivacyPattern(std::vector<bool> on_flags);

  // "ON,OFF,OFF"; case-insensitive tokens.
  static PrivacyPattern parse(std::string_view text);

  std::size_t size() const { return on_.size(); }
  bool on(std::size_t t) const { return t < on_.size() && on_[t]; }
  std::size_t last_on(std::size_t t) const;
  std::size_t gap(std::size_t t) const { return t - last_on(t); }

  std::string to_string() const;

  friend bool operator==(const PrivacyPattern&, const PrivacyPattern&) = default;

 private:
  std::vector<bool> on_;
};

// Minimum of p(x | u) over the contexts u that are possible at this gap.
// For strictly positive M that is all four contexts.
PiFloor pi_floor(const TransitionMatrix& m, std::size_t gap);

// 2 - pi(A) - pi(B): the least achievable expected number of downloaded messages.
Rational optimal_inverse_rate(const TransitionMatrix& m, std::size_t gap);

// w({x}|x,u) = pi(x)/p(x|u), w({A,B}|x,u) = 1 - pi(x)/p(x|u), w({other}|x,u) = 0.
// Throws Error(kImpossibleContext) if p(x|u) = 0 or u itself has zero probability.
EncoderDistribution encoder(const TransitionMatrix& m, std::size_t gap, Source x, UContext u);

// Same rule with precomputed ingredients; used by callers that cache pi and the bridge.
EncoderDistribution encoder(const PiFloor& pi, const BridgeDistribution& b, Source x);

// Marginal law of the query at this gap: p({x}) = pi(x), p({A,B}) = 1 - sum pi.
QueryProbs query_marginal(const TransitionMatrix& m, std::size_t gap);

// Inverse-CDF draw over the fixed symbol order. draw must lie in [0, 1).
QuerySymbol sample_query(const EncoderDistribution& dist, double draw);

// Optimal inverse rate at every t of the pattern, using gap g_t.
std::vector<Rational> plan_rate_profile(const TransitionMatrix& m, const PrivacyPattern& pattern);

// Query-encoder policy signature shared by the verifier and the simulator, so
// that alternative (e.g. deliberately leaky) encoders can be plugged in.
using EncoderPolicy =
    std::function<EncoderDistribution(const TransitionMatrix&, std::size_t, Source, UContext)>;

// The optimal encoder above, as a policy.
EncoderPolicy optimal_encoder();

// Always downloads only the requested message. Decodable but not private;
// used as a negative control.
EncoderPolicy revealing_encoder();

// Memoizes a policy over (gap, x, u) for one matrix.
class EncoderCache {
 public:
  EncoderCache(TransitionMatrix m, EncoderPolicy policy);

  const EncoderDistribution& get(std::size_t gap, Source x, UContext u);
  const TransitionMatrix& matrix() const { return matrix_; }

 private:
  TransitionMatrix matrix_;
  EncoderPolicy policy_;
  std::map<std::size_t, std::array<EncoderDistribution, 8>> by_gap_;
  std::map<std::size_t, std::array<bool, 8>> filled_;
};

}  // namespace onoff
