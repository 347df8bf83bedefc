#include "onoff/scheme.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "onoff/error.hpp"

namespace onoff {

std::string_view to_string(QuerySymbol q) {
  switch (q) {
    case QuerySymbol::kA: return "A";
    case QuerySymbol::kB: return "B";
    case QuerySymbol::kAB: return "AB";
  }
  return "?";
}

PrivacyPattern::PrivacyPattern(std::vector<bool> on_flags) : on_(std::move(on_flags)) {
  if (on_.empty() || !on_.front()) {
    throw Error(ErrorCode::kInvalidArgument, "privacy pattern must start with ON");
  }
}

PrivacyPattern PrivacyPattern::parse(std::string_view text) {
  std::vector<bool> flags;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string tok(text.substr(0, comma));
    std::erase_if(tok, [](unsigned char c) { return std::isspace(c); });
    std::transform(tok.begin(), tok.end(), tok.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (tok == "ON") {
      flags.push_back(true);
    } else if (tok == "OFF") {
      flags.push_back(false);
    } else {
      throw Error(ErrorCode::kParse, "bad privacy flag '" + tok + "'");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PrivacyPattern(std::move(flags));
}

std::size_t PrivacyPattern::last_on(std::size_t t) const {
  for (std::size_t i = std::min(t, on_.size() - 1);; --i) {
    if (on_[i]) return i;
  }
}

std::string PrivacyPattern::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < on_.size(); ++i) {
    if (i > 0) out += ',';
    out += on_[i] ? "ON" : "OFF";
  }
  return out;
}

PiFloor pi_floor(const TransitionMatrix& m, std::size_t gap) {
  std::array<std::optional<Rational>, 2> mins;
  for (UContext u : kContexts) {
    if (!context_possible(m, gap, u)) continue;
    const BridgeDistribution b = bridge(m, gap, u);
    for (Source x : kSources) {
      auto& slot = mins[index(x)];
      if (!slot || b[x] < *slot) slot = b[x];
    }
  }
  // Every row of M^(gap+1) has a positive entry, so both columns are filled.
  return PiFloor{*mins[0], *mins[1], gap};
}

Rational optimal_inverse_rate(const TransitionMatrix& m, std::size_t gap) {
  const PiFloor pi = pi_floor(m, gap);
  return Rational(2) - pi.pi_a - pi.pi_b;
}

EncoderDistribution encoder(const PiFloor& pi, const BridgeDistribution& b, Source x) {
  if (b[x].is_zero()) {
    throw Error(ErrorCode::kImpossibleContext,
                std::string("request ") + label(x) + " has zero probability in its context");
  }
  const Rational single = pi[x] / b[x];
  EncoderDistribution out{{Rational(0), Rational(0), Rational(0)}};
  out[singleton(x)] = single;
  out[QuerySymbol::kAB] = Rational(1) - single;
  return out;
}

EncoderDistribution encoder(const TransitionMatrix& m, std::size_t gap, Source x, UContext u) {
  if (!context_possible(m, gap, u)) {
    throw Error(ErrorCode::kImpossibleContext,
                "context " + to_string(u) + " has zero probability at gap " + std::to_string(gap));
  }
  return encoder(pi_floor(m, gap), bridge(m, gap, u), x);
}

QueryProbs query_marginal(const TransitionMatrix& m, std::size_t gap) {
  const PiFloor pi = pi_floor(m, gap);
  return {pi.pi_a, pi.pi_b, Rational(1) - pi.pi_a - pi.pi_b};
}

QuerySymbol sample_query(const EncoderDistribution& dist, double draw) {
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "draw outside [0,1)");
  }
  const Rational point = Rational::from_double(draw);
  Rational cumulative(0);
  for (QuerySymbol q : kQuerySymbols) {
    if (dist[q].is_zero()) continue;
    cumulative += dist[q];
    if (point < cumulative) return q;
  }
  throw Error(ErrorCode::kInvalidArgument, "encoder distribution does not sum to 1");
}

std::vector<Rational> plan_rate_profile(const TransitionMatrix& m, const PrivacyPattern& pattern) {
  std::vector<Rational> out;
  out.reserve(pattern.size());
  std::map<std::size_t, Rational> by_gap;
  for (std::size_t t = 0; t < pattern.size(); ++t) {
    const std::size_t g = pattern.gap(t);
    auto it = by_gap.find(g);
    if (it == by_gap.end()) it = by_gap.emplace(g, optimal_inverse_rate(m, g)).first;
    out.push_back(it->second);
  }
  return out;
}

EncoderPolicy optimal_encoder() {
  return [](const TransitionMatrix& m, std::size_t gap, Source x, UContext u) {
    return encoder(m, gap, x, u);
  };
}

EncoderPolicy revealing_encoder() {
  return [](const TransitionMatrix&, std::size_t, Source x, UContext) {
    EncoderDistribution out{{Rational(0), Rational(0), Rational(0)}};
    out[singleton(x)] = Rational(1);
    return out;
  };
}

EncoderCache::EncoderCache(TransitionMatrix m, EncoderPolicy policy)
    : matrix_(std::move(m)), policy_(std::move(policy)) {}

const EncoderDistribution& EncoderCache::get(std::size_t gap, Source x, UContext u) {
  const std::size_t slot = 2 * index(u) + index(x);
  auto& filled = filled_[gap];
  auto& table = by_gap_[gap];
  if (!filled[slot]) {
    table[slot] = policy_(matrix_, gap, x, u);
    filled[slot] = true;
  }
  return table[slot];
}

}  // namespace onoff
