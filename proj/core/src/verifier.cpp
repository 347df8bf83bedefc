#include "onoff/verifier.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <utility>

#include "onoff/error.hpp"

namespace onoff {
namespace {

std::uint64_t project_bits(std::uint32_t requests, const std::vector<std::size_t>& positions) {
  std::uint64_t key = 0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    key |= static_cast<std::uint64_t>((requests >> positions[k]) & 1U) << k;
  }
  return key;
}

std::uint64_t query_prefix(std::uint64_t queries, std::size_t count) {
  return count == 0 ? 0 : (queries & ((std::uint64_t{1} << (2 * count)) - 1));
}

struct Enumerator {
  const TransitionMatrix& m;
  const PrivacyPattern& pattern;
  std::size_t horizon;
  EncoderCache& cache;
  std::vector<JointCell>& out;

  void extend(std::uint32_t requests, std::size_t step, std::uint64_t queries,
              const Rational& mass) const {
    if (step > horizon) {
      out.push_back(JointCell{requests, queries, mass});
      return;
    }
    const auto at = [requests](std::size_t i) {
      return ((requests >> i) & 1U) ? Source::kB : Source::kA;
    };
    const UContext u{at(pattern.last_on(step)), at(step + 1)};
    const EncoderDistribution& w = cache.get(pattern.gap(step), at(step), u);
    for (QuerySymbol q : kQuerySymbols) {
      if (w[q].is_zero()) continue;
      extend(requests, step + 1,
             queries | (static_cast<std::uint64_t>(q) << (2 * step)), mass * w[q]);
    }
  }
};

}  // namespace

std::uint64_t pack_queries(const std::vector<QuerySymbol>& queries) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    key |= static_cast<std::uint64_t>(queries[i]) << (2 * i);
  }
  return key;
}

std::uint32_t pack_requests(const std::vector<Source>& requests) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    key |= static_cast<std::uint32_t>(index(requests[i])) << i;
  }
  return key;
}

Rational JointTable::total_mass() const {
  Rational sum(0);
  for (const auto& cell : cells) sum += cell.mass;
  return sum;
}

JointTable build_joint(const TransitionMatrix& m, const PrivacyPattern& pattern,
                       const SourceProbs& initial, std::size_t t, const EncoderPolicy& policy) {
  if (t > kMaxVerifierHorizon) {
    throw Error(ErrorCode::kHorizonTooLarge,
                "horizon " + std::to_string(t) + " exceeds " + std::to_string(kMaxVerifierHorizon));
  }
  JointTable table{t, pattern, initial, {}};
  EncoderCache cache(m, policy);
  const Enumerator walk{m, pattern, t, cache, table.cells};
  const std::size_t length = t + 2;
  for (std::uint32_t requests = 0; requests < (1U << length); ++requests) {
    Rational mass = initial[requests & 1U];
    for (std::size_t i = 0; i + 1 < length && !mass.is_zero(); ++i) {
      mass *= m.entries()[(requests >> i) & 1U][(requests >> (i + 1)) & 1U];
    }
    if (mass.is_zero()) continue;
    walk.extend(requests, 0, 0, mass);
  }
  return table;
}

bool check_decodability(const JointTable& j) {
  for (const auto& cell : j.cells) {
    if (cell.mass.is_zero()) continue;
    for (std::size_t i = 0; i <= j.horizon; ++i) {
      if (!contains(cell.query(i), cell.request(i))) return false;
    }
  }
  return true;
}

InformationResult conditional_information(const JointTable& j, const Projection& a,
                                          const Projection& b, const Projection& c) {
  using Key = std::uint64_t;
  std::map<std::tuple<Key, Key, Key>, Rational> p_abc;
  std::map<std::pair<Key, Key>, Rational> p_ac;
  std::map<std::pair<Key, Key>, Rational> p_bc;
  std::map<Key, Rational> p_c;
  for (const auto& cell : j.cells) {
    if (cell.mass.is_zero()) continue;
    const Key ka = a(cell);
    const Key kb = b(cell);
    const Key kc = c(cell);
    p_abc[{ka, kb, kc}] += cell.mass;
    p_ac[{kc, ka}] += cell.mass;
    p_bc[{kc, kb}] += cell.mass;
    p_c[kc] += cell.mass;
  }

  InformationResult result{true, Rational(0), 0.0};
  for (const auto& [kc, pc] : p_c) {
    const auto a_begin = p_ac.lower_bound({kc, 0});
    const auto b_begin = p_bc.lower_bound({kc, 0});
    for (auto ia = a_begin; ia != p_ac.end() && ia->first.first == kc; ++ia) {
      for (auto ib = b_begin; ib != p_bc.end() && ib->first.first == kc; ++ib) {
        const auto found = p_abc.find({ia->first.second, ib->first.second, kc});
        const Rational joint = found == p_abc.end() ? Rational(0) : found->second;
        const Rational lhs = joint * pc;
        const Rational rhs = ia->second * ib->second;
        if (lhs == rhs) continue;
        result.independent = false;
        const Rational diff = abs(lhs - rhs);
        if (diff > result.max_abs_gap) result.max_abs_gap = diff;
        if (!joint.is_zero()) {
          result.bits += joint.to_double() * std::log2((lhs / rhs).to_double());
        }
      }
    }
  }
  return result;
}

std::vector<std::size_t> privacy_set(const PrivacyPattern& pattern, std::size_t t) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i <= t; ++i) {
    if (pattern.on(i)) positions.push_back(i);
  }
  positions.push_back(t + 1);
  return positions;
}

PrivacyReport check_privacy(const JointTable& j, std::size_t t) {
  if (j.horizon != t) {
    throw Error(ErrorCode::kInvalidArgument, "privacy check needs a table of horizon t");
  }
  const auto positions = privacy_set(j.pattern, t);
  const auto info = conditional_information(
      j, [&](const JointCell& cell) { return project_bits(cell.requests, positions); },
      [](const JointCell& cell) { return cell.queries; },
      [](const JointCell&) { return std::uint64_t{0}; });
  return PrivacyReport{t, info.independent, info.max_abs_gap, info.bits};
}

Proposition1Terms proposition1_terms(const JointTable& j, std::size_t t) {
  if (t == 0 || j.horizon != t) {
    throw Error(ErrorCode::kInvalidArgument, "proposition terms need t >= 1 and horizon t");
  }
  const auto privacy = privacy_set(j.pattern, t);
  const std::size_t anchor = j.pattern.last_on(t);
  std::vector<std::size_t> past_on;  // B_t minus the context positions
  for (std::size_t i : privacy) {
    if (i != anchor && i != t + 1) past_on.push_back(i);
  }
  const std::vector<std::size_t> context = {anchor, t + 1};

  const Projection x_private = [&](const JointCell& c) { return project_bits(c.requests, privacy); };
  const Projection u = [&](const JointCell& c) { return project_bits(c.requests, context); };
  const Projection x_rest = [&](const JointCell& c) { return project_bits(c.requests, past_on); };
  const Projection q_past = [t](const JointCell& c) { return query_prefix(c.queries, t); };
  const Projection q_now = [t](const JointCell& c) {
    return static_cast<std::uint64_t>(c.query(t));
  };
  const Projection nothing = [](const JointCell&) { return std::uint64_t{0}; };
  // (U_t, Q_[t-1]) packed into one key; U needs 2 bits.
  const Projection u_and_past = [&](const JointCell& c) { return (q_past(c) << 2) | u(c); };

  const auto r1 = conditional_information(j, x_private, q_past, nothing);
  const auto r2 = conditional_information(j, u, q_past, nothing);
  const auto r3 = conditional_information(j, x_rest, q_now, u_and_past);
  return Proposition1Terms{r1.bits, r2.bits, r3.bits,
                           r1.independent && r2.independent && r3.independent};
}

Proposition1Terms proposition1_terms(const TransitionMatrix& m, const PrivacyPattern& pattern,
                                     std::size_t t, const EncoderPolicy& policy) {
  if (t == 0) {
    throw Error(ErrorCode::kInvalidArgument, "proposition terms need t >= 1");
  }
  return proposition1_terms(build_joint(m, pattern, uniform_probs(), t, policy), t);
}

Rational expected_cost(const JointTable& j, std::size_t t) {
  if (t > j.horizon) {
    throw Error(ErrorCode::kInvalidArgument, "t beyond table horizon");
  }
  Rational cost(0);
  for (const auto& cell : j.cells) {
    cost += cell.mass * Rational(static_cast<long>(size(cell.query(t))));
  }
  return cost;
}

bool VerificationResult::passed() const {
  const bool terms_ok = !terms || (terms->exact_zero && terms->i1 == 0.0 && terms->i2 == 0.0 &&
                                   terms->i3 == 0.0);
  return decodable && privacy.factorizes && privacy.max_abs_gap.is_zero() && terms_ok &&
         expected_cost == theorem_cost;
}

VerificationResult verify_case(const TransitionMatrix& m, const PrivacyPattern& pattern,
                               std::size_t t, const SourceProbs& initial) {
  const JointTable j = build_joint(m, pattern, initial, t);
  VerificationResult r;
  r.t = t;
  r.gap = pattern.gap(t);
  r.expected_cost = expected_cost(j, t);
  r.theorem_cost = optimal_inverse_rate(m, r.gap);
  r.decodable = check_decodability(j);
  r.privacy = check_privacy(j, t);
  if (t >= 1) r.terms = proposition1_terms(j, t);
  return r;
}

}  // namespace onoff
