#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "onoff/markov.hpp"
#include "onoff/rational.hpp"
#include "onoff/scheme.hpp"

namespace onoff {

// Largest horizon build_joint will materialize. The table has up to
// 2^(t+2) * 2^(t+1) positive cells (each query has at most two admissible values).
inline constexpr std::size_t kMaxVerifierHorizon = 8;

// One cell of the joint law of (X_0..X_{t+1}, Q_0..Q_t).
struct JointCell {
  std::uint32_t requests = 0;  // bit i set iff X_i = B
  std::uint64_t queries = 0;   // 2 bits per step, value = QuerySymbol code
  Rational mass;

  Source request(std::size_t i) const { return ((requests >> i) & 1U) ? Source::kB : Source::kA; }
  QuerySymbol query(std::size_t i) const {
    return static_cast<QuerySymbol>((queries >> (2 * i)) & 3U);
  }
};

std::uint64_t pack_queries(const std::vector<QuerySymbol>& queries);
std::uint32_t pack_requests(const std::vector<Source>& requests);

// Exact joint distribution; zero-mass cells are omitted.
struct JointTable {
  std::size_t horizon = 0;
  PrivacyPattern pattern{std::vector<bool>{true}};
  SourceProbs initial = uniform_probs();
  std::vector<JointCell> cells;

  Rational total_mass() const;
};

// Enumerates every request trajectory up to t+1 and every query trajectory
// the policy can emit, multiplying chain and encoder probabilities.
// Throws Error(kHorizonTooLarge) for t > kMaxVerifierHorizon.
JointTable build_joint(const TransitionMatrix& m, const PrivacyPattern& pattern,
                       const SourceProbs& initial, std::size_t t,
                       const EncoderPolicy& policy = optimal_encoder());

// True iff every positive-mass cell has X_i in Q_i for all i.
bool check_decodability(const JointTable& j);

struct PrivacyReport {
  std::size_t t = 0;
  bool factorizes = false;
  Rational max_abs_gap;  // max |p(x_B, q) - p(x_B) p(q)| over the product of supports
  double mi_bits = 0.0;  // reporting only
};

// Privacy set truncated at t+1: {i <= t : F_i = ON} together with t+1.
// X_{t+2}, ... depend on Q_[t] only through X_{t+1}, so independence from
// this finite set is equivalent to independence from the full set.
std::vector<std::size_t> privacy_set(const PrivacyPattern& pattern, std::size_t t);

// Exact check that X over the privacy set is independent of Q_0..Q_t.
// Throws Error(kInvalidArgument) unless j.horizon == t.
PrivacyReport check_privacy(const JointTable& j, std::size_t t);

struct Proposition1Terms {
  double i1 = 0.0;  // I(X_B; Q_[t-1])
  double i2 = 0.0;  // I(U_t; Q_[t-1])
  double i3 = 0.0;  // I(X_B \ U_t; Q_t | U_t, Q_[t-1])
  bool exact_zero = false;  // all three factorizations hold exactly

  friend bool operator==(const Proposition1Terms&, const Proposition1Terms&) = default;
};

// The three vanishing terms of the induction step at time t >= 1, built from
// the exact joint under a uniform X_0. Each term is exactly 0.0 when the
// corresponding factorization holds in rational arithmetic.
Proposition1Terms proposition1_terms(const TransitionMatrix& m, const PrivacyPattern& pattern,
                                     std::size_t t,
                                     const EncoderPolicy& policy = optimal_encoder());
Proposition1Terms proposition1_terms(const JointTable& j, std::size_t t);

// E[|Q_t|]. Requires j.horizon >= t.
Rational expected_cost(const JointTable& j, std::size_t t);

// Exact conditional mutual information I(A; B | C) between projections of
// the table. independent is true iff p(a,b,c) p(c) = p(a,c) p(b,c) for every
// (a, b, c) in the product of the conditional supports.
struct InformationResult {
  bool independent = false;
  Rational max_abs_gap;
  double bits = 0.0;
};
using Projection = std::function<std::uint64_t(const JointCell&)>;
InformationResult conditional_information(const JointTable& j, const Projection& a,
                                          const Projection& b, const Projection& c);

// Everything the verifier reports for one (matrix, pattern, t).
struct VerificationResult {
  std::size_t t = 0;
  std::size_t gap = 0;
  Rational expected_cost;
  Rational theorem_cost;
  bool decodable = false;
  PrivacyReport privacy;
  std::optional<Proposition1Terms> terms;  // absent at t = 0

  bool passed() const;
};

VerificationResult verify_case(const TransitionMatrix& m, const PrivacyPattern& pattern,
                               std::size_t t, const SourceProbs& initial = uniform_probs());

}  // namespace onoff
