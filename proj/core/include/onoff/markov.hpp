#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "onoff/rational.hpp"

namespace onoff {

// Information source label. Source A is row/column 0 of every matrix.
enum class Source : std::uint8_t { kA = 0, kB = 1 };

inline constexpr std::array<Source, 2> kSources = {Source::kA, Source::kB};

constexpr std::size_t index(Source s) { return static_cast<std::size_t>(s); }
constexpr Source other(Source s) { return s == Source::kA ? Source::kB : Source::kA; }
char label(Source s);

using Matrix2 = std::array<std::array<Rational, 2>, 2>;

// Probability vector over {A, B}.
using SourceProbs = std::array<Rational, 2>;

SourceProbs uniform_probs();

// Row-stochastic 2x2 matrix of the request chain. Only constructible through
// validate_matrix, so every instance satisfies the stochastic invariants.
class TransitionMatrix {
 public:
  const Rational& at(Source from, Source to) const { return entries_[index(from)][index(to)]; }
  const Matrix2& entries() const { return entries_; }
  bool strictly_positive() const { return strictly_positive_; }

  // "a/b c/d e/f g/h" in row-major order.
  std::string to_string() const;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  friend TransitionMatrix validate_matrix(const Matrix2& raw);

  explicit TransitionMatrix(const Matrix2& entries);

  Matrix2 entries_;
  bool strictly_positive_ = false;
};

// Conditioning context of the encoder: the request at the latest ON time and
// the one-step lookahead request.
struct UContext {
  Source last_on;
  Source next;

  friend bool operator==(const UContext&, const UContext&) = default;
};

inline constexpr std::array<UContext, 4> kContexts = {
    UContext{Source::kA, Source::kA}, UContext{Source::kA, Source::kB},
    UContext{Source::kB, Source::kA}, UContext{Source::kB, Source::kB}};

constexpr std::size_t index(UContext u) { return 2 * index(u.last_on) + index(u.next); }
std::string to_string(UContext u);

// Law of the current request given its context and the gap t - F^-(t).
struct BridgeDistribution {
  SourceProbs probs;
  std::size_t gap = 0;

  const Rational& operator[](Source s) const { return probs[index(s)]; }
};

// Throws Error(kNotStochastic) unless every row sums to 1 with entries in [0,1].
TransitionMatrix validate_matrix(const Matrix2& raw);

// Symmetric chain [[1-alpha, alpha], [alpha, 1-alpha]].
TransitionMatrix symmetric_matrix(const Rational& alpha);

// Parses four row-major fractions ("3/4 1/4 1/4 3/4") or "alpha=p/q".
TransitionMatrix parse_matrix(std::string_view text);

Matrix2 identity_matrix();
Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs);

// Exact k-step transition matrix; power(M, 0) is the identity.
Matrix2 power(const TransitionMatrix& m, std::size_t k);

// p(x_t | u_t) = p(x_{t+1} | x_t) p(x_t | x_{F^-}) / p(x_{t+1} | x_{F^-}),
// with the factors read from M, M^gap and M^(gap+1).
//
// Throws Error(kDegenerateContext) when p(x_{t+1} | x_{F^-}) = 0, i.e. the
// context has zero probability under the chain.
BridgeDistribution bridge(const TransitionMatrix& m, std::size_t gap, UContext u);

// True iff the context has positive probability at this gap, i.e. bridge()
// is defined for it.
bool context_possible(const TransitionMatrix& m, std::size_t gap, UContext u);

// Stationary law of the chain. Requires the chain to leave each state with
// positive total probability (M_AB + M_BA > 0).
SourceProbs stationary_distribution(const TransitionMatrix& m);

}  // namespace onoff
