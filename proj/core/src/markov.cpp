#include "onoff/markov.hpp"

#include <sstream>
#include <vector>

#include "onoff/error.hpp"

namespace onoff {

char label(Source s) { return s == Source::kA ? 'A' : 'B'; }

std::string to_string(UContext u) { return {'(', label(u.last_on), ',', label(u.next), ')'}; }

SourceProbs uniform_probs() { return {Rational(1, 2), Rational(1, 2)}; }

TransitionMatrix::TransitionMatrix(const Matrix2& entries) : entries_(entries) {
  strictly_positive_ = true;
  for (const auto& row : entries_) {
    for (const auto& p : row) {
      if (p.is_zero()) strictly_positive_ = false;
    }
  }
}

std::string TransitionMatrix::to_string() const {
  std::ostringstream os;
  os << entries_[0][0] << ' ' << entries_[0][1] << ' ' << entries_[1][0] << ' ' << entries_[1][1];
  return os.str();
}

TransitionMatrix validate_matrix(const Matrix2& raw) {
  for (std::size_t r = 0; r < 2; ++r) {
    for (const auto& p : raw[r]) {
      if (p < Rational(0) || p > Rational(1)) {
        throw Error(ErrorCode::kNotStochastic,
                    "entry " + p.to_string() + " outside [0,1] in row " + std::to_string(r));
      }
    }
    const Rational sum = raw[r][0] + raw[r][1];
    if (sum != Rational(1)) {
      throw Error(ErrorCode::kNotStochastic,
                  "row " + std::to_string(r) + " sums to " + sum.to_string());
    }
  }
  return TransitionMatrix(raw);
}

TransitionMatrix symmetric_matrix(const Rational& alpha) {
  const Rational stay = Rational(1) - alpha;
  return validate_matrix({{{stay, alpha}, {alpha, stay}}});
}

TransitionMatrix parse_matrix(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  constexpr std::string_view kAlpha = "alpha=";
  if (text.substr(0, kAlpha.size()) == kAlpha) {
    return symmetric_matrix(Rational::parse(text.substr(kAlpha.size())));
  }
  std::vector<std::string> tokens;
  std::istringstream is{std::string(text)};
  for (std::string tok; is >> tok;) tokens.push_back(tok);
  if (tokens.size() != 4) {
    throw Error(ErrorCode::kParse, "expected four fractions, got " + std::to_string(tokens.size()));
  }
  Matrix2 raw;
  for (std::size_t i = 0; i < 4; ++i) raw[i / 2][i % 2] = Rational::parse(tokens[i]);
  return validate_matrix(raw);
}

Matrix2 identity_matrix() { return {{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}}; }

Matrix2 multiply(const Matrix2& lhs, const Matrix2& rhs) {
  Matrix2 out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out[i][j] = lhs[i][0] * rhs[0][j] + lhs[i][1] * rhs[1][j];
    }
  }
  return out;
}

Matrix2 power(const TransitionMatrix& m, std::size_t k) {
  Matrix2 result = identity_matrix();
  Matrix2 base = m.entries();
  while (k > 0) {
    if (k & 1U) result = multiply(result, base);
    k >>= 1U;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

bool context_possible(const TransitionMatrix& m, std::size_t gap, UContext u) {
  return !power(m, gap + 1)[index(u.last_on)][index(u.next)].is_zero();
}

BridgeDistribution bridge(const TransitionMatrix& m, std::size_t gap, UContext u) {
  const Matrix2 to_now = power(m, gap);
  const Matrix2 to_next = multiply(to_now, m.entries());
  const Rational& denom = to_next[index(u.last_on)][index(u.next)];
  if (denom.is_zero()) {
    throw Error(ErrorCode::kDegenerateContext,
                "context " + to_string(u) + " has zero probability at gap " + std::to_string(gap));
  }
  BridgeDistribution out;
  out.gap = gap;
  for (Source x : kSources) {
    out.probs[index(x)] = m.at(x, u.next) * to_now[index(u.last_on)][index(x)] / denom;
  }
  return out;
}

SourceProbs stationary_distribution(const TransitionMatrix& m) {
  const Rational& leave_a = m.at(Source::kA, Source::kB);
  const Rational& leave_b = m.at(Source::kB, Source::kA);
  const Rational total = leave_a + leave_b;
  if (total.is_zero()) {
    throw Error(ErrorCode::kInvalidArgument, "identity chain has no unique stationary law");
  }
  return {leave_b / total, leave_a / total};
}

}  // namespace onoff
