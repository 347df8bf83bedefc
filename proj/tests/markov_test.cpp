#include "onoff/markov.hpp"

#include <gtest/gtest.h>

#include "onoff/error.hpp"
#include "support/grid.hpp"
#include "support/oracles.hpp"

namespace onoff {
namespace {

Matrix2 grid_of(long a, long b, long c, long d, long e, long f, long g, long h) {
  return {{{Rational(a, b), Rational(c, d)}, {Rational(e, f), Rational(g, h)}}};
}

TEST(ValidateMatrixTest, AcceptsStochastic) {
  const auto uniform = validate_matrix(grid_of(1, 2, 1, 2, 1, 2, 1, 2));
  EXPECT_TRUE(uniform.strictly_positive());
  const auto example = validate_matrix(grid_of(3, 4, 1, 4, 1, 4, 3, 4));
  EXPECT_TRUE(example.strictly_positive());
  EXPECT_EQ(example, symmetric_matrix(Rational(1, 4)));
}

TEST(ValidateMatrixTest, RejectsBadRows) {
  try {
    validate_matrix(grid_of(1, 2, 1, 3, 1, 4, 3, 4));
    FAIL() << "row sum 5/6 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotStochastic);
  }
  EXPECT_THROW(validate_matrix(grid_of(3, 2, -1, 2, 1, 2, 1, 2)), Error);
}

TEST(ValidateMatrixTest, ZeroEntriesAreValidButNotPositive) {
  const auto identity = symmetric_matrix(Rational(0));
  EXPECT_FALSE(identity.strictly_positive());
}

TEST(ParseMatrixTest, FractionsAndAlphaShorthand) {
  EXPECT_EQ(parse_matrix("3/4 1/4 1/4 3/4"), symmetric_matrix(Rational(1, 4)));
  EXPECT_EQ(parse_matrix("alpha=1/4"), symmetric_matrix(Rational(1, 4)));
  EXPECT_EQ(parse_matrix("1/2 1/2 1/4 3/4").to_string(), "1/2 1/2 1/4 3/4");
  EXPECT_THROW(parse_matrix("1/2 1/2 1/4"), Error);
  EXPECT_THROW(parse_matrix("1/2 1/3 1/4 3/4"), Error);
}

TEST(PowerTest, Examples) {
  const auto m = symmetric_matrix(Rational(1, 4));
  EXPECT_EQ(power(m, 0), identity_matrix());
  EXPECT_EQ(power(m, 2), grid_of(5, 8, 3, 8, 3, 8, 5, 8));
  EXPECT_EQ(power(parse_matrix("1/2 1/2 1/4 3/4"), 2), grid_of(3, 8, 5, 8, 5, 16, 11, 16));
}

TEST(PowerTest, MatchesNaiveMultiplication) {
  for (const auto& [name, m] : testing::matrix_grid()) {
    for (std::size_t k = 0; k <= 9; ++k) {
      EXPECT_EQ(power(m, k), oracle::naive_power(m, k)) << name << " k=" << k;
    }
  }
}

TEST(BridgeTest, Examples) {
  const auto m = symmetric_matrix(Rational(1, 4));
  const auto b = bridge(m, 1, {Source::kA, Source::kA});
  EXPECT_EQ(b[Source::kA], Rational(9, 10));
  EXPECT_EQ(b[Source::kB], Rational(1, 10));

  const auto point = bridge(m, 0, {Source::kB, Source::kA});
  EXPECT_EQ(point[Source::kA], Rational(0));
  EXPECT_EQ(point[Source::kB], Rational(1));

  const auto asym = bridge(parse_matrix("1/2 1/2 1/4 3/4"), 1, {Source::kB, Source::kB});
  EXPECT_EQ(asym[Source::kA], Rational(2, 11));
  EXPECT_EQ(asym[Source::kB], Rational(9, 11));
}

TEST(BridgeTest, DegenerateContext) {
  const auto identity = symmetric_matrix(Rational(0));
  try {
    bridge(identity, 1, {Source::kA, Source::kB});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateContext);
  }
  EXPECT_FALSE(context_possible(identity, 1, {Source::kA, Source::kB}));
  EXPECT_TRUE(context_possible(identity, 1, {Source::kA, Source::kA}));
}

// Property: bridge equals the path-enumeration conditional, is a
// distribution, and collapses to a point mass at gap 0.
TEST(BridgeTest, AgreesWithPathEnumeration) {
  for (const auto& [name, m] : testing::matrix_grid()) {
    for (std::size_t gap = 0; gap <= 4; ++gap) {
      for (UContext u : kContexts) {
        const auto b = bridge(m, gap, u);
        const auto expect = oracle::conditional_by_paths(m, gap, u.last_on, u.next);
        EXPECT_EQ(b.probs, expect) << name << " gap=" << gap << " u=" << to_string(u);
        EXPECT_EQ(b.probs[0] + b.probs[1], Rational(1));
        EXPECT_GE(b.probs[0], Rational(0));
        EXPECT_LE(b.probs[0], Rational(1));
        if (gap == 0) {
          EXPECT_EQ(b[u.last_on], Rational(1));
        }
      }
    }
  }
}

TEST(BridgeTest, SymmetricChainSymmetry) {
  for (const auto& [name, m] : testing::matrix_grid()) {
    if (m.at(Source::kA, Source::kA) != m.at(Source::kB, Source::kB)) continue;
    for (std::size_t gap = 0; gap <= 6; ++gap) {
      EXPECT_EQ(bridge(m, gap, {Source::kA, Source::kA})[Source::kA],
                bridge(m, gap, {Source::kB, Source::kB})[Source::kB])
          << name;
    }
  }
}

TEST(StationaryTest, FixedPoint) {
  for (const auto& [name, m] : testing::matrix_grid()) {
    const auto pi = stationary_distribution(m);
    for (Source to : kSources) {
      EXPECT_EQ(pi[0] * m.at(Source::kA, to) + pi[1] * m.at(Source::kB, to), pi[index(to)])
          << name;
    }
  }
  EXPECT_THROW(stationary_distribution(symmetric_matrix(Rational(0))), Error);
}

}  // namespace
}  // namespace onoff
