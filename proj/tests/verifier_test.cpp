#include "onoff/verifier.hpp"

#include <map>

#include <gtest/gtest.h>

#include "onoff/error.hpp"
#include "support/grid.hpp"

namespace onoff {
namespace {

const TransitionMatrix kQuarter = symmetric_matrix(Rational(1, 4));

QueryProbs query_law_at(const JointTable& j, std::size_t t) {
  QueryProbs law{Rational(0), Rational(0), Rational(0)};
  for (const auto& cell : j.cells) law[index(cell.query(t))] += cell.mass;
  return law;
}

TEST(BuildJointTest, BaseCaseDownloadsBoth) {
  const auto j = build_joint(kQuarter, PrivacyPattern::parse("ON"), uniform_probs(), 0);
  EXPECT_EQ(query_law_at(j, 0), (QueryProbs{Rational(0), Rational(0), Rational(1)}));
  EXPECT_EQ(j.total_mass(), Rational(1));
}

TEST(BuildJointTest, QueryMarginalAtTimeOne) {
  const auto j = build_joint(kQuarter, PrivacyPattern::parse("ON,OFF"), uniform_probs(), 1);
  EXPECT_EQ(query_law_at(j, 1), query_marginal(kQuarter, 1));
  EXPECT_EQ(query_law_at(j, 1),
            (QueryProbs{Rational(1, 10), Rational(1, 10), Rational(8, 10)}));

  const auto iid = build_joint(symmetric_matrix(Rational(1, 2)), PrivacyPattern::parse("ON,OFF"),
                               uniform_probs(), 1);
  const auto law = query_law_at(iid, 1);
  EXPECT_EQ(law[index(QuerySymbol::kA)] + law[index(QuerySymbol::kB)], Rational(1));
}

TEST(BuildJointTest, HorizonGuard) {
  try {
    build_joint(kQuarter, PrivacyPattern::parse("ON"), uniform_probs(), kMaxVerifierHorizon + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHorizonTooLarge);
  }
}

TEST(BuildJointTest, SumsToOneAndRecoversChainLaw) {
  const auto pattern = PrivacyPattern::parse("ON,OFF,ON,OFF,OFF");
  for (const auto& [name, m] : testing::matrix_grid()) {
    for (std::size_t t = 0; t <= 4; ++t) {
      const auto j = build_joint(m, pattern, uniform_probs(), t);
      EXPECT_EQ(j.total_mass(), Rational(1)) << name << " t=" << t;

      std::map<std::uint32_t, Rational> by_requests;
      for (const auto& cell : j.cells) by_requests[cell.requests] += cell.mass;
      for (std::uint32_t bits = 0; bits < (1U << (t + 2)); ++bits) {
        Rational chain = Rational(1, 2);
        for (std::size_t i = 0; i + 1 < t + 2; ++i) {
          chain *= m.entries()[(bits >> i) & 1U][(bits >> (i + 1)) & 1U];
        }
        EXPECT_EQ(by_requests[bits], chain) << name << " t=" << t << " path " << bits;
      }
    }
  }
}

TEST(DecodabilityTest, Examples) {
  const auto j = build_joint(symmetric_matrix(Rational(1, 3)), PrivacyPattern::parse("ON,OFF,ON,OFF"),
                             uniform_probs(), 3);
  EXPECT_TRUE(check_decodability(j));

  JointTable bad;
  bad.horizon = 0;
  bad.cells.push_back({pack_requests({Source::kA, Source::kA}), pack_queries({QuerySymbol::kB}),
                       Rational(1)});
  EXPECT_FALSE(check_decodability(bad));
}

TEST(PrivacyTest, Examples) {
  const auto base = build_joint(kQuarter, PrivacyPattern::parse("ON"), uniform_probs(), 0);
  EXPECT_TRUE(check_privacy(base, 0).factorizes);

  const auto j = build_joint(kQuarter, PrivacyPattern::parse("ON,OFF,OFF"), uniform_probs(), 2);
  const auto report = check_privacy(j, 2);
  EXPECT_TRUE(report.factorizes);
  EXPECT_EQ(report.max_abs_gap, Rational(0));
  EXPECT_EQ(report.mi_bits, 0.0);

  EXPECT_THROW(check_privacy(j, 1), Error);
}

TEST(PrivacyTest, RevealingEncoderLeaks) {
  for (const char* alpha : {"1/10", "1/4", "2/5"}) {
    const auto m = parse_matrix(std::string("alpha=") + alpha);
    const auto j =
        build_joint(m, PrivacyPattern::parse("ON,OFF"), uniform_probs(), 1, revealing_encoder());
    EXPECT_TRUE(check_decodability(j));
    const auto report = check_privacy(j, 1);
    EXPECT_FALSE(report.factorizes) << alpha;
    EXPECT_GT(report.max_abs_gap, Rational(0));
    EXPECT_GT(report.mi_bits, 0.0);
  }
}

TEST(PrivacyTest, PrivacySetTruncation) {
  const auto pattern = PrivacyPattern::parse("ON,OFF,ON,OFF");
  EXPECT_EQ(privacy_set(pattern, 3), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(privacy_set(pattern, 0), (std::vector<std::size_t>{0, 1}));
}

TEST(Proposition1Test, Examples) {
  for (const auto& [name, m] : testing::matrix_grid()) {
    EXPECT_EQ(proposition1_terms(m, PrivacyPattern::parse("ON,OFF"), 1),
              (Proposition1Terms{0.0, 0.0, 0.0, true}))
        << name;
  }
  EXPECT_EQ(proposition1_terms(symmetric_matrix(Rational(2, 5)),
                               PrivacyPattern::parse("ON,OFF,OFF,OFF"), 3),
            (Proposition1Terms{0.0, 0.0, 0.0, true}));

  const auto leaky = proposition1_terms(kQuarter, PrivacyPattern::parse("ON,OFF,OFF"), 2,
                                        revealing_encoder());
  EXPECT_GT(leaky.i2, 0.0);
  EXPECT_FALSE(leaky.exact_zero);

  EXPECT_THROW(proposition1_terms(kQuarter, PrivacyPattern::parse("ON"), 0), Error);
}

TEST(ConditionalInformationTest, KnownValues) {
  // X_0 uniform and copied into Q_0: I(X_0; Q_0) = 1 bit.
  JointTable j;
  j.horizon = 0;
  j.cells.push_back({pack_requests({Source::kA, Source::kA}), pack_queries({QuerySymbol::kA}),
                     Rational(1, 2)});
  j.cells.push_back({pack_requests({Source::kB, Source::kB}), pack_queries({QuerySymbol::kB}),
                     Rational(1, 2)});
  const auto x0 = [](const JointCell& c) { return std::uint64_t(c.requests & 1U); };
  const auto q0 = [](const JointCell& c) { return c.queries; };
  const auto none = [](const JointCell&) { return std::uint64_t{0}; };
  const auto r = conditional_information(j, x0, q0, none);
  EXPECT_FALSE(r.independent);
  EXPECT_DOUBLE_EQ(r.bits, 1.0);
  EXPECT_EQ(r.max_abs_gap, Rational(1, 4));
  // Conditioning on X_0 removes it.
  EXPECT_TRUE(conditional_information(j, x0, q0, x0).independent);
}

TEST(ExpectedCostTest, Examples) {
  const auto pattern = PrivacyPattern::parse("ON,OFF,ON");
  const auto j = build_joint(kQuarter, pattern, uniform_probs(), 2);
  EXPECT_EQ(expected_cost(j, 0), Rational(2));
  EXPECT_EQ(expected_cost(j, 1), Rational(9, 5));
  EXPECT_EQ(expected_cost(j, 2), Rational(2));
  const auto iid = build_joint(symmetric_matrix(Rational(1, 2)), PrivacyPattern::parse("ON,OFF"),
                               uniform_probs(), 1);
  EXPECT_EQ(expected_cost(iid, 1), Rational(1));
  EXPECT_THROW(expected_cost(iid, 2), Error);
}

TEST(VerifyCaseTest, InitialDistributionInvariance) {
  const auto pattern = PrivacyPattern::parse("ON,OFF,OFF,ON,OFF");
  for (const auto& [name, m] : testing::matrix_grid()) {
    for (std::size_t t = 0; t <= 4; ++t) {
      const auto uniform = verify_case(m, pattern, t, uniform_probs());
      const auto stationary = verify_case(m, pattern, t, stationary_distribution(m));
      EXPECT_TRUE(uniform.passed()) << name << " t=" << t;
      EXPECT_TRUE(stationary.passed()) << name << " t=" << t;
      EXPECT_EQ(uniform.privacy.factorizes, stationary.privacy.factorizes);
      EXPECT_EQ(uniform.privacy.max_abs_gap, stationary.privacy.max_abs_gap);
      EXPECT_EQ(uniform.expected_cost, stationary.expected_cost);
    }
  }
}

}  // namespace
}  // namespace onoff
