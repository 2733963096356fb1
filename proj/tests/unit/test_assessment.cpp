#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "skincare/assessment.hpp"
#include "skincare/error.hpp"

using namespace skincare;

namespace {

void expect_valid(const SkinAssessment& a) {
  double total = 0;
  for (double p : a.concern_probs) {
    EXPECT_GE(p, 0.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 4; ++i)
    if (a.concern_probs[i] > a.concern_probs[best]) best = i;
  EXPECT_EQ(index_of(a.concern), best);
}

}  // namespace

TEST(FromConfidences, DominantEntry) {
  const std::vector<double> c{0.9, 0.05, 0.03, 0.02};
  const auto a = from_confidences(c, SkinType::Dry);
  EXPECT_EQ(a.concern, Concern::Acne);
  EXPECT_EQ(a.skin_type, SkinType::Dry);
  EXPECT_EQ(a.source, AssessmentSource::Classifier);
  expect_valid(a);
}

TEST(FromConfidences, TiesGoToCanonicalOrder) {
  const auto a = from_confidences(std::vector<double>{1, 1, 1, 1}, SkinType::Oily);
  EXPECT_EQ(a.concern, Concern::Acne);
  for (double p : a.concern_probs) EXPECT_EQ(p, 0.25);
  const auto b = from_confidences(std::vector<double>{0, 2, 0, 2}, SkinType::Oily);
  EXPECT_EQ(b.concern, Concern::ClearSkin);
}

TEST(FromConfidences, NormalisesAndIsScaleInvariant) {
  const auto a = from_confidences(std::vector<double>{2, 0, 0, 0}, SkinType::Normal);
  EXPECT_EQ(a.concern_probs, (std::array<double, 4>{1, 0, 0, 0}));
  const std::vector<double> c{0.2, 0.1, 0.6, 0.1};
  for (double s : {0.5, 3.0, 1000.0}) {
    std::vector<double> scaled = c;
    for (double& x : scaled) x *= s;
    const auto x = from_confidences(c, SkinType::Dry);
    const auto y = from_confidences(scaled, SkinType::Dry);
    EXPECT_EQ(x.concern, y.concern);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(x.concern_probs[i], y.concern_probs[i], 1e-15);
  }
}

TEST(FromConfidences, RejectsInvalidDistributions) {
  for (const auto& bad : std::vector<std::vector<double>>{
           {0, 0, 0, 0}, {-0.1, 0.5, 0.3, 0.3}, {NAN, 1, 1, 1}, {1, 1, 1}, {INFINITY, 0, 0, 0}}) {
    try {
      from_confidences(bad, SkinType::Dry);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidDistribution);
    }
  }
}

TEST(FromQuestionnaire, RuleTable) {
  auto ask = [](Tightness t, Shine s, bool reacts, Concern goal) {
    return from_questionnaire({t, s, reacts, goal});
  };
  auto a = ask(Tightness::Always, Shine::None, false, Concern::Wrinkles);
  EXPECT_EQ(a.skin_type, SkinType::Dry);
  EXPECT_EQ(a.concern, Concern::Wrinkles);
  EXPECT_EQ(a.source, AssessmentSource::Questionnaire);
  expect_valid(a);
  EXPECT_EQ(ask(Tightness::Never, Shine::AllOver, false, Concern::Acne).skin_type, SkinType::Oily);
  EXPECT_EQ(ask(Tightness::Sometimes, Shine::TZone, true, Concern::ClearSkin).skin_type,
            SkinType::Sensitive);
  EXPECT_EQ(ask(Tightness::Sometimes, Shine::TZone, false, Concern::Acne).skin_type,
            SkinType::Combination);
  EXPECT_EQ(ask(Tightness::Sometimes, Shine::None, false, Concern::Acne).skin_type,
            SkinType::Normal);
  EXPECT_EQ(ask(Tightness::Always, Shine::AllOver, false, Concern::Acne).skin_type,
            SkinType::Normal);
}

TEST(FromQuestionnaire, AnswerParsing) {
  EXPECT_EQ(try_parse_tightness("Always"), Tightness::Always);
  EXPECT_EQ(try_parse_shine("t-zone"), Shine::TZone);
  EXPECT_EQ(try_parse_shine("all_over"), Shine::AllOver);
  EXPECT_FALSE(try_parse_shine("glossy"));
}

TEST(Synthesize, NormalisedPrevalenceWeights) {
  const auto w = synthetic_concern_weights();
  EXPECT_NEAR(w[index_of(Concern::Pigmentation)], 55.9 / 154.7, 1e-12);
  EXPECT_NEAR(w[index_of(Concern::Pigmentation)], 0.3614, 1e-4);
  EXPECT_NEAR(w[index_of(Concern::Acne)], 0.3194, 1e-4);
  EXPECT_NEAR(w[index_of(Concern::Wrinkles)], 0.2547, 1e-4);
  EXPECT_NEAR(w[index_of(Concern::ClearSkin)], 0.0647, 1e-4);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
}

TEST(Synthesize, EmpiricalFrequencyAndDeterminism) {
  const auto xs = synthesize(2024, 10000);
  ASSERT_EQ(xs.size(), 10000u);
  std::array<int, 4> concerns{};
  std::array<int, 5> types{};
  for (const auto& a : xs) {
    expect_valid(a);
    EXPECT_EQ(a.source, AssessmentSource::Synthetic);
    ++concerns[index_of(a.concern)];
    ++types[index_of(a.skin_type)];
  }
  EXPECT_NEAR(concerns[0] / 10000.0, 0.3194, 0.02);
  for (int t : types) EXPECT_NEAR(t / 10000.0, 0.2, 0.02);
  EXPECT_EQ(synthesize(2024, 50), synthesize(2024, 50));
  EXPECT_NE(synthesize(2024, 50), synthesize(2025, 50));
  EXPECT_THROW(synthesize(1, 0), Error);
}

TEST(FromDirect, OneHot) {
  const auto a = from_direct(SkinType::Oily, Concern::Pigmentation);
  EXPECT_EQ(a.concern_probs, (std::array<double, 4>{0, 0, 1, 0}));
  EXPECT_EQ(a.source, AssessmentSource::Direct);
  expect_valid(a);
}
