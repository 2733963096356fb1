#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "skincare/error.hpp"
#include "skincare/metrics.hpp"

using namespace skincare;
using namespace skincare::metrics;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

std::vector<Concern> random_labels(std::mt19937_64& rng, std::size_t n) {
  std::vector<Concern> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(kAllConcerns[rng() % 4]);
  return out;
}

}  // namespace

TEST(Confusion, PerfectAndSingleSample) {
  const std::vector<Concern> t{Concern::Acne, Concern::Wrinkles, Concern::Acne};
  const auto cm = confusion(t, t);
  EXPECT_EQ(cm.counts[0][0] + cm.counts[3][3], 3u);
  EXPECT_EQ(cm.total(), 3u);
  const auto one = confusion(std::vector<Concern>{Concern::Acne},
                             std::vector<Concern>{Concern::Wrinkles});
  EXPECT_EQ(one.counts[0][3], 1u);
  EXPECT_EQ(one.total(), 1u);
}

TEST(Confusion, CountingOracleAndPermutationInvariance) {
  std::mt19937_64 rng(8);
  auto truth = random_labels(rng, 200);
  auto pred = random_labels(rng, 200);
  const auto cm = confusion(truth, pred);
  std::uint64_t naive[4][4] = {};
  for (std::size_t i = 0; i < 200; ++i) ++naive[index_of(truth[i])][index_of(pred[i])];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(cm.counts[i][j], naive[i][j]);
  EXPECT_EQ(cm.total(), 200u);
  std::vector<std::size_t> order(200);
  for (std::size_t i = 0; i < 200; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Concern> t2, p2;
  for (auto i : order) t2.push_back(truth[i]), p2.push_back(pred[i]);
  EXPECT_EQ(confusion(t2, p2).counts, cm.counts);
}

TEST(Confusion, Errors) {
  try {
    confusion(std::vector<Concern>{Concern::Acne}, std::vector<Concern>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  try {
    confusion(std::vector<Concern>{}, std::vector<Concern>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(F1, ReferenceRowsRoundToTwoPlaces) {
  EXPECT_EQ(round2(*f1_score(0.83, 0.76)), 0.79);
  EXPECT_EQ(round2(*f1_score(0.84, 0.91)), 0.87);
  EXPECT_FALSE(f1_score(0.0, 0.0));
  EXPECT_FALSE(f1_score(std::nullopt, 0.5));
}

TEST(ClassMetrics, DefinitionsOneVsRest) {
  ConfusionMatrix cm;
  cm.counts = {{{8, 1, 1, 0}, {2, 5, 0, 0}, {0, 0, 6, 2}, {0, 1, 0, 4}}};
  const auto m = class_metrics(cm, Concern::Acne);
  // TP 8, FP 2, FN 2, TN 18 of 30.
  EXPECT_DOUBLE_EQ(*m.precision, 0.8);
  EXPECT_DOUBLE_EQ(*m.recall, 0.8);
  EXPECT_DOUBLE_EQ(*m.f1, 0.8);
  EXPECT_DOUBLE_EQ(*m.accuracy, 26.0 / 30.0);
}

TEST(ClassMetrics, ZeroDenominatorsAreUndefined) {
  ConfusionMatrix cm;
  cm.counts[1][0] = 3;  // predicted Acne three times, never correct
  cm.counts[1][1] = 2;
  const auto acne = class_metrics(cm, Concern::Acne);
  EXPECT_EQ(acne.precision, 0.0);
  EXPECT_FALSE(acne.recall);
  EXPECT_FALSE(acne.f1);
  const auto wr = class_metrics(cm, Concern::Wrinkles);
  EXPECT_FALSE(wr.precision);
  EXPECT_FALSE(wr.recall);
  EXPECT_EQ(wr.accuracy, 1.0);
}

TEST(ClassMetrics, PropertiesOnRandomMatrices) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    ConfusionMatrix cm;
    for (auto& row : cm.counts)
      for (auto& x : row) x = rng() % 7;
    if (cm.total() == 0) continue;
    for (Concern c : kAllConcerns) {
      const auto m = class_metrics(cm, c);
      for (const auto& v : {m.precision, m.recall, m.f1, m.accuracy})
        if (v) EXPECT_TRUE(*v >= 0.0 && *v <= 1.0);
      if (m.precision && m.recall && *m.precision > 0 && *m.recall > 0) {
        EXPECT_NEAR(*m.f1, 2.0 / (1.0 / *m.precision + 1.0 / *m.recall), 1e-12);
        EXPECT_GE(*m.f1, std::min(*m.precision, *m.recall) - 1e-12);
        EXPECT_LE(*m.f1, std::max(*m.precision, *m.recall) + 1e-12);
      }
    }
  }
}

TEST(MacroAccuracy, ReferenceAccuracies) {
  const std::array<double, 4> acc{0.96, 0.94, 0.91, 0.89};
  EXPECT_NEAR(macro_average(acc), 0.925, 1e-15);
  EXPECT_EQ(round2(macro_average(acc)), 0.93);
}

TEST(MacroAccuracy, PerfectAndRandomClassifier) {
  std::mt19937_64 rng(13);
  auto truth = random_labels(rng, 10000);
  EXPECT_EQ(macro_average_accuracy(confusion(truth, truth)), 1.0);
  auto pred = random_labels(rng, 10000);
  EXPECT_NEAR(macro_average_accuracy(confusion(truth, pred)), 1 - 2 * 0.25 * 0.75, 0.02);
  EXPECT_THROW(macro_average_accuracy(ConfusionMatrix{}), Error);
}
