#include "skincare/metrics.hpp"

#include "skincare/error.hpp"

namespace skincare::metrics {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

ConfusionMatrix confusion(std::span<const Concern> truths, std::span<const Concern> predictions) {
  if (truths.size() != predictions.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(truths.size()) + " truths but " +
                                               std::to_string(predictions.size()) + " predictions");
  }
  if (truths.empty()) throw Error(ErrorCode::EmptyInput, "no samples to evaluate");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    ++cm.counts[index_of(truths[i])][index_of(predictions[i])];
  }
  return cm;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::optional<double> f1_score(std::optional<double> precision, std::optional<double> recall) {
  if (!precision || !recall) return std::nullopt;
  const double sum = *precision + *recall;
  if (sum == 0.0) return std::nullopt;
  return 2.0 * *precision * *recall / sum;
}

ClassMetrics class_metrics(const ConfusionMatrix& cm, Concern label) {
  const std::size_t c = index_of(label);
  std::uint64_t tp = cm.counts[c][c], fp = 0, fn = 0;
  for (std::size_t i = 0; i < kConcernCount; ++i) {
    if (i == c) continue;
    fp += cm.counts[i][c];
    fn += cm.counts[c][i];
  }
  const std::uint64_t total = cm.total();
  const std::uint64_t tn = total - tp - fp - fn;
  ClassMetrics m;
  m.precision = ratio(tp, tp + fp);
  m.recall = ratio(tp, tp + fn);
  m.f1 = f1_score(m.precision, m.recall);
  m.accuracy = ratio(tp + tn, total);
  return m;
}

double macro_average(std::span<const double, kConcernCount> per_class_accuracy) {
  double s = 0.0;
  for (double a : per_class_accuracy) s += a;
  return s / static_cast<double>(kConcernCount);
}

double macro_average_accuracy(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::EmptyInput, "confusion matrix is empty");
  std::array<double, kConcernCount> acc{};
  for (Concern c : kAllConcerns) acc[index_of(c)] = *class_metrics(cm, c).accuracy;
  return macro_average(acc);
}

}  // namespace skincare::metrics
