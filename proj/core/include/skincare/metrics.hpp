#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "skincare/types.hpp"

namespace skincare::metrics {

/// counts[truth][predicted], canonical Concern order on both axes.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kConcernCount>, kConcernCount> counts{};

  std::uint64_t total() const;
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws Error(LengthMismatch) or Error(EmptyInput).
ConfusionMatrix confusion(std::span<const Concern> truths, std::span<const Concern> predictions);

/// An empty optional marks an undefined ratio (zero denominator).
struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;  // one-vs-rest
};

/// 2PR / (P + R); undefined when either input is undefined or P + R = 0.
std::optional<double> f1_score(std::optional<double> precision, std::optional<double> recall);

/// One-vs-rest precision, recall, F1 and accuracy for one label.
ClassMetrics class_metrics(const ConfusionMatrix& cm, Concern label);

/// Mean of the per-class one-vs-rest accuracies.
double macro_average_accuracy(const ConfusionMatrix& cm);
double macro_average(std::span<const double, kConcernCount> per_class_accuracy);

}  // namespace skincare::metrics
