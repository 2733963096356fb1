#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace skincare::optim {

/// Heavy-ball momentum state:
///   velocity' = momentum * velocity + learning_rate * gradient
///   theta'    = theta - velocity'
/// The learning rate is folded into the velocity. Velocity starts at zero.
struct OptimizerState {
  std::vector<double> theta;
  std::vector<double> velocity;
  double momentum = 0.0;       // in [0, 1)
  double learning_rate = 0.0;  // > 0
  std::uint64_t step_count = 0;

  /// Throws Error(InvalidArgument) for out-of-range hyperparameters.
  static OptimizerState start(std::vector<double> theta, double momentum, double learning_rate);

  friend bool operator==(const OptimizerState&, const OptimizerState&) = default;
};

/// One update. Takes the state by value, so the caller's copy is untouched
/// unless moved in. Throws Error(LengthMismatch) or Error(NonFiniteGradient).
[[nodiscard]] OptimizerState step(OptimizerState state, std::span<const double> gradient);

struct LossAndGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

using Objective = std::function<LossAndGradient(std::span<const double> theta)>;

struct MinimizeConfig {
  double momentum = 0.9;
  double learning_rate = 0.01;
  std::size_t max_steps = 1000;
  /// Stop once the gradient infinity-norm drops below this.
  double grad_tolerance = 1e-8;
};

struct MinimizeResult {
  std::vector<double> theta;
  std::vector<double> losses;  // loss evaluated before each completed step
  bool converged = false;      // stopped on grad_tolerance
};

/// Runs step() until the gradient is small or max_steps is reached.
/// Throws NonFiniteLossError carrying the offending step index.
MinimizeResult minimize(const Objective& objective, std::vector<double> init,
                        const MinimizeConfig& config);

}  // namespace skincare::optim
