#include "skincare/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skincare/error.hpp"

namespace skincare::optim {

OptimizerState OptimizerState::start(std::vector<double> theta, double momentum,
                                     double learning_rate) {
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "momentum must lie in [0, 1)");
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::InvalidArgument, "learning rate must be positive");
  }
  OptimizerState s;
  s.velocity.assign(theta.size(), 0.0);
  s.theta = std::move(theta);
  s.momentum = momentum;
  s.learning_rate = learning_rate;
  return s;
}

OptimizerState step(OptimizerState state, std::span<const double> gradient) {
  if (gradient.size() != state.theta.size() || state.velocity.size() != state.theta.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "gradient has " + std::to_string(gradient.size()) + " entries, parameters have " +
                    std::to_string(state.theta.size()));
  }
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    if (!std::isfinite(gradient[i])) {
      throw Error(ErrorCode::NonFiniteGradient,
                  "non-finite gradient entry " + std::to_string(i) + " at step " +
                      std::to_string(state.step_count));
    }
  }
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    state.velocity[i] = state.momentum * state.velocity[i] + state.learning_rate * gradient[i];
    state.theta[i] -= state.velocity[i];
  }
  ++state.step_count;
  return state;
}

MinimizeResult minimize(const Objective& objective, std::vector<double> init,
                        const MinimizeConfig& config) {
  if (config.max_steps == 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be at least 1");
  OptimizerState state = OptimizerState::start(std::move(init), config.momentum, config.learning_rate);
  MinimizeResult result;
  result.losses.reserve(config.max_steps);
  for (std::size_t t = 0; t < config.max_steps; ++t) {
    LossAndGradient eval = objective(state.theta);
    if (!std::isfinite(eval.loss)) {
      throw NonFiniteLossError(t, "loss became non-finite at step " + std::to_string(t));
    }
    double inf_norm = 0.0;
    for (double g : eval.gradient) inf_norm = std::max(inf_norm, std::abs(g));
    if (inf_norm < config.grad_tolerance) {
      result.converged = true;
      break;
    }
    state = step(std::move(state), eval.gradient);
    result.losses.push_back(eval.loss);
  }
  result.theta = std::move(state.theta);
  return result;
}

}  // namespace skincare::optim
