#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>

#include "skincare/mf.hpp"
#include "skincare/tsne.hpp"

namespace skincare::service {

/// Every tunable of the pipeline, read from a flat `key = value` file.
///
/// Keys: seed, alpha, perplexity, iterations, exaggeration,
/// exaggeration_iters, tsne_lr, tsne_momentum, tsne_final_momentum,
/// momentum_switch_iter, k, reg, lr, momentum, epochs, per_category.
/// `lr` and `momentum` configure the factor model; the t-SNE optimiser has
/// its own `tsne_` keys. `seed` seeds both.
struct EngineConfig {
  tsne::TsneConfig tsne;
  mf::MfConfig mf;
  double alpha = 0.5;
  bool per_category = true;  // also fit one embedding per category

  /// Throws Error(Format) on unknown keys or unparseable values.
  static EngineConfig parse(std::istream& in);
  static EngineConfig load(const std::filesystem::path& path);

  /// Canonical `key = value` text, one key per line, sorted.
  std::string serialize() const;
  /// Hash of serialize(); part of the artifact cache key.
  std::uint64_t hash() const;
};

}  // namespace skincare::service
