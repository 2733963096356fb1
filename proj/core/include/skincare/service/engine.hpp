#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "skincare/catalog.hpp"
#include "skincare/mf.hpp"
#include "skincare/service/config.hpp"
#include "skincare/tsne.hpp"
#include "skincare/vectors.hpp"

namespace skincare::service {

/// "global" or "category:<key>", e.g. "category:moisturizer".
std::string embedding_scope(std::optional<Category> category);
/// Inverse of embedding_scope; empty on a malformed scope.
std::optional<std::optional<Category>> parse_embedding_scope(std::string_view scope);

/// Everything derived from one catalog. Published behind shared_ptr<const>
/// and never modified afterwards.
struct EngineState {
  Catalog catalog;
  Vocabulary vocabulary;
  IngredientMatrix matrix;
  std::map<std::string, tsne::Embedding> embeddings;  // keyed by scope
  mf::FactorModel model;
  EngineConfig config;
  std::uint64_t fingerprint = 0;
  bool cache_hit = false;
  std::filesystem::path cache_dir;  // empty when caching is off
};

struct BuildOptions {
  /// Derived artifacts are stored under <cache_root>/<catalog>-<config>/.
  std::optional<std::filesystem::path> cache_root;
  ColumnMapping mapping = ColumnMapping::canonical();
  std::function<void(std::string_view)> log;
};

/// Categories with fewer points than this get no per-category embedding.
inline constexpr std::size_t kMinEmbeddingPoints = 4;

/// load -> vocabulary -> matrix -> t-SNE fits -> factor model. Reuses cached
/// embeddings and model when the catalog fingerprint and config hash match.
/// Errors keep their code and gain a "[module]" prefix.
std::shared_ptr<const EngineState> build_engine(const std::filesystem::path& catalog_path,
                                                const EngineConfig& config,
                                                const BuildOptions& options = {});

/// Same pipeline over an already loaded catalog.
std::shared_ptr<const EngineState> build_engine(Catalog catalog, const EngineConfig& config,
                                                const BuildOptions& options = {});

}  // namespace skincare::service
