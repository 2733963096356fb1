#include "skincare/service/engine.hpp"

#include <fstream>
#include <sstream>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare::service {
namespace fs = std::filesystem;

std::string embedding_scope(std::optional<Category> category) {
  if (!category) return "global";
  return "category:" + std::string(key(*category));
}

std::optional<std::optional<Category>> parse_embedding_scope(std::string_view scope) {
  if (scope == "global") return std::optional<Category>{};
  constexpr std::string_view prefix = "category:";
  if (scope.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto c = try_parse_category(scope.substr(prefix.size()));
  if (!c) return std::nullopt;
  return std::optional<Category>{*c};
}

namespace {

template <typename F>
auto tagged(std::string_view module, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), "[" + std::string(module) + "] " + e.what());
  }
}

std::string file_stem(const std::string& scope) {
  std::string s = scope;
  for (char& c : s)
    if (c == ':') c = '-';
  return "embedding-" + s;
}

struct Artifacts {
  std::map<std::string, tsne::Embedding> embeddings;
  mf::FactorModel model;
};

std::optional<Artifacts> read_cache(const fs::path& dir, const std::map<std::string, std::vector<ProductId>>& expected,
                                    std::uint64_t fingerprint) {
  if (!fs::exists(dir / "complete")) return std::nullopt;
  try {
    Artifacts a;
    std::ifstream model_in(dir / "model.mfv1");
    if (!model_in) return std::nullopt;
    a.model = mf::load_model(model_in);
    if (a.model.fingerprint != fingerprint) return std::nullopt;
    for (const auto& [scope, ids] : expected) {
      std::ifstream csv_in(dir / (file_stem(scope) + ".csv"));
      std::ifstream kl_in(dir / (file_stem(scope) + ".kl"));
      if (!csv_in || !kl_in) return std::nullopt;
      tsne::Embedding e = tsne::read_embedding_csv(csv_in);
      if (e.product_ids != ids) return std::nullopt;
      std::string tok;
      while (kl_in >> tok) e.kl_trace.push_back(std::stod(tok));
      a.embeddings.emplace(scope, std::move(e));
    }
    return a;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_cache(const fs::path& dir, const Artifacts& a, const EngineConfig& config) {
  const fs::path tmp = dir.string() + ".tmp";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  {
    std::ofstream out(tmp / "model.mfv1");
    mf::save_model(out, a.model);
  }
  for (const auto& [scope, e] : a.embeddings) {
    std::ofstream csv_out(tmp / (file_stem(scope) + ".csv"));
    tsne::write_embedding_csv(csv_out, e);
    std::ofstream kl_out(tmp / (file_stem(scope) + ".kl"));
    kl_out.precision(17);
    for (double v : e.kl_trace) kl_out << v << '\n';
  }
  {
    std::ofstream out(tmp / "config.txt");
    out << config.serialize();
  }
  std::ofstream(tmp / "complete") << "ok\n";
  fs::remove_all(dir);
  fs::rename(tmp, dir);
}

}  // namespace

std::shared_ptr<const EngineState> build_engine(const fs::path& catalog_path,
                                                const EngineConfig& config,
                                                const BuildOptions& options) {
  Catalog catalog = tagged("catalog", [&] { return load_catalog(catalog_path, options.mapping); });
  return build_engine(std::move(catalog), config, options);
}

std::shared_ptr<const EngineState> build_engine(Catalog catalog, const EngineConfig& config,
                                                const BuildOptions& options) {
  auto log = [&](const std::string& msg) {
    if (options.log) options.log(msg);
  };
  const std::uint64_t fingerprint = catalog.fingerprint();
  Vocabulary vocab;
  IngredientMatrix matrix = tagged("vectors", [&] { return vectorize(catalog, &vocab); });
  log("catalog " + to_hex(fingerprint) + ": " + std::to_string(catalog.size()) + " products, " +
      std::to_string(vocab.size()) + " ingredients");

  // Scope -> matrix rows to embed.
  std::map<std::string, std::vector<std::size_t>> scopes;
  std::vector<std::size_t> all(catalog.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (all.size() >= kMinEmbeddingPoints) scopes.emplace(embedding_scope(std::nullopt), all);
  if (config.per_category) {
    for (Category c : kAllCategories) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (catalog.products()[i].category == c) rows.push_back(i);
      }
      if (rows.size() >= kMinEmbeddingPoints) scopes.emplace(embedding_scope(c), std::move(rows));
    }
  }
  std::map<std::string, std::vector<ProductId>> expected_ids;
  for (const auto& [scope, rows] : scopes) {
    auto& ids = expected_ids[scope];
    for (std::size_t r : rows) ids.push_back(matrix.product_id(r));
  }

  fs::path cache_dir;
  std::optional<Artifacts> artifacts;
  if (options.cache_root) {
    cache_dir = *options.cache_root / (to_hex(fingerprint) + "-" + to_hex(config.hash()));
    artifacts = read_cache(cache_dir, expected_ids, fingerprint);
  }
  const bool hit = artifacts.has_value();
  if (hit) {
    log("cache hit: " + cache_dir.string());
    for (auto& [scope, e] : artifacts->embeddings) e.seed = config.tsne.seed;
  } else {
    Artifacts fresh;
    for (const auto& [scope, rows] : scopes) {
      log("t-SNE " + scope + " (" + std::to_string(rows.size()) + " points)");
      IngredientMatrix sub = matrix.select_rows(rows);
      fresh.embeddings.emplace(scope, tagged("tsne", [&] { return tsne::fit(sub, config.tsne); }));
    }
    log("matrix factorisation");
    fresh.model = tagged("mf", [&] {
      try {
        return mf::train(mf::build_interactions(catalog), config.mf);
      } catch (const NonFiniteLossError& e) {
        // The objective sums over every product, so the stable step shrinks
        // as the catalog grows.
        throw NonFiniteLossError(e.step(), std::string(e.what()) + " (lr = " +
                                               std::to_string(config.mf.learning_rate) + " over " +
                                               std::to_string(catalog.size()) +
                                               " products; lower `lr` in the engine config)");
      }
    });
    if (options.cache_root) {
      tagged("cache", [&] {
        try {
          write_cache(cache_dir, fresh, config);
        } catch (const fs::filesystem_error& e) {
          throw Error(ErrorCode::Io, e.what());
        }
        return 0;
      });
    }
    artifacts = std::move(fresh);
  }

  auto state = std::shared_ptr<EngineState>(new EngineState{
      std::move(catalog), std::move(vocab), std::move(matrix), std::move(artifacts->embeddings),
      std::move(artifacts->model), config, fingerprint, hit, cache_dir});
  return state;
}

}  // namespace skincare::service
