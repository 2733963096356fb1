// skincare: ingest a catalog, build the engine, query it, or serve it.

#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "skincare/csv.hpp"
#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"
#include "skincare/metrics.hpp"
#include "skincare/service/api.hpp"
#include "skincare/service/http_server.hpp"

namespace fs = std::filesystem;
using namespace skincare;
using namespace skincare::service;

namespace {

struct Paths {
  fs::path data_dir = "skincare-data";
  fs::path catalog() const { return data_dir / "catalog.csv"; }
  fs::path config() const { return data_dir / "engine.conf"; }
  fs::path cache() const { return data_dir / "cache"; }
  fs::path sessions() const { return data_dir / "sessions.jsonl"; }
};

void log_line(std::string_view msg) { std::cerr << msg << '\n'; }

std::shared_ptr<const EngineState> open_engine(const Paths& paths) {
  if (!fs::exists(paths.catalog())) {
    throw Error(ErrorCode::Io, "no catalog at '" + paths.catalog().string() +
                                   "'; run `skincare ingest <csv>` first");
  }
  const EngineConfig cfg =
      fs::exists(paths.config()) ? EngineConfig::load(paths.config()) : EngineConfig{};
  BuildOptions opts;
  opts.cache_root = paths.cache();
  opts.log = log_line;
  return build_engine(paths.catalog(), cfg, opts);
}

int cmd_ingest(const Paths& paths, const std::string& source, const std::string& mapping_file) {
  const ColumnMapping mapping =
      mapping_file.empty() ? ColumnMapping::canonical() : ColumnMapping::load(mapping_file);
  const Catalog catalog = load_catalog(fs::path(source), mapping);
  fs::create_directories(paths.data_dir);
  std::ofstream out(paths.catalog(), std::ios::binary);
  write_catalog_csv(out, catalog);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + paths.catalog().string() + "'");
  const LoadReport& r = catalog.report();
  std::cout << "products:            " << catalog.size() << '\n'
            << "rows read:           " << r.rows_read << '\n'
            << "unknown category:    " << r.skipped_unknown_category << '\n'
            << "duplicates collapsed:" << ' ' << r.collapsed_duplicates << '\n'
            << "fingerprint:         " << to_hex(catalog.fingerprint()) << '\n'
            << "written to:          " << paths.catalog().string() << '\n';
  return 0;
}

int cmd_build(const Paths& paths, const std::string& config_file) {
  if (!config_file.empty()) {
    const EngineConfig cfg = EngineConfig::load(config_file);
    fs::create_directories(paths.data_dir);
    std::ofstream(paths.config()) << cfg.serialize();
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto engine = open_engine(paths);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "fingerprint: " << to_hex(engine->fingerprint) << '\n'
            << "products:    " << engine->catalog.size() << '\n'
            << "vocabulary:  " << engine->vocabulary.size() << '\n'
            << "embeddings:  " << engine->embeddings.size() << '\n'
            << "mf loss:     " << engine->model.final_loss << '\n'
            << "cache:       " << (engine->cache_hit ? "hit" : "miss") << " ("
            << engine->cache_dir.string() << ")\n"
            << "seconds:     " << secs << '\n';
  return 0;
}

int cmd_embed(const Paths& paths, const std::string& category, const std::string& out_file) {
  std::optional<Category> c;
  if (!category.empty()) c = parse_category(category);
  const auto engine = open_engine(paths);
  const std::string scope = embedding_scope(c);
  auto it = engine->embeddings.find(scope);
  if (it == engine->embeddings.end()) {
    throw Error(ErrorCode::InvalidArgument, "no embedding fitted for scope " + scope);
  }
  if (out_file.empty()) {
    tsne::write_embedding_csv(std::cout, it->second);
  } else {
    std::ofstream out(out_file, std::ios::binary);
    tsne::write_embedding_csv(out, it->second);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + out_file + "'");
  }
  return 0;
}

int cmd_recommend(const Paths& paths, const std::string& skin, const std::string& concern,
                  std::optional<ProductId> anchor, std::optional<double> alpha, bool as_json) {
  const SkinAssessment a = from_direct(parse_skin_type(skin), parse_concern(concern));
  const auto engine = open_engine(paths);
  Routine r = recommend(engine->catalog, engine->matrix, engine->model, a, anchor,
                        alpha.value_or(engine->config.alpha));
  r.created_at = truncate_to_micros(Clock::now());
  if (as_json) {
    std::cout << to_json(r, &engine->catalog).dump(2) << '\n';
    return 0;
  }
  for (Category c : kAllCategories) {
    std::cout << display_name(c) << '\n';
    if (r.in(c).empty()) std::cout << "  (no suitable products)\n";
    for (const auto& s : r.in(c)) {
      const Product& p = engine->catalog.at(s.product_id);
      std::printf("  %4llu  %.4f  (cos %.4f, mf %.4f)  %s - %s\n",
                  static_cast<unsigned long long>(p.id), s.final_score, s.cosine_part, s.mf_part,
                  p.brand.c_str(), p.name.c_str());
    }
  }
  return 0;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

int cmd_evaluate(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + file + "'");
  const auto rows = csv::read(in);
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "'" + file + "' has no rows");
  std::size_t ti = 0, pi = 1;
  std::size_t first = 0;
  if (!try_parse_concern(rows[0].fields.at(0))) {
    // Header row: locate the truth and prediction columns by name.
    const auto& h = rows[0].fields;
    ti = pi = h.size();
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (iequals(h[i], "truth") || iequals(h[i], "label") || iequals(h[i], "actual")) ti = i;
      if (iequals(h[i], "pred") || iequals(h[i], "prediction") || iequals(h[i], "predicted")) {
        pi = i;
      }
    }
    if (ti == h.size() || pi == h.size()) {
      throw Error(ErrorCode::MalformedCsv, "header needs truth and pred columns");
    }
    first = 1;
  }
  std::vector<Concern> truths, preds;
  for (std::size_t r = first; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    if (f.size() <= std::max(ti, pi)) {
      throw Error(ErrorCode::MalformedCsv, "line " + std::to_string(rows[r].line) +
                                               ": expected truth and prediction");
    }
    truths.push_back(parse_concern(f[ti]));
    preds.push_back(parse_concern(f[pi]));
  }
  const auto cm = metrics::confusion(truths, preds);
  json classes = json::object();
  for (Concern c : kAllConcerns) {
    const auto m = metrics::class_metrics(cm, c);
    classes[std::string(key(c))] = {{"precision", optional_number(m.precision)},
                                    {"recall", optional_number(m.recall)},
                                    {"f1", optional_number(m.f1)},
                                    {"accuracy", optional_number(m.accuracy)}};
  }
  json matrix = json::array();
  for (const auto& row : cm.counts) matrix.push_back(row);
  const json report{{"samples", cm.total()},
                    {"classes", classes},
                    {"confusion", matrix},
                    {"macro_average_accuracy", metrics::macro_average_accuracy(cm)}};
  std::cout << report.dump(2) << '\n';
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const Paths& paths, const std::string& host, int port,
              const std::string& classifier_cmd) {
  auto engine = open_engine(paths);
  SessionStore sessions(paths.sessions());
  if (sessions.skipped_on_replay() > 0) {
    std::cerr << "session log: skipped " << sessions.skipped_on_replay() << " malformed lines\n";
  }
  std::shared_ptr<const ClassifierAdapter> classifier;
  if (!classifier_cmd.empty()) classifier = std::make_shared<SubprocessClassifier>(classifier_cmd);
  Api api(std::move(engine), sessions, classifier);
  HttpServer server(api);
  const int bound = server.bind(host, port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on http://" << host << ':' << bound << '\n';
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skincare routine recommender"};
  app.require_subcommand(1);
  app.fallthrough();
  Paths paths;
  app.add_option("--data-dir", paths.data_dir, "Directory holding catalog, config and cache")
      ->capture_default_str();

  std::string source, mapping_file;
  auto* ingest = app.add_subcommand("ingest", "Load and normalise a catalog CSV");
  ingest->add_option("csv", source, "Catalog CSV")->required();
  ingest->add_option("--mapping", mapping_file, "Column mapping file (canonical=source lines)");

  std::string config_file;
  auto* build = app.add_subcommand("build", "Build or load the engine artifacts");
  build->add_option("--config", config_file, "key = value engine config");

  std::string category, out_file;
  auto* embed = app.add_subcommand("embed", "Write a 2-D embedding as CSV");
  embed->add_option("--category", category, "Per-category embedding instead of global");
  embed->add_option("--out", out_file, "Output CSV (default stdout)");

  std::string skin, concern;
  std::optional<ProductId> anchor;
  std::optional<double> alpha;
  bool as_json = false;
  auto* rec = app.add_subcommand("recommend", "Assemble a routine");
  rec->add_option("--skin-type", skin, "combination, dry, normal, oily or sensitive")->required();
  rec->add_option("--concern", concern, "acne, clear_skin, pigmentation or wrinkles")->required();
  rec->add_option("--anchor", anchor, "Anchor product id");
  rec->add_option("--alpha", alpha, "Similarity weight in [0,1]");
  rec->add_flag("--json", as_json, "Print JSON");

  std::string eval_file;
  auto* evaluate = app.add_subcommand("evaluate", "Metrics from a truth,pred CSV");
  evaluate->add_option("csv", eval_file, "CSV of truth,pred concern labels")->required();

  std::string host = "127.0.0.1", classifier_cmd;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON API");
  serve->add_option("--port", port, "TCP port (0 picks one)")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--classifier-cmd", classifier_cmd,
                    "Command run as `<cmd> <image-path>` for /classify-image");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ingest) return cmd_ingest(paths, source, mapping_file);
    if (*build) return cmd_build(paths, config_file);
    if (*embed) return cmd_embed(paths, category, out_file);
    if (*rec) return cmd_recommend(paths, skin, concern, anchor, alpha, as_json);
    if (*evaluate) return cmd_evaluate(eval_file);
    if (*serve) return cmd_serve(paths, host, port, classifier_cmd);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
