#include "skincare/service/api.hpp"

#include <charconv>
#include <vector>

#include "skincare/error.hpp"
#include "skincare/fingerprint.hpp"

namespace skincare::service {

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
  return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownAnchor:
    case ErrorCode::UnknownBrand:
    case ErrorCode::UnknownProduct:
    case ErrorCode::UnknownSession:
      return 404;
    case ErrorCode::StaleModel:
      return 409;
    case ErrorCode::MalformedCsv:
    case ErrorCode::UnknownCategory:
    case ErrorCode::InvalidValue:
    case ErrorCode::UnknownToken:
    case ErrorCode::LengthMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidDistribution:
    case ErrorCode::InvalidPerplexity:
    case ErrorCode::EmptyInput:
    case ErrorCode::Format:
      return 400;
    default:
      return 500;
  }
}

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

[[noreturn]] void fail(int status, std::string code, std::string message) {
  throw HttpError{status, std::move(code), std::move(message)};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    if (j > i) parts.push_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::uint64_t parse_uint(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    fail(400, "invalid_value", std::string(what) + " must be a non-negative integer");
  }
  return v;
}

const std::string* query_param(const ApiRequest& req, const std::string& name) {
  auto it = req.query.find(name);
  if (it == req.query.end() || it->second.empty()) return nullptr;
  return &it->second;
}

json parse_body(const ApiRequest& req) {
  if (req.body.empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) fail(400, "invalid_json", "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    fail(400, "invalid_json", std::string("request body is not valid JSON: ") + e.what());
  }
}

template <typename T, typename Parse>
T parse_enum(const std::string& text, Parse parse, const char* what) {
  auto v = parse(text);
  if (!v) fail(400, "invalid_value", "unknown " + std::string(what) + " '" + text + "'");
  return *v;
}

void check_fingerprint(const json& body, const EngineState& engine) {
  if (!body.contains("fingerprint") || body.at("fingerprint").is_null()) return;
  const json& f = body.at("fingerprint");
  if (!f.is_string()) fail(400, "invalid_value", "fingerprint must be a hex string");
  std::uint64_t fp = 0;
  try {
    fp = from_hex(f.get<std::string>());
  } catch (const Error&) {
    fail(400, "invalid_value", "fingerprint must be 16 hex digits");
  }
  if (fp != engine.fingerprint) {
    fail(409, "stale_fingerprint",
         "request was built against catalog " + f.get<std::string>() + ", engine serves " +
             to_hex(engine.fingerprint));
  }
}

json product_summary(const Product& p) {
  return {{"product_id", p.id},
          {"brand", p.brand},
          {"name", p.name},
          {"category", key(p.category)}};
}

ApiResponse health(const EngineState& e, const SessionStore& sessions, bool classifier) {
  return {200,
          {{"status", "ok"},
           {"fingerprint", to_hex(e.fingerprint)},
           {"products", e.catalog.size()},
           {"vocabulary", e.vocabulary.size()},
           {"embeddings", [&] {
              json scopes = json::array();
              for (const auto& [scope, _] : e.embeddings) scopes.push_back(scope);
              return scopes;
            }()},
           {"cache_hit", e.cache_hit},
           {"sessions", sessions.size()},
           {"classifier", classifier}}};
}

ApiResponse list_products(const ApiRequest& req, const EngineState& e) {
  ProductFilter where;
  if (auto* v = query_param(req, "category")) {
    where.category = parse_enum<Category>(*v, try_parse_category, "category");
  }
  if (auto* v = query_param(req, "skin_type")) {
    where.skin_type = parse_enum<SkinType>(*v, try_parse_skin_type, "skin_type");
  }
  if (auto* v = query_param(req, "issue")) {
    where.issue = parse_enum<Concern>(*v, try_parse_concern, "issue");
  }
  if (auto* v = query_param(req, "brand")) {
    if (!e.catalog.has_brand(*v)) fail(404, "unknown_brand", "no product of brand '" + *v + "'");
    where.brand = *v;
  }
  json items = json::array();
  for (const Product& p : filter(e.catalog, where)) items.push_back(to_json(p));
  return {200, {{"count", items.size()}, {"products", std::move(items)}}};
}

const Product& product_or_404(const EngineState& e, const std::string& id_text) {
  const ProductId id = parse_uint(id_text, "product id");
  const Product* p = e.catalog.find(id);
  if (!p) fail(404, "unknown_product", "no product with id " + id_text);
  return *p;
}

ApiResponse similar(const ApiRequest& req, const EngineState& e, const Product& p) {
  std::size_t k = 5;
  if (auto* v = query_param(req, "k")) {
    k = parse_uint(*v, "k");
    if (k == 0) fail(400, "invalid_value", "k must be at least 1");
  }
  RowMask mask;
  std::optional<Category> category;
  if (auto* v = query_param(req, "category")) {
    category = parse_enum<Category>(*v, try_parse_category, "category");
    mask = [&e, c = *category](std::size_t row) {
      return e.catalog.at(e.matrix.product_id(row)).category == c;
    };
  }
  const std::size_t row = *e.matrix.row_of(p.id);
  json list = json::array();
  for (const Neighbor& n : nearest(e.matrix, row, k, mask)) {
    json item = product_summary(e.catalog.at(n.product_id));
    item["similarity"] = n.similarity;
    list.push_back(std::move(item));
  }
  return {200, {{"product_id", p.id}, {"k", k}, {"neighbors", std::move(list)}}};
}

ApiResponse embedding(const ApiRequest& req, const EngineState& e) {
  std::string scope = "global";
  if (auto* v = query_param(req, "scope")) scope = *v;
  auto parsed = parse_embedding_scope(scope);
  if (!parsed) fail(400, "invalid_value", "scope must be global or category:<category>");
  const std::string canonical = embedding_scope(*parsed);
  auto it = e.embeddings.find(canonical);
  if (it == e.embeddings.end()) {
    fail(404, "unknown_embedding", "no embedding was fitted for scope '" + canonical + "'");
  }
  return {200, to_json(it->second, canonical, e.catalog)};
}

ApiResponse classify_image(const ApiRequest& req, const ClassifierAdapter* classifier) {
  if (!classifier) {
    fail(501, "classifier_not_bundled",
         "image classification needs an external classifier adapter");
  }
  if (!req.upload || req.upload->empty()) {
    fail(400, "missing_image", "multipart field 'image' is required");
  }
  std::optional<SkinType> skin_type;
  if (auto* v = query_param(req, "skin_type")) {
    skin_type = parse_enum<SkinType>(*v, try_parse_skin_type, "skin_type");
  }
  return {200, {{"assessment", to_json(classifier->classify(*req.upload, skin_type))}}};
}

Session session_or_404(const SessionStore& store, const std::string& id) {
  auto s = store.get(id);
  if (!s) fail(404, "unknown_session", "no session '" + id + "'");
  return *s;
}

ApiResponse recommend_route(const json& body, const EngineState& e, SessionStore& store,
                            const std::string& sid) {
  session_or_404(store, sid);
  check_fingerprint(body, e);
  if (!body.contains("assessment")) fail(400, "invalid_value", "missing field 'assessment'");
  const SkinAssessment a = assessment_from_json(body.at("assessment"));
  std::optional<ProductId> anchor;
  if (body.contains("anchor") && !body.at("anchor").is_null()) {
    if (!body.at("anchor").is_number_unsigned()) {
      fail(400, "invalid_value", "anchor must be a product id");
    }
    anchor = body.at("anchor").get<ProductId>();
  }
  double alpha = e.config.alpha;
  if (body.contains("alpha") && !body.at("alpha").is_null()) {
    if (!body.at("alpha").is_number()) fail(400, "invalid_value", "alpha must be a number");
    alpha = body.at("alpha").get<double>();
  }
  Routine r = recommend(e.catalog, e.matrix, e.model, a, anchor, alpha);
  r = store.record(sid, a, std::move(r));
  return {200, {{"session_id", sid}, {"routine", to_json(r, &e.catalog)}}};
}

ApiResponse alternatives_route(const json& body, const EngineState& e, const SessionStore& store,
                               const std::string& sid) {
  const Session s = session_or_404(store, sid);
  check_fingerprint(body, e);
  if (s.routines.empty()) {
    fail(400, "no_routine", "session has no routine yet; call recommend first");
  }
  if (!body.contains("category") || !body.at("category").is_string()) {
    fail(400, "invalid_value", "field 'category' must be a string");
  }
  if (!body.contains("brand") || !body.at("brand").is_string()) {
    fail(400, "invalid_value", "field 'brand' must be a string");
  }
  const Category c =
      parse_enum<Category>(body.at("category").get<std::string>(), try_parse_category, "category");
  const std::string brand = body.at("brand").get<std::string>();
  const Routine& last = s.routines.back();
  if (last.fingerprint != e.fingerprint) {
    fail(409, "stale_fingerprint", "the session's routine was built against another catalog");
  }
  json list = json::array();
  for (const auto& sp : alternatives(e.catalog, e.matrix, last, c, brand)) {
    list.push_back(to_json(sp, &e.catalog));
  }
  return {200,
          {{"session_id", sid},
           {"category", key(c)},
           {"brand", brand},
           {"alternatives", std::move(list)}}};
}

}  // namespace

Api::Api(std::shared_ptr<const EngineState> engine, SessionStore& sessions,
         std::shared_ptr<const ClassifierAdapter> classifier)
    : engine_(std::move(engine)), sessions_(sessions), classifier_(std::move(classifier)) {
  if (!engine_) throw Error(ErrorCode::InvalidArgument, "api needs a built engine");
}

void Api::swap_engine(std::shared_ptr<const EngineState> engine) {
  if (!engine) throw Error(ErrorCode::InvalidArgument, "cannot publish an empty engine");
  std::lock_guard lock(engine_mutex_);
  engine_ = std::move(engine);
}

std::shared_ptr<const EngineState> Api::engine() const {
  std::lock_guard lock(engine_mutex_);
  return engine_;
}

ApiResponse Api::handle(const ApiRequest& request) const {
  const auto engine = this->engine();
  try {
    return route(request, *engine);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const Error& e) {
    return error_response(http_status(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "invalid_json", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

ApiResponse Api::route(const ApiRequest& req, const EngineState& e) const {
  const auto parts = split_path(req.path);
  const bool get = req.method == "GET";
  const bool post = req.method == "POST";
  auto method_guard = [&](bool ok) {
    if (!ok) fail(405, "method_not_allowed", req.method + " is not allowed on " + req.path);
  };
  const std::size_t n = parts.size();

  if (n == 1 && parts[0] == "health") {
    method_guard(get);
    return health(e, sessions_, classifier_ != nullptr);
  }
  if (n >= 1 && parts[0] == "products") {
    method_guard(get);
    if (n == 1) return list_products(req, e);
    const Product& p = product_or_404(e, parts[1]);
    if (n == 2) return {200, to_json(p)};
    if (n == 3 && parts[2] == "similar") return similar(req, e, p);
  }
  if (n == 1 && parts[0] == "embedding") {
    method_guard(get);
    return embedding(req, e);
  }
  if (n == 1 && parts[0] == "assess") {
    method_guard(post);
    return {200, {{"assessment", to_json(assessment_from_json(parse_body(req)))}}};
  }
  if (n == 1 && parts[0] == "classify-image") {
    method_guard(post);
    return classify_image(req, classifier_.get());
  }
  if (n >= 1 && parts[0] == "sessions") {
    if (n == 1) {
      method_guard(post);
      return {201, {{"session", to_json(sessions_.create())}}};
    }
    if (n == 3 && parts[2] == "recommend") {
      method_guard(post);
      return recommend_route(parse_body(req), e, sessions_, parts[1]);
    }
    if (n == 3 && parts[2] == "alternatives") {
      method_guard(post);
      return alternatives_route(parse_body(req), e, sessions_, parts[1]);
    }
    if (n == 3 && parts[2] == "history") {
      method_guard(get);
      return {200, to_json(session_or_404(sessions_, parts[1]), &e.catalog)};
    }
  }
  fail(404, "not_found", "no route for " + req.method + " " + req.path);
}

}  // namespace skincare::service
