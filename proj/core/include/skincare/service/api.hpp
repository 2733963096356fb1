#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "skincare/error.hpp"
#include "skincare/service/classifier_adapter.hpp"
#include "skincare/service/engine.hpp"
#include "skincare/service/json_io.hpp"
#include "skincare/service/session_store.hpp"

namespace skincare::service {

struct ApiRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::map<std::string, std::string> query;  // also holds multipart text fields
  std::string body;
  std::optional<std::string> upload;  // multipart "image" file content
};

struct ApiResponse {
  int status = 200;
  json body;
};

/// Error body: {"error": {"code": "<snake_case>", "message": "..."}}.
ApiResponse error_response(int status, std::string_view code, std::string_view message);
/// 400 validation, 404 unknown entity, 409 stale, 500 otherwise.
int http_status(ErrorCode code) noexcept;

/// Transport-independent request router. Handlers only read the published
/// EngineState; session writes go through the SessionStore.
class Api {
 public:
  Api(std::shared_ptr<const EngineState> engine, SessionStore& sessions,
      std::shared_ptr<const ClassifierAdapter> classifier = nullptr);

  ApiResponse handle(const ApiRequest& request) const;

  /// Publishes a rebuilt engine. Requests already running keep the old one.
  void swap_engine(std::shared_ptr<const EngineState> engine);
  std::shared_ptr<const EngineState> engine() const;

 private:
  ApiResponse route(const ApiRequest& request, const EngineState& engine) const;

  mutable std::mutex engine_mutex_;
  std::shared_ptr<const EngineState> engine_;
  SessionStore& sessions_;
  std::shared_ptr<const ClassifierAdapter> classifier_;
};

}  // namespace skincare::service
