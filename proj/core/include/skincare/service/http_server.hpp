#pragma once

#include <memory>
#include <string>

#include "skincare/service/api.hpp"

namespace httplib {
class Server;
}

namespace skincare::service {

/// Serves an Api over HTTP/1.1. All routing lives in Api; this class only
/// translates requests and responses.
class HttpServer {
 public:
  explicit HttpServer(const Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port; throws Error(Io).
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();
  bool running() const;

 private:
  const Api& api_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace skincare::service
