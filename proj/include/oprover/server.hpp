#pragma once

// Stateless HTTP facade over the checker and the exercise catalog.
//
//   GET  /                    editor assets (static directory)
//   GET  /api/exercises       {"exercises": [exercise...]}
//   GET  /api/exercises/{id}  one exercise, 404 when unknown
//   POST /api/check           {"exercise_id": id, "trees": [tree...]}
//                             -> {"trees": [annotated...], "outcomes": [...]}

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>

#include "oprover/exercises.hpp"
#include "oprover/expected.hpp"

namespace oprover {

inline constexpr std::size_t kMaxRequestBytes = 1 << 20;

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Request handling without any transport; every reply is a function of the
/// catalog and the request alone.
class CheckService {
 public:
  explicit CheckService(Catalog catalog) : catalog_(std::move(catalog)) {}

  HttpReply list_exercises() const;
  HttpReply get_exercise(std::string_view id) const;
  HttpReply check(std::string_view body) const;

  const Catalog& catalog() const { return catalog_; }

 private:
  Catalog catalog_;
};

struct ListenAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

/// Parses "host:port", ":port", or "port".
std::optional<ListenAddress> parse_listen_address(std::string_view text);

struct ServerConfig {
  ListenAddress listen;
  std::filesystem::path catalog_path;
  std::filesystem::path assets_dir;
};

class Server {
 public:
  Server(CheckService service, std::filesystem::path assets_dir);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port, or nothing on failure.
  std::optional<int> start(const ListenAddress& addr);
  /// Serves on the calling thread until stop() is called.
  bool run(const ListenAddress& addr);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace oprover
