#include "oprover/server.hpp"

#include <algorithm>
#include <charconv>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "oprover/checker.hpp"
#include "oprover/derivation.hpp"

namespace oprover {

using nlohmann::json;

namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump(), "application/json"};
}

}  // namespace

HttpReply CheckService::list_exercises() const {
  json list = json::array();
  for (const auto& e : catalog_.exercises()) list.push_back(encode_exercise(e));
  return {200, json{{"exercises", std::move(list)}}.dump()};
}

HttpReply CheckService::get_exercise(std::string_view id) const {
  const Exercise* e = catalog_.find(id);
  if (!e) return error_reply(404, "unknown exercise \"" + std::string(id) + "\"");
  return {200, encode_exercise(*e).dump()};
}

HttpReply CheckService::check(std::string_view body) const {
  if (body.size() > kMaxRequestBytes) return error_reply(400, "request body exceeds 1 MiB");
  json req = json::parse(body, nullptr, false);
  if (req.is_discarded()) return error_reply(400, "request body is not valid JSON");
  if (!req.is_object()) return error_reply(400, "request must be a JSON object");
  for (const auto& [key, _] : req.items()) {
    if (key != "exercise_id" && key != "trees") return error_reply(400, "/" + key + ": unexpected key");
  }
  auto id = req.find("exercise_id");
  if (id == req.end() || !id->is_string()) return error_reply(400, "/exercise_id: expected a string");
  auto trees = req.find("trees");
  if (trees == req.end() || !trees->is_array()) return error_reply(400, "/trees: expected an array");
  if (trees->empty()) return error_reply(400, "/trees: at least one tree is required");

  const Exercise* ex = catalog_.find(id->get<std::string>());
  if (!ex) return error_reply(400, "unknown exercise \"" + id->get<std::string>() + "\"");

  json out_trees = json::array();
  json outcomes = json::array();
  for (std::size_t i = 0; i < trees->size(); ++i) {
    auto tree = decode_tree((*trees)[i]);
    if (!tree) return error_reply(400, "/trees/" + std::to_string(i) + tree.error().describe());
    if (std::find(ex->goals.begin(), ex->goals.end(), tree->goal()) == ex->goals.end()) {
      return error_reply(400, "/trees/" + std::to_string(i) + "/goal: not a goal of exercise " + ex->id);
    }
    auto result = check_tree(*tree);
    out_trees.push_back(encode_annotated(result.tree));
    outcomes.push_back(to_string(result.outcome));
  }
  return {200, json{{"trees", std::move(out_trees)}, {"outcomes", std::move(outcomes)}}.dump()};
}

std::optional<ListenAddress> parse_listen_address(std::string_view text) {
  ListenAddress addr;
  std::string_view port_part = text;
  if (auto colon = text.rfind(':'); colon != std::string_view::npos) {
    if (colon > 0) addr.host = std::string(text.substr(0, colon));
    port_part = text.substr(colon + 1);
  }
  int port = -1;
  auto [ptr, ec] = std::from_chars(port_part.data(), port_part.data() + port_part.size(), port);
  if (ec != std::errc{} || ptr != port_part.data() + port_part.size() || port < 0 || port > 65535) return std::nullopt;
  addr.port = port;
  return addr;
}

struct Server::Impl {
  CheckService service;
  std::filesystem::path assets;
  httplib::Server http;
  std::thread worker;

  Impl(CheckService s, std::filesystem::path a) : service(std::move(s)), assets(std::move(a)) {
    auto send = [](httplib::Response& res, const HttpReply& r) {
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };
    http.Get("/api/exercises", [this, send](const httplib::Request&, httplib::Response& res) {
      send(res, service.list_exercises());
    });
    http.Get(R"(/api/exercises/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service.get_exercise(req.matches[1].str()));
    });
    http.Post("/api/check", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, service.check(req.body));
    });
    if (!assets.empty()) http.set_mount_point("/", assets.string());
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) res.set_content(json{{"error", "not found"}}.dump(), "application/json");
    });
  }
};

Server::Server(CheckService service, std::filesystem::path assets_dir)
    : impl_(std::make_unique<Impl>(std::move(service), std::move(assets_dir))) {}

Server::~Server() { stop(); }

std::optional<int> Server::start(const ListenAddress& addr) {
  int port = addr.port;
  if (port == 0) {
    port = impl_->http.bind_to_any_port(addr.host);
    if (port < 0) return std::nullopt;
  } else if (!impl_->http.bind_to_port(addr.host, port)) {
    return std::nullopt;
  }
  impl_->worker = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return port;
}

bool Server::run(const ListenAddress& addr) { return impl_->http.listen(addr.host, addr.port); }

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace oprover
