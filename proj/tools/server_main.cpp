// onlineprover-server: serves the editor, the exercise catalog, and the check endpoint.

#include <csignal>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "oprover/exercises.hpp"
#include "oprover/server.hpp"

namespace {
oprover::Server* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OnlineProver check server"};
  std::string listen = "127.0.0.1:8080";
  std::string catalog_path = "data/catalog.json";
  std::string assets_dir = "web";
  app.add_option("--listen", listen, "host:port to listen on")->envname("ONLINEPROVER_LISTEN")->capture_default_str();
  app.add_option("--catalog", catalog_path, "exercise catalog JSON file")
      ->envname("ONLINEPROVER_CATALOG")
      ->capture_default_str();
  app.add_option("--assets", assets_dir, "directory with the editor's static files")
      ->envname("ONLINEPROVER_ASSETS")
      ->capture_default_str();
  app.set_config("--config", "", "INI or TOML file with listen/catalog/assets keys");
  CLI11_PARSE(app, argc, argv);

  auto addr = oprover::parse_listen_address(listen);
  if (!addr) {
    std::cerr << "invalid --listen address: " << listen << "\n";
    return EXIT_FAILURE;
  }
  auto catalog = oprover::load_catalog(catalog_path);
  if (!catalog) {
    std::cerr << "cannot load catalog: " << catalog.error().message << "\n";
    return EXIT_FAILURE;
  }
  std::cerr << "loaded " << catalog->size() << " exercises from " << catalog_path << "\n";

  oprover::Server server(oprover::CheckService(std::move(*catalog)), assets_dir);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "listening on " << addr->host << ":" << addr->port << "\n";
  if (!server.run(*addr)) {
    std::cerr << "cannot listen on " << listen << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
