// analytics: per-exercise metrics over a directory of exported JSONL logs.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "oprover/analytics.hpp"

int main(int argc, char** argv) {
  namespace an = oprover::analytics;
  CLI::App app{"Editing-log analytics"};
  std::string metric_name;
  std::string logs_dir;
  double gap_minutes = 10;
  std::string out_path;
  std::string format = "csv";
  app.add_option("metric", metric_name, "attempts | time | checks | edit-check-ratio | deletion-addition-ratio | all")
      ->required();
  app.add_option("--logs", logs_dir, "directory of *.jsonl exports")->required();
  app.add_option("--gap-minutes", gap_minutes, "idle gap that ends a work session")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", out_path, "write CSV here instead of stdout");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  auto metric = an::metric_from_string(metric_name);
  if (!metric) {
    std::cerr << "unknown metric: " << metric_name << "\n";
    return EXIT_FAILURE;
  }
  auto logs = an::load_logs(logs_dir);
  if (!logs) {
    std::cerr << logs.error().message << "\n";
    return EXIT_FAILURE;
  }
  const auto gap = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::duration<double, std::ratio<60>>(gap_minutes));
  const std::string csv = an::to_csv(*metric, an::compute_metrics(*logs, gap));
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return EXIT_FAILURE;
    }
    out << csv;
  }
  return EXIT_SUCCESS;
}
