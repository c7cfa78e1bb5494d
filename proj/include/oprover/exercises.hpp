#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oprover/expected.hpp"
#include "oprover/formula.hpp"

namespace oprover {

struct Exercise {
  std::string id;
  std::string title;
  std::string description;
  /// Goal formulas as written in the catalog; each one parses.
  std::vector<std::string> goals;

  friend bool operator==(const Exercise&, const Exercise&) = default;
};

struct CatalogError {
  std::string message;
};

class Catalog {
 public:
  static Expected<Catalog, CatalogError> from_json(const nlohmann::json& doc);

  const std::vector<Exercise>& exercises() const { return exercises_; }
  std::size_t size() const { return exercises_.size(); }

  /// nullptr when no exercise has this id.
  const Exercise* find(std::string_view id) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<Exercise> exercises_;
};

Expected<Catalog, CatalogError> load_catalog(const std::filesystem::path& path);

struct NotFound {
  std::string id;
};

Expected<Exercise, NotFound> get_exercise(const Catalog& catalog, std::string_view id);

nlohmann::json encode_exercise(const Exercise& e);

}  // namespace oprover
