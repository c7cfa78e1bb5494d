#include "oprover/exercises.hpp"

#include <fstream>
#include <set>

namespace oprover {

using nlohmann::json;

namespace {

Expected<std::string, CatalogError> text_field(const json& e, const char* key, const std::string& where) {
  auto it = e.find(key);
  if (it == e.end() || !it->is_string()) {
    return unexpected(CatalogError{where + ": field \"" + key + "\" must be a string"});
  }
  return it->get<std::string>();
}

}  // namespace

Expected<Catalog, CatalogError> Catalog::from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("exercises") || !doc["exercises"].is_array()) {
    return unexpected(CatalogError{"catalog must be an object with an \"exercises\" array"});
  }
  Catalog cat;
  std::set<std::string> seen;
  const auto& list = doc["exercises"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& e = list[i];
    const std::string where = "exercise #" + std::to_string(i);
    if (!e.is_object()) return unexpected(CatalogError{where + ": expected an object"});

    Exercise ex;
    auto id = text_field(e, "id", where);
    if (!id) return unexpected(id.error());
    ex.id = *id;
    if (ex.id.empty()) return unexpected(CatalogError{where + ": empty id"});
    if (!seen.insert(ex.id).second) return unexpected(CatalogError{"duplicate exercise id \"" + ex.id + "\""});

    auto title = text_field(e, "title", "exercise " + ex.id);
    if (!title) return unexpected(title.error());
    ex.title = *title;
    auto desc = text_field(e, "description", "exercise " + ex.id);
    if (!desc) return unexpected(desc.error());
    ex.description = *desc;

    auto goals = e.find("goals");
    if (goals == e.end() || !goals->is_array() || goals->empty()) {
      return unexpected(CatalogError{"exercise " + ex.id + ": \"goals\" must be a nonempty array"});
    }
    for (std::size_t g = 0; g < goals->size(); ++g) {
      const auto& goal = (*goals)[g];
      if (!goal.is_string()) {
        return unexpected(CatalogError{"exercise " + ex.id + ": goal " + std::to_string(g) + " is not a string"});
      }
      auto parsed = parse_formula(goal.get<std::string>());
      if (!parsed) {
        return unexpected(CatalogError{"exercise " + ex.id + ": goal " + std::to_string(g) + " does not parse " +
                                       parsed.error().describe()});
      }
      ex.goals.push_back(goal.get<std::string>());
    }
    cat.exercises_.push_back(std::move(ex));
  }
  if (cat.exercises_.empty()) return unexpected(CatalogError{"catalog has no exercises"});
  return cat;
}

const Exercise* Catalog::find(std::string_view id) const {
  for (const auto& e : exercises_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

Expected<Catalog, CatalogError> load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return unexpected(CatalogError{"cannot read catalog file " + path.string()});
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) return unexpected(CatalogError{path.string() + " is not valid JSON"});
  return Catalog::from_json(doc);
}

Expected<Exercise, NotFound> get_exercise(const Catalog& catalog, std::string_view id) {
  if (const auto* e = catalog.find(id)) return *e;
  return unexpected(NotFound{std::string(id)});
}

json encode_exercise(const Exercise& e) {
  return json{{"id", e.id}, {"title", e.title}, {"description", e.description}, {"goals", e.goals}};
}

}  // namespace oprover
