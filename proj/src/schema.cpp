#include "scfrl/schema.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "scfrl/errors.hpp"

namespace scfrl {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(FeatureKind kind) {
  return kind == FeatureKind::Continuous ? "continuous" : "discrete";
}

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "continuous") return FeatureKind::Continuous;
  if (s == "discrete") return FeatureKind::Discrete;
  throw DataError("MalformedSchema: unknown feature kind '" + s + "'");
}

double FeatureSchema::grid_point(int code) const {
  const int c = category_count();
  return -1.0 + 2.0 * static_cast<double>(code) / static_cast<double>(c - 1);
}

int FeatureSchema::nearest_code(double value) const {
  const int c = category_count();
  const long code = std::lround((value + 1.0) * static_cast<double>(c - 1) / 2.0);
  return static_cast<int>(std::clamp(code, 0L, static_cast<long>(c - 1)));
}

double FeatureSchema::normalize_value(double raw) const {
  if (kind == FeatureKind::Continuous) {
    const double t = 2.0 * (raw - min) / (max - min) - 1.0;
    return std::clamp(t, -1.0, 1.0);
  }
  const long code = std::lround(raw);
  if (code < 0 || code >= category_count()) {
    throw DataError("DomainViolation: feature '" + name + "': category code " +
                    std::to_string(code) + " outside 0.." +
                    std::to_string(category_count() - 1));
  }
  return grid_point(static_cast<int>(code));
}

double FeatureSchema::denormalize_value(double value) const {
  if (value < -1.0 || value > 1.0 || !std::isfinite(value)) {
    throw UsageError("OutOfRange: normalized value " + std::to_string(value) +
                     " for feature '" + name + "' not in [-1, 1]");
  }
  if (kind == FeatureKind::Continuous) {
    return min + (value + 1.0) * (max - min) / 2.0;
  }
  return static_cast<double>(nearest_code(value));
}

std::string FeatureSchema::denormalize_label(double value) const {
  if (kind != FeatureKind::Discrete) {
    throw UsageError("OutOfRange: feature '" + name + "' has no categories");
  }
  return categories[static_cast<std::size_t>(
      static_cast<int>(denormalize_value(value)))];
}

double FeatureSchema::snap(double value) const {
  if (kind == FeatureKind::Continuous) return value;
  return grid_point(nearest_code(value));
}

void FeatureSchema::validate() const {
  if (name.empty()) {
    throw DataError("MalformedSchema: feature with empty name");
  }
  if (kind == FeatureKind::Continuous) {
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
      throw DataError("MalformedSchema: feature '" + name +
                      "': continuous domain requires min < max, got [" +
                      std::to_string(min) + ", " + std::to_string(max) + "]");
    }
  } else {
    if (category_count() < 2) {
      throw DataError("MalformedSchema: feature '" + name +
                      "': discrete domain requires at least 2 categories");
    }
    std::set<std::string> seen(categories.begin(), categories.end());
    if (seen.size() != categories.size()) {
      throw DataError("MalformedSchema: feature '" + name +
                      "': duplicate category label");
    }
  }
}

int Schema::mutable_count() const {
  return static_cast<int>(mutable_indices().size());
}

std::vector<int> Schema::mutable_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].is_mutable) out.push_back(static_cast<int>(i));
  }
  return out;
}

int Schema::feature_index(const std::string& name) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void Schema::validate() const {
  if (features.empty()) {
    throw DataError("MalformedSchema: schema declares no features");
  }
  std::set<std::string> names;
  for (const auto& f : features) {
    f.validate();
    if (!names.insert(f.name).second) {
      throw DataError("MalformedSchema: duplicate feature name '" + f.name + "'");
    }
  }
  if (label.column.empty()) {
    throw DataError("MalformedSchema: label column name is empty");
  }
  if (names.count(label.column) != 0) {
    throw DataError("MalformedSchema: label column '" + label.column +
                    "' collides with a feature name");
  }
  if (!label.values.empty()) {
    if (label.values.size() != 2 || label.values[0] == label.values[1]) {
      throw DataError("MalformedSchema: label values must be two distinct entries");
    }
    if (label.target_code != 0 && label.target_code != 1) {
      throw DataError("MalformedSchema: target code must be 0 or 1");
    }
  }
}

ordered_json Schema::to_json() const {
  ordered_json j;
  j["label"] = ordered_json::object();
  j["label"]["column"] = label.column;
  if (!label.values.empty()) {
    j["label"]["values"] = label.values;
    j["label"]["target"] = label.values[static_cast<std::size_t>(label.target_code)];
  } else if (!label.declared_target.empty()) {
    j["label"]["target"] = label.declared_target;
  }
  j["features"] = ordered_json::array();
  for (const auto& f : features) {
    ordered_json fj;
    fj["name"] = f.name;
    fj["kind"] = to_string(f.kind);
    fj["mutable"] = f.is_mutable;
    if (f.kind == FeatureKind::Continuous) {
      fj["min"] = f.min;
      fj["max"] = f.max;
    } else {
      fj["categories"] = f.categories;
    }
    j["features"].push_back(std::move(fj));
  }
  return j;
}

Schema Schema::from_json(const json& j) {
  Schema schema;
  try {
    if (!j.contains("features") || !j["features"].is_array()) {
      throw DataError("MalformedSchema: missing 'features' array");
    }
    for (const auto& fj : j["features"]) {
      FeatureSchema f;
      f.name = fj.at("name").get<std::string>();
      f.kind = feature_kind_from_string(fj.at("kind").get<std::string>());
      f.is_mutable = fj.value("mutable", true);
      if (f.kind == FeatureKind::Continuous) {
        if (!fj.contains("min") || !fj.contains("max")) {
          throw DataError("MalformedSchema: feature '" + f.name +
                          "': continuous features need 'min' and 'max'");
        }
        f.min = fj["min"].get<double>();
        f.max = fj["max"].get<double>();
      } else {
        if (!fj.contains("categories")) {
          throw DataError("MalformedSchema: feature '" + f.name +
                          "': discrete features need 'categories'");
        }
        f.categories = fj["categories"].get<std::vector<std::string>>();
      }
      schema.features.push_back(std::move(f));
    }
    if (j.contains("label")) {
      const auto& lj = j["label"];
      schema.label.column = lj.value("column", std::string("label"));
      if (lj.contains("values")) {
        schema.label.values = lj["values"].get<std::vector<std::string>>();
      }
      if (lj.contains("target")) {
        schema.label.declared_target = lj["target"].get<std::string>();
        if (!schema.label.values.empty()) {
          auto it = std::find(schema.label.values.begin(),
                              schema.label.values.end(),
                              schema.label.declared_target);
          if (it == schema.label.values.end()) {
            throw DataError("MalformedSchema: target label '" +
                            schema.label.declared_target +
                            "' is not one of the declared label values");
          }
          schema.label.target_code =
              static_cast<int>(it - schema.label.values.begin());
        }
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("MalformedSchema: ") + e.what());
  }
  schema.validate();
  return schema;
}

Schema Schema::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("MalformedSchema: cannot open schema file '" +
                    path.string() + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("MalformedSchema: '" + path.string() + "': " + e.what());
  }
  return from_json(j);
}

void Schema::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw DataError("MalformedSchema: cannot write schema file '" +
                    path.string() + "'");
  }
  out << to_json().dump(2) << "\n";
}

}  // namespace scfrl
