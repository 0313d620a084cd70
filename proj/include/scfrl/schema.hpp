#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace scfrl {

enum class FeatureKind { Continuous, Discrete };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& s);

// Per-feature metadata. The domain doubles as the normalization parameters:
// the affine map sends [min, max] onto [-1, 1] exactly, and discrete codes
// 0..C-1 sit on the uniform grid {-1, -1 + 2/(C-1), ..., 1}.
struct FeatureSchema {
  std::string name;
  FeatureKind kind = FeatureKind::Continuous;
  bool is_mutable = true;

  // Continuous domain in raw units; ignored for discrete features.
  double min = 0.0;
  double max = 1.0;

  // Ordered category labels; code = position. Ignored for continuous.
  std::vector<std::string> categories;

  int category_count() const { return static_cast<int>(categories.size()); }

  // Grid position of a category code in normalized space.
  double grid_point(int code) const;

  // Nearest grid code for a normalized value in [-1, 1].
  int nearest_code(double value) const;

  // Raw value -> [-1, 1]. Continuous values are clamped so rows outside a
  // refitted domain still yield valid states; discrete values are the
  // category code.
  double normalize_value(double raw) const;

  // Inverse of normalize_value. For discrete features returns the nearest
  // grid point's code. Throws on values outside [-1, 1].
  double denormalize_value(double value) const;

  // Category label of the nearest grid point.
  std::string denormalize_label(double value) const;

  // Environment-side projection of an action value onto the feature's
  // normalized domain: identity for continuous, nearest grid point for
  // discrete.
  double snap(double value) const;

  void validate() const;
};

// Binary label metadata: raw label values (codes 0/1 by position) and which
// code counterfactuals must reach. `values` may be empty until a dataset is
// loaded; `declared_target` keeps the sidecar's target value, if any, until
// then (empty means: default to the minority class).
struct LabelSpec {
  std::string column = "label";
  std::vector<std::string> values;  // size 2 once resolved
  int target_code = 1;
  std::string declared_target;
};

struct Schema {
  std::vector<FeatureSchema> features;
  LabelSpec label;

  std::size_t feature_count() const { return features.size(); }
  int mutable_count() const;
  std::vector<int> mutable_indices() const;
  int feature_index(const std::string& name) const;  // -1 when absent

  void validate() const;

  nlohmann::ordered_json to_json() const;
  static Schema from_json(const nlohmann::json& j);
  static Schema load_file(const std::filesystem::path& path);
  void save_file(const std::filesystem::path& path) const;
};

}  // namespace scfrl
