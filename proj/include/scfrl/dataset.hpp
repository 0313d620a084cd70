#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "scfrl/schema.hpp"

namespace scfrl {

// Rows hold continuous values in raw units and discrete values as category
// codes until normalize() maps everything onto [-1, 1].
struct Dataset {
  Schema schema;
  Eigen::MatrixXd rows;     // n x feature_count
  std::vector<int> labels;  // internal codes 0/1, aligned with rows
  bool normalized = false;

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
  int target_code() const { return schema.label.target_code; }
  Eigen::VectorXd row(std::size_t i) const { return rows.row(static_cast<Eigen::Index>(i)); }
  std::size_t count_label(int code) const;

  void validate() const;

  nlohmann::ordered_json to_json() const;
  static Dataset from_json(const nlohmann::json& j);
  void save_file(const std::filesystem::path& path) const;
  static Dataset load_file(const std::filesystem::path& path);
};

struct SplitPair {
  Dataset train;
  Dataset test;
  std::uint64_t seed = 0;
};

// Reads a CSV against a sidecar schema. Every schema feature and the label
// column must appear in the header; values are validated against domains.
Dataset load_dataset(const std::filesystem::path& csv_path,
                     const std::filesystem::path& schema_path);

// Same, with the schema already in hand.
Dataset load_dataset_csv(const std::filesystem::path& csv_path,
                         const Schema& schema);

// Maps every value onto [-1, 1] using the schema's domains.
Dataset normalize(const Dataset& d);

// Deterministic shuffled partition; |train| = round(n * ratio).
SplitPair split(const Dataset& d, double ratio, std::uint64_t seed);

// Refits continuous feature domains to the min/max observed in `reference`
// (the training split), so normalization statistics never leak from test
// rows. Degenerate columns keep their declared domain.
void fit_continuous_domains(Schema& schema, const Dataset& reference);

}  // namespace scfrl
