#include "scfrl/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scfrl/errors.hpp"
#include "scfrl/rng.hpp"

namespace scfrl {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Minimal RFC-4180-style CSV reader: comma separator, optional double
// quotes, "" escapes a quote inside a quoted field. Trailing \r is stripped.
std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, std::size_t row,
                    const std::string& feature) {
  const std::string t = trim(text);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != t.size() || t.empty()) {
    throw DataError("DomainViolation: row " + std::to_string(row) +
                    ", feature '" + feature + "': '" + text +
                    "' is not a number");
  }
  return value;
}

}  // namespace

std::size_t Dataset::count_label(int code) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), code));
}

void Dataset::validate() const {
  schema.validate();
  const auto n = static_cast<std::size_t>(rows.rows());
  if (n < 1) {
    throw DataError("DomainViolation: dataset has no rows");
  }
  if (labels.size() != n) {
    throw DataError("DomainViolation: " + std::to_string(n) + " rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (rows.cols() != static_cast<Eigen::Index>(schema.feature_count())) {
    throw DataError("DomainViolation: row width " + std::to_string(rows.cols()) +
                    " does not match schema feature count " +
                    std::to_string(schema.feature_count()));
  }
  if (schema.label.values.size() != 2) {
    throw DataError("DomainViolation: label values are unresolved");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DataError("DomainViolation: row " + std::to_string(i) +
                      ": label code " + std::to_string(labels[i]) +
                      " is not binary");
    }
    for (std::size_t f = 0; f < schema.feature_count(); ++f) {
      const auto& fs = schema.features[f];
      const double v = rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f));
      if (!std::isfinite(v)) {
        throw DataError("DomainViolation: row " + std::to_string(i) +
                        ", feature '" + fs.name + "': non-finite value");
      }
      if (normalized) {
        if (v < -1.0 || v > 1.0) {
          throw DataError("DomainViolation: row " + std::to_string(i) +
                          ", feature '" + fs.name + "': normalized value " +
                          std::to_string(v) + " outside [-1, 1]");
        }
        if (fs.kind == FeatureKind::Discrete &&
            std::abs(v - fs.grid_point(fs.nearest_code(v))) > 1e-9) {
          throw DataError("DomainViolation: row " + std::to_string(i) +
                          ", feature '" + fs.name + "': value " +
                          std::to_string(v) + " is off the category grid");
        }
      } else if (fs.kind == FeatureKind::Continuous) {
        if (v < fs.min || v > fs.max) {
          throw DataError("DomainViolation: row " + std::to_string(i) +
                          ", feature '" + fs.name + "': value " +
                          std::to_string(v) + " outside [" +
                          std::to_string(fs.min) + ", " + std::to_string(fs.max) + "]");
        }
      } else {
        const long code = std::lround(v);
        if (std::abs(v - static_cast<double>(code)) > 1e-9 || code < 0 ||
            code >= fs.category_count()) {
          throw DataError("DomainViolation: row " + std::to_string(i) +
                          ", feature '" + fs.name + "': bad category code " +
                          std::to_string(v));
        }
      }
    }
  }
}

Dataset load_dataset(const std::filesystem::path& csv_path,
                     const std::filesystem::path& schema_path) {
  return load_dataset_csv(csv_path, Schema::load_file(schema_path));
}

Dataset load_dataset_csv(const std::filesystem::path& csv_path,
                         const Schema& schema_in) {
  std::ifstream in(csv_path);
  if (!in) {
    throw DataError("MissingColumn: cannot open CSV file '" + csv_path.string() +
                    "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("DomainViolation: CSV file '" + csv_path.string() +
                    "' is empty");
  }
  const auto header = parse_csv_line(line);
  std::map<std::string, int> column_of;
  for (std::size_t i = 0; i < header.size(); ++i) {
    column_of[trim(header[i])] = static_cast<int>(i);
  }

  Dataset d;
  d.schema = schema_in;
  const std::size_t nf = d.schema.feature_count();
  std::vector<int> feature_col(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    auto it = column_of.find(d.schema.features[f].name);
    if (it == column_of.end()) {
      throw DataError("MissingColumn: CSV header lacks feature column '" +
                      d.schema.features[f].name + "'");
    }
    feature_col[f] = it->second;
  }
  auto lit = column_of.find(d.schema.label.column);
  if (lit == column_of.end()) {
    throw DataError("MissingColumn: CSV header lacks label column '" +
                    d.schema.label.column + "'");
  }
  const int label_col = lit->second;

  std::vector<std::vector<double>> values;
  std::vector<std::string> raw_labels;
  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = parse_csv_line(line);
    if (fields.size() != header.size()) {
      throw DataError("DomainViolation: row " + std::to_string(row_index) +
                      ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> row(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& fs = d.schema.features[f];
      const std::string& text = fields[static_cast<std::size_t>(feature_col[f])];
      if (fs.kind == FeatureKind::Continuous) {
        const double v = parse_number(text, row_index, fs.name);
        if (v < fs.min || v > fs.max) {
          throw DataError("DomainViolation: row " + std::to_string(row_index) +
                          ", feature '" + fs.name + "': value " + trim(text) +
                          " outside [" + std::to_string(fs.min) + ", " +
                          std::to_string(fs.max) + "]");
        }
        row[f] = v;
      } else {
        const std::string cat = trim(text);
        auto pos = std::find(fs.categories.begin(), fs.categories.end(), cat);
        if (pos == fs.categories.end()) {
          throw DataError("DomainViolation: row " + std::to_string(row_index) +
                          ", feature '" + fs.name + "': unknown category '" +
                          cat + "'");
        }
        row[f] = static_cast<double>(pos - fs.categories.begin());
      }
    }
    values.push_back(std::move(row));
    raw_labels.push_back(trim(fields[static_cast<std::size_t>(label_col)]));
    ++row_index;
  }
  if (values.empty()) {
    throw DataError("DomainViolation: CSV file '" + csv_path.string() +
                    "' has no data rows");
  }

  // Resolve label values: declared in the schema, else the sorted distinct
  // raw labels (which must be exactly two).
  auto& label = d.schema.label;
  if (label.values.empty()) {
    std::vector<std::string> distinct(raw_labels);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() != 2) {
      throw DataError("DomainViolation: label column '" + label.column +
                      "' has " + std::to_string(distinct.size()) +
                      " distinct values; expected 2");
    }
    label.values = distinct;
    if (!label.declared_target.empty()) {
      auto it = std::find(label.values.begin(), label.values.end(),
                          label.declared_target);
      if (it == label.values.end()) {
        throw DataError("DomainViolation: declared target label '" +
                        label.declared_target + "' never occurs in the data");
      }
      label.target_code = static_cast<int>(it - label.values.begin());
    }
  }

  d.labels.resize(values.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    if (raw_labels[i] == label.values[0]) {
      d.labels[i] = 0;
    } else if (raw_labels[i] == label.values[1]) {
      d.labels[i] = 1;
    } else {
      throw DataError("DomainViolation: row " + std::to_string(i) +
                      ": unknown label value '" + raw_labels[i] + "'");
    }
  }

  // Minority class is the default target when the sidecar names none.
  if (label.declared_target.empty()) {
    const std::size_t ones =
        static_cast<std::size_t>(std::count(d.labels.begin(), d.labels.end(), 1));
    label.target_code = ones <= d.labels.size() - ones ? 1 : 0;
  }

  d.rows.resize(static_cast<Eigen::Index>(values.size()),
                static_cast<Eigen::Index>(nf));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t f = 0; f < nf; ++f) {
      d.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) =
          values[i][f];
    }
  }
  d.normalized = false;
  d.validate();
  return d;
}

Dataset normalize(const Dataset& d) {
  if (d.normalized) {
    throw UsageError("AlreadyNormalized: dataset is already normalized");
  }
  Dataset out = d;
  for (std::size_t f = 0; f < d.schema.feature_count(); ++f) {
    const auto& fs = d.schema.features[f];
    for (Eigen::Index i = 0; i < d.rows.rows(); ++i) {
      out.rows(i, static_cast<Eigen::Index>(f)) =
          fs.normalize_value(d.rows(i, static_cast<Eigen::Index>(f)));
    }
  }
  out.normalized = true;
  return out;
}

SplitPair split(const Dataset& d, double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw UsageError("OutOfRange: split ratio must lie strictly between 0 and 1");
  }
  const std::size_t n = d.size();
  const auto n_train = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * ratio));
  if (n_train == 0 || n_train == n) {
    throw DataError("EmptyPartition: " + std::to_string(n) + " rows at ratio " +
                    std::to_string(ratio) + " leaves one side empty");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  shuffle(order, rng);

  auto take = [&](std::size_t begin, std::size_t end) {
    Dataset part;
    part.schema = d.schema;
    part.normalized = d.normalized;
    part.rows.resize(static_cast<Eigen::Index>(end - begin), d.rows.cols());
    part.labels.resize(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      part.rows.row(static_cast<Eigen::Index>(i - begin)) =
          d.rows.row(static_cast<Eigen::Index>(order[i]));
      part.labels[i - begin] = d.labels[order[i]];
    }
    return part;
  };

  SplitPair pair;
  pair.train = take(0, n_train);
  pair.test = take(n_train, n);
  pair.seed = seed;
  return pair;
}

void fit_continuous_domains(Schema& schema, const Dataset& reference) {
  if (reference.normalized) {
    throw UsageError("AlreadyNormalized: domain fitting expects raw values");
  }
  for (std::size_t f = 0; f < schema.feature_count(); ++f) {
    auto& fs = schema.features[f];
    if (fs.kind != FeatureKind::Continuous) continue;
    const auto col = reference.rows.col(static_cast<Eigen::Index>(f));
    const double lo = col.minCoeff();
    const double hi = col.maxCoeff();
    if (lo < hi) {
      fs.min = lo;
      fs.max = hi;
    }
  }
}

ordered_json Dataset::to_json() const {
  ordered_json j;
  j["schema"] = schema.to_json();
  j["normalized"] = normalized;
  j["labels"] = labels;
  ordered_json rowsj = ordered_json::array();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    ordered_json rowj = ordered_json::array();
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      rowj.push_back(rows(i, c));
    }
    rowsj.push_back(std::move(rowj));
  }
  j["rows"] = std::move(rowsj);
  return j;
}

Dataset Dataset::from_json(const json& j) {
  Dataset d;
  try {
    d.schema = Schema::from_json(j.at("schema"));
    d.normalized = j.at("normalized").get<bool>();
    d.labels = j.at("labels").get<std::vector<int>>();
    const auto& rowsj = j.at("rows");
    const auto n = rowsj.size();
    const auto nf = d.schema.feature_count();
    d.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nf));
    for (std::size_t i = 0; i < n; ++i) {
      if (rowsj[i].size() != nf) {
        throw DataError("DomainViolation: row " + std::to_string(i) +
                        " has wrong width");
      }
      for (std::size_t c = 0; c < nf; ++c) {
        d.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
            rowsj[i][c].get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("DomainViolation: bad dataset document: ") +
                    e.what());
  }
  d.validate();
  return d;
}

void Dataset::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) {
    throw DataError("DomainViolation: cannot write dataset file '" +
                    path.string() + "'");
  }
  out << to_json().dump() << "\n";
}

Dataset Dataset::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("DomainViolation: cannot open dataset file '" +
                    path.string() + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("DomainViolation: '" + path.string() + "': " + e.what());
  }
  return from_json(j);
}

}  // namespace scfrl
