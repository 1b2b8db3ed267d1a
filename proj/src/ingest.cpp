// Copyright 2026 The ldpjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpjoint/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace ldpjoint {
namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && (s[begin] == ' ' || s[begin] == '\t')) ++begin;
  while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t')) --end;
  return s.substr(begin, end - begin);
}

// Reads one CSV record. Returns false at end of input. Quoted fields may
// contain the delimiter, doubled quotes, and line breaks.
bool next_record(std::istream& in, char delimiter,
                 std::vector<std::string>& fields, std::size_t line_number) {
  fields.clear();
  int first = in.peek();
  if (first == std::char_traits<char>::eof()) return false;

  std::string field;
  bool in_quotes = false;
  bool saw_any = false;
  for (int raw = in.get(); ; raw = in.get()) {
    if (raw == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw Error(ErrorCode::kParseError,
                    "unterminated quote in record starting on line " +
                        std::to_string(line_number));
      }
      break;
    }
    const char c = static_cast<char>(raw);
    saw_any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      break;
    } else {
      field += c;
    }
  }
  (void)saw_any;
  fields.push_back(std::move(field));
  return true;
}

bool record_is_blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

std::string bin_label(double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[%g,%g)", lo, hi);
  return buf;
}

struct ColumnState {
  ColumnSpec spec;
  std::size_t resolved_index = 0;
  // Label -> category index, plus labels in first-appearance order.
  std::unordered_map<std::string, std::uint32_t> mapping;
  std::vector<std::string> labels;
  bool apply_mode = false;
};

void seed_fixed_mapping(ColumnState& state, const AttributeSchema& attr) {
  state.apply_mode = true;
  state.labels = attr.categories;
  for (std::size_t i = 0; i < attr.categories.size(); ++i) {
    state.mapping.emplace(attr.categories[i],
                          static_cast<std::uint32_t>(i));
  }
}

}  // namespace

IngestReport load_csv(std::istream& in, const IngestConfig& config) {
  std::vector<std::string> fields;
  std::size_t line = 1;

  std::vector<std::string> header;
  if (config.has_header) {
    if (!next_record(in, config.delimiter, fields, line)) {
      throw Error(ErrorCode::kParseError, "input ends before the header row");
    }
    header = fields;
    if (config.trim_whitespace) {
      for (auto& h : header) h = trim(h);
    }
    ++line;
  }

  // Resolve the column plan. An empty plan keeps everything it finds in the
  // first data record (or the header when there is one).
  std::vector<ColumnState> columns;
  auto resolve = [&](const std::vector<ColumnSpec>& specs,
                     std::size_t width) {
    for (const auto& spec : specs) {
      ColumnState state;
      state.spec = spec;
      if (spec.source_index >= 0) {
        state.resolved_index = static_cast<std::size_t>(spec.source_index);
      } else {
        if (!config.has_header) {
          throw Error(ErrorCode::kUnknownColumn,
                      "column '" + spec.name +
                          "' is addressed by name but the file has no header");
        }
        auto it = std::find(header.begin(), header.end(),
                            spec.source_name.empty() ? spec.name
                                                     : spec.source_name);
        if (it == header.end()) {
          throw Error(ErrorCode::kUnknownColumn,
                      "header has no column '" +
                          (spec.source_name.empty() ? spec.name
                                                    : spec.source_name) +
                          "'");
        }
        state.resolved_index =
            static_cast<std::size_t>(it - header.begin());
      }
      if (width > 0 && state.resolved_index >= width) {
        throw Error(ErrorCode::kUnknownColumn,
                    "column '" + spec.name + "' is beyond the file width of " +
                        std::to_string(width));
      }
      columns.push_back(std::move(state));
    }
  };

  if (!config.excluded_columns.empty()) {
    if (!config.columns.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "excluded columns only apply when no column list is given");
    }
    if (!config.has_header) {
      throw Error(ErrorCode::kUnknownColumn,
                  "columns can only be excluded by name when the file has a "
                  "header");
    }
    for (const std::string& name : config.excluded_columns) {
      if (std::find(header.begin(), header.end(), name) == header.end()) {
        throw Error(ErrorCode::kUnknownColumn,
                    "header has no column '" + name + "' to exclude");
      }
    }
  }
  auto is_excluded = [&](const std::string& name) {
    return std::find(config.excluded_columns.begin(),
                     config.excluded_columns.end(),
                     name) != config.excluded_columns.end();
  };

  bool pending_first_record = false;
  std::vector<std::string> first_record;
  if (!config.columns.empty()) {
    resolve(config.columns, header.size());
  } else if (config.has_header) {
    std::vector<ColumnSpec> specs;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (is_excluded(header[i])) continue;
      ColumnSpec spec;
      spec.name = header[i].empty() ? "c" + std::to_string(i) : header[i];
      spec.source_index = static_cast<int>(i);
      specs.push_back(std::move(spec));
    }
    if (specs.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "excluding those columns leaves nothing to load");
    }
    resolve(specs, header.size());
  } else {
    // Width comes from the first data record.
    if (!next_record(in, config.delimiter, fields, line)) {
      throw Error(ErrorCode::kEmptyDataset, "input holds no records");
    }
    first_record = fields;
    pending_first_record = true;
    std::vector<ColumnSpec> specs;
    for (std::size_t i = 0; i < first_record.size(); ++i) {
      ColumnSpec spec;
      spec.name = "c" + std::to_string(i);
      spec.source_index = static_cast<int>(i);
      specs.push_back(std::move(spec));
    }
    resolve(specs, first_record.size());
  }

  if (config.fixed_schema.has_value()) {
    const DatasetSchema& schema = *config.fixed_schema;
    if (schema.attribute_count() != columns.size()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "fixed schema width does not match the column plan");
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      seed_fixed_mapping(columns[i], schema.attributes[i]);
    }
  }

  IngestReport report{0, 0,
                      CategoricalDataset(DatasetSchema{}, DataRole::kTrueData)};
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::string> labels(columns.size());

  auto is_missing_token = [&](const std::string& value) {
    return std::find(config.missing_tokens.begin(),
                     config.missing_tokens.end(),
                     value) != config.missing_tokens.end();
  };

  auto consume_record = [&](const std::vector<std::string>& record,
                            std::size_t record_line) {
    if (record_is_blank(record)) return;
    ++report.rows_read;
    bool drop = false;
    for (std::size_t c = 0; c < columns.size() && !drop; ++c) {
      ColumnState& col = columns[c];
      if (col.resolved_index >= record.size()) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(record_line) + " has " +
                        std::to_string(record.size()) +
                        " fields, column '" + col.spec.name +
                        "' needs index " +
                        std::to_string(col.resolved_index));
      }
      std::string value = record[col.resolved_index];
      if (config.trim_whitespace) value = trim(value);
      const bool missing_token = is_missing_token(value);

      std::string label;
      if (col.spec.role == ColumnRole::kBinned && !missing_token) {
        char* end = nullptr;
        const double numeric = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
          throw Error(ErrorCode::kParseError,
                      "line " + std::to_string(record_line) + ", column '" +
                          col.spec.name + "': '" + value +
                          "' is not numeric");
        }
        const auto& edges = col.spec.bin_edges;
        if (!std::isfinite(numeric) || numeric < edges.front() ||
            numeric >= edges.back()) {
          label.clear();  // out of range behaves like a missing value
        } else {
          const auto it =
              std::upper_bound(edges.begin(), edges.end(), numeric);
          const std::size_t bin =
              static_cast<std::size_t>(it - edges.begin()) - 1;
          label = bin_label(edges[bin], edges[bin + 1]);
        }
      } else if (!missing_token) {
        label = value;
      }

      if (label.empty() && (missing_token || col.spec.role ==
                                                 ColumnRole::kBinned)) {
        if (config.missing_policy == MissingPolicy::kDropRow) {
          drop = true;
          break;
        }
        label = missing_token ? value : "<out-of-range>";
      }

      if (col.apply_mode) {
        if (col.mapping.find(label) == col.mapping.end()) {
          drop = true;
          break;
        }
      }
      labels[c] = std::move(label);
    }
    if (drop) {
      ++report.rows_dropped;
      return;
    }
    std::vector<std::uint32_t> row(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      ColumnState& col = columns[c];
      auto it = col.mapping.find(labels[c]);
      if (it == col.mapping.end()) {
        const auto index = static_cast<std::uint32_t>(col.labels.size());
        it = col.mapping.emplace(labels[c], index).first;
        col.labels.push_back(labels[c]);
      }
      row[c] = it->second;
    }
    rows.push_back(std::move(row));
  };

  if (pending_first_record) {
    consume_record(first_record, line);
    ++line;
  }
  while (next_record(in, config.delimiter, fields, line)) {
    consume_record(fields, line);
    ++line;
  }

  if (rows.empty()) {
    throw Error(report.rows_read == 0 ? ErrorCode::kEmptyDataset
                                      : ErrorCode::kEmptyAfterFiltering,
                report.rows_read == 0
                    ? "input holds no records"
                    : "every record was filtered out");
  }

  DatasetSchema schema;
  for (const auto& col : columns) {
    if (!col.apply_mode && col.labels.size() < 2) {
      throw Error(ErrorCode::kDegenerateAttribute,
                  "column '" + col.spec.name +
                      "' has fewer than two observed categories");
    }
    AttributeSchema attr;
    attr.name = col.spec.name;
    attr.categories = col.labels;
    schema.attributes.push_back(std::move(attr));
  }
  CategoricalDataset data(std::move(schema), DataRole::kTrueData);
  data.reserve(rows.size());
  for (const auto& row : rows) data.append(row);
  report.data = std::move(data);
  return report;
}

IngestReport load_csv_file(const std::string& path,
                           const IngestConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  }
  return load_csv(in, config);
}

namespace {

void write_field(std::ostream& out, const std::string& value) {
  const bool needs_quotes =
      value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

void write_csv(const CategoricalDataset& data, std::ostream& out) {
  const auto& attrs = data.schema().attributes;
  for (std::size_t c = 0; c < attrs.size(); ++c) {
    if (c > 0) out << ',';
    write_field(out, attrs[c].name);
  }
  out << '\n';
  for (std::size_t r = 0; r < data.record_count(); ++r) {
    for (std::size_t c = 0; c < attrs.size(); ++c) {
      if (c > 0) out << ',';
      write_field(out, attrs[c].categories[data.cell(r, c)]);
    }
    out << '\n';
  }
}

void write_csv_file(const CategoricalDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  }
  write_csv(data, out);
}

nlohmann::ordered_json schema_report(const CategoricalDataset& data) {
  nlohmann::ordered_json report;
  report["records"] = data.record_count();
  nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
  for (const auto& attr : data.schema().attributes) {
    nlohmann::ordered_json a;
    a["name"] = attr.name;
    a["size"] = attr.size();
    attrs.push_back(std::move(a));
  }
  report["attributes"] = std::move(attrs);
  const BigCount omega = data.schema().domain_size();
  report["domain_size"] = {{"exact", omega.str()},
                           {"scientific", to_scientific(omega)}};
  return report;
}

nlohmann::ordered_json schema_to_json(const DatasetSchema& schema) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
  for (const auto& attr : schema.attributes) {
    nlohmann::ordered_json a;
    a["name"] = attr.name;
    a["categories"] = attr.categories;
    attrs.push_back(std::move(a));
  }
  out["attributes"] = std::move(attrs);
  return out;
}

DatasetSchema schema_from_json(const nlohmann::json& j) {
  DatasetSchema schema;
  if (!j.contains("attributes") || !j["attributes"].is_array()) {
    throw Error(ErrorCode::kParseError, "schema document lacks attributes");
  }
  for (const auto& a : j["attributes"]) {
    AttributeSchema attr;
    attr.name = a.at("name").get<std::string>();
    for (const auto& c : a.at("categories")) {
      attr.categories.push_back(c.get<std::string>());
    }
    if (attr.size() < 2) {
      throw Error(ErrorCode::kDegenerateAttribute,
                  "attribute '" + attr.name +
                      "' declares fewer than two categories");
    }
    schema.attributes.push_back(std::move(attr));
  }
  return schema;
}

IngestConfig config_from_json(const nlohmann::json& j) {
  IngestConfig config;
  config.has_header = j.value("header", true);
  const std::string delim = j.value("delimiter", std::string(","));
  if (delim.size() != 1) {
    throw Error(ErrorCode::kParseError, "delimiter must be one character");
  }
  config.delimiter = delim[0];
  config.trim_whitespace = j.value("trim", true);
  if (j.contains("missing_tokens")) {
    for (const auto& t : j["missing_tokens"]) {
      config.missing_tokens.push_back(t.get<std::string>());
    }
  }
  const std::string policy = j.value("missing_policy", std::string("drop_row"));
  if (policy == "drop_row") {
    config.missing_policy = MissingPolicy::kDropRow;
  } else if (policy == "as_category") {
    config.missing_policy = MissingPolicy::kAsCategory;
  } else {
    throw Error(ErrorCode::kParseError,
                "missing_policy must be drop_row or as_category");
  }
  if (j.contains("exclude")) {
    for (const auto& name : j["exclude"]) {
      config.excluded_columns.push_back(name.get<std::string>());
    }
  }
  if (j.contains("columns")) {
    for (const auto& c : j["columns"]) {
      const std::string role = c.value("role", std::string("categorical"));
      if (role == "dropped") continue;
      ColumnSpec spec;
      spec.name = c.at("name").get<std::string>();
      spec.source_index = c.value("index", -1);
      spec.source_name = c.value("source", std::string());
      if (role == "categorical") {
        spec.role = ColumnRole::kCategorical;
      } else if (role == "binned") {
        spec.role = ColumnRole::kBinned;
        if (c.contains("bins") && c["bins"].contains("edges")) {
          for (const auto& e : c["bins"]["edges"]) {
            spec.bin_edges.push_back(e.get<double>());
          }
        } else if (c.contains("bins")) {
          const double width = c["bins"].at("width").get<double>();
          const double lo = c["bins"].at("min").get<double>();
          const double hi = c["bins"].at("max").get<double>();
          if (!(width > 0.0) || !(hi > lo)) {
            throw Error(ErrorCode::kParseError,
                        "binned column '" + spec.name +
                            "' needs positive width and max > min");
          }
          for (double e = lo; e < hi; e += width) {
            spec.bin_edges.push_back(e);
          }
          spec.bin_edges.push_back(hi);
        }
        if (spec.bin_edges.size() < 2 ||
            !std::is_sorted(spec.bin_edges.begin(), spec.bin_edges.end()) ||
            std::adjacent_find(spec.bin_edges.begin(), spec.bin_edges.end()) !=
                spec.bin_edges.end()) {
          throw Error(ErrorCode::kParseError,
                      "binned column '" + spec.name +
                          "' needs strictly increasing edges");
        }
      } else {
        throw Error(ErrorCode::kParseError,
                    "column role must be categorical, binned, or dropped");
      }
      config.columns.push_back(std::move(spec));
    }
  }
  if (j.contains("schema")) {
    config.fixed_schema = schema_from_json(j["schema"]);
  }
  return config;
}

IngestConfig load_profile(const std::string& path) {
  return config_from_json(parse_json_file(path));
}

nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                "invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace ldpjoint
