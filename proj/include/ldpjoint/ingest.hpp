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

#ifndef LDPJOINT_INGEST_HPP_
#define LDPJOINT_INGEST_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ldpjoint/domain.hpp"

namespace ldpjoint {

// What to do with a record whose kept columns include a missing value.
enum class MissingPolicy { kDropRow, kAsCategory };

enum class ColumnRole { kCategorical, kBinned };

struct ColumnSpec {
  std::string name;
  // Position in the source file, or -1 to resolve `source_name` against the
  // header row.
  int source_index = -1;
  std::string source_name;
  ColumnRole role = ColumnRole::kCategorical;
  // Strictly increasing edges for kBinned; values land in [e_i, e_{i+1}),
  // anything outside [first, last) counts as missing.
  std::vector<double> bin_edges;
};

struct IngestConfig {
  bool has_header = true;
  char delimiter = ',';
  bool trim_whitespace = true;
  std::vector<std::string> missing_tokens;
  MissingPolicy missing_policy = MissingPolicy::kDropRow;
  // Empty means: keep every source column as a categorical attribute named
  // after the header (or "c<i>" without one).
  std::vector<ColumnSpec> columns;
  // Header names to drop when `columns` is empty, for wide files where
  // enumerating the kept columns would be tedious. Requires a header; every
  // listed name must appear in it.
  std::vector<std::string> excluded_columns;
  // When set, labels map through this schema instead of first-appearance
  // order, and records with labels outside it are dropped.
  std::optional<DatasetSchema> fixed_schema;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
  CategoricalDataset data;
};

// Streams CSV (RFC 4180 quoting, configurable delimiter) into a categorical
// dataset. Category indices follow first appearance unless a fixed schema is
// given. Raises kParseError with row context on malformed input,
// kEmptyAfterFiltering when no record survives, kDegenerateAttribute when an
// inferred attribute ends up with fewer than two categories.
IngestReport load_csv(std::istream& in, const IngestConfig& config);
IngestReport load_csv_file(const std::string& path, const IngestConfig& config);

// Writes header plus one label row per record, quoting only where needed.
// Reloading the output against the dataset's own schema reproduces the index
// matrix exactly.
void write_csv(const CategoricalDataset& data, std::ostream& out);
void write_csv_file(const CategoricalDataset& data, const std::string& path);

// Machine-readable dataset summary: record count, per-attribute names and
// domain sizes, and the cross-attribute domain size both exactly and in
// seven-digit scientific notation.
nlohmann::ordered_json schema_report(const CategoricalDataset& data);

nlohmann::ordered_json schema_to_json(const DatasetSchema& schema);
DatasetSchema schema_from_json(const nlohmann::json& j);

// Ingest configuration from a profile document; see profiles/ for examples.
IngestConfig config_from_json(const nlohmann::json& j);
IngestConfig load_profile(const std::string& path);

nlohmann::json parse_json_file(const std::string& path);

}  // namespace ldpjoint

#endif  // LDPJOINT_INGEST_HPP_
