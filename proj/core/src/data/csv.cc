// Copyright 2026 The fedxgb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedxgb/data/csv.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fedxgb/common/errors.h"

namespace fedxgb::data {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Where(size_t row, const std::string& column) {
  return "row " + std::to_string(row) + ", column " + column;
}

double ParseNumber(const std::string& cell, size_t row, const std::string& column) {
  std::string t = Trim(cell);
  if (t.empty()) throw DataError("missing value at " + Where(row, column));
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw DataError("non-numeric value '" + t + "' at " + Where(row, column));
  }
  return v;
}

}  // namespace

PartyDataset ParseCsv(std::istream& in, const std::vector<FeatureDescriptor>& schema,
                      const std::string& party_id) {
  std::string line;
  if (!std::getline(in, line) || Trim(line).empty()) {
    throw DataError("empty CSV file");
  }
  std::vector<std::string> header = SplitLine(line);
  for (auto& h : header) h = Trim(h);
  if (header.empty() || header[0] != "well_id") {
    throw DataError("first CSV column must be well_id");
  }
  std::unordered_map<std::string, int> schema_index;
  for (size_t i = 0; i < schema.size(); ++i) {
    schema_index[schema[i].symbol] = static_cast<int>(i);
  }

  PartyDataset out;
  out.party_id = party_id;
  bool has_label = false;
  size_t num_features = 0;
  for (size_t c = 1; c < header.size(); ++c) {
    if (header[c] == "label") {
      if (c + 1 != header.size()) throw DataError("label must be the last column");
      has_label = true;
      continue;
    }
    auto it = schema_index.find(header[c]);
    if (it == schema_index.end()) {
      throw DataError("unknown column '" + header[c] + "'");
    }
    for (int id : out.feature_ids) {
      if (id == it->second) throw DataError("duplicate column '" + header[c] + "'");
    }
    out.features.push_back(schema[it->second]);
    out.feature_ids.push_back(it->second);
    ++num_features;
  }
  out.x = FeatureMatrix(0, num_features);
  if (has_label) out.labels.emplace();

  std::vector<double> row(num_features);
  size_t row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells = SplitLine(line);
    if (cells.size() > header.size()) {
      throw DataError("too many cells at row " + std::to_string(row_number));
    }
    cells.resize(header.size());
    double id = ParseNumber(cells[0], row_number, "well_id");
    if (id != static_cast<double>(static_cast<int64_t>(id))) {
      throw DataError("well_id is not an integer at row " + std::to_string(row_number));
    }
    out.sample_ids.push_back(static_cast<int64_t>(id));
    for (size_t f = 0; f < num_features; ++f) {
      row[f] = ParseNumber(cells[f + 1], row_number, header[f + 1]);
    }
    out.x.AppendRow(row);
    if (has_label) {
      double y = ParseNumber(cells.back(), row_number, "label");
      if (y != 0.0 && y != 1.0) {
        throw DataError("label must be 0 or 1 at " + Where(row_number, "label"));
      }
      out.labels->push_back(static_cast<int>(y));
    }
  }
  if (out.sample_ids.empty()) throw DataError("CSV file has no data rows");
  out.Validate();
  return out;
}

PartyDataset LoadCsv(const std::string& path, const std::vector<FeatureDescriptor>& schema,
                     const std::string& party_id) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return ParseCsv(in, schema, party_id);
}

void WriteCsv(std::ostream& out, const PartyDataset& data) {
  out << "well_id";
  for (size_t c = 0; c < data.num_features(); ++c) {
    out << ',' << (c < data.features.size() ? data.features[c].symbol
                                            : "f" + std::to_string(c));
  }
  if (data.has_labels()) out << ",label";
  out << '\n';
  char buf[40];
  for (size_t r = 0; r < data.num_samples(); ++r) {
    out << data.sample_ids[r];
    for (size_t c = 0; c < data.num_features(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.x.at(r, c));
      out << ',' << buf;
    }
    if (data.has_labels()) out << ',' << (*data.labels)[r];
    out << '\n';
  }
}

void SaveCsv(const std::string& path, const PartyDataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  WriteCsv(out, data);
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace fedxgb::data
