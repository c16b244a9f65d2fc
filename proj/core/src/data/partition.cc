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

#include "fedxgb/data/partition.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "fedxgb/common/errors.h"

namespace fedxgb::data {
namespace {

std::vector<int> FeatureIds(const PartyDataset& d) {
  std::vector<int> ids(d.num_features());
  for (size_t c = 0; c < ids.size(); ++c) ids[c] = d.GlobalFeatureId(c);
  return ids;
}

void CheckSameSchema(std::span<const PartyDataset> parties) {
  if (parties.empty()) throw DataError("no parties");
  const PartyDataset& ref = parties[0];
  for (const PartyDataset& p : parties) {
    p.Validate();
    if (p.num_features() != ref.num_features() || FeatureIds(p) != FeatureIds(ref) ||
        p.features != ref.features) {
      throw DataError("party " + p.party_id + " has a different feature schema than " +
                      ref.party_id);
    }
    if (p.has_labels() != ref.has_labels()) {
      throw DataError("parties disagree on label presence");
    }
  }
}

}  // namespace

std::vector<PartyDataset> HorizontalPartition(std::span<const PartyDataset> parties) {
  CheckSameSchema(parties);
  return {parties.begin(), parties.end()};
}

PartyDataset HorizontalUnion(std::span<const PartyDataset> parties,
                             const std::string& party_id) {
  CheckSameSchema(parties);
  PartyDataset out;
  out.party_id = party_id;
  out.features = parties[0].features;
  out.feature_ids = parties[0].feature_ids;
  out.x = FeatureMatrix(0, parties[0].num_features());
  if (parties[0].has_labels()) out.labels.emplace();
  for (const PartyDataset& p : parties) {
    for (size_t r = 0; r < p.num_samples(); ++r) {
      out.sample_ids.push_back(p.sample_ids[r]);
      out.x.AppendRow(p.x.row(r));
      if (p.has_labels()) out.labels->push_back((*p.labels)[r]);
    }
  }
  out.Validate();
  return out;
}

VerticalSplit DefaultVerticalSplit() {
  VerticalSplit s;
  s.party_ids = {"oil_company", "exploration_institute"};
  s.symbols.resize(2);
  for (int i = 1; i <= 16; ++i) {
    s.symbols[0].push_back("O" + std::to_string(i));
    s.symbols[1].push_back("G" + std::to_string(i));
  }
  s.label_party = 0;
  return s;
}

std::vector<PartyDataset> VerticalPartition(const PartyDataset& joined,
                                            const VerticalSplit& split) {
  joined.Validate();
  if (split.party_ids.size() != split.symbols.size() || split.party_ids.empty()) {
    throw DataError("vertical split: one symbol list per party required");
  }
  if (split.label_party < 0 || split.label_party >= static_cast<int>(split.party_ids.size())) {
    throw DataError("vertical split: label party out of range");
  }
  std::unordered_map<std::string, size_t> column_of;
  for (size_t c = 0; c < joined.features.size(); ++c) {
    column_of[joined.features[c].symbol] = c;
  }
  std::map<std::string, std::string> owner;
  std::vector<PartyDataset> out;
  for (size_t p = 0; p < split.party_ids.size(); ++p) {
    std::vector<size_t> cols;
    for (const std::string& sym : split.symbols[p]) {
      auto it = column_of.find(sym);
      if (it == column_of.end()) throw DataError("vertical split: unknown feature " + sym);
      auto [pos, inserted] = owner.emplace(sym, split.party_ids[p]);
      if (!inserted) {
        throw DataError("vertical split: feature " + sym + " assigned to both " +
                        pos->second + " and " + split.party_ids[p]);
      }
      cols.push_back(it->second);
    }
    // Keep columns in global id order.
    std::sort(cols.begin(), cols.end(), [&](size_t a, size_t b) {
      return joined.GlobalFeatureId(a) < joined.GlobalFeatureId(b);
    });
    PartyDataset d;
    d.party_id = split.party_ids[p];
    d.sample_ids = joined.sample_ids;
    d.x = FeatureMatrix(joined.num_samples(), cols.size());
    for (size_t j = 0; j < cols.size(); ++j) {
      d.features.push_back(joined.features[cols[j]]);
      d.feature_ids.push_back(joined.GlobalFeatureId(cols[j]));
      for (size_t r = 0; r < joined.num_samples(); ++r) {
        d.x.at(r, j) = joined.x.at(r, cols[j]);
      }
    }
    if (static_cast<int>(p) == split.label_party) d.labels = joined.labels;
    out.push_back(std::move(d));
  }
  return out;
}

PartyDataset VerticalRejoin(std::span<const PartyDataset> parties, const std::string& party_id) {
  if (parties.empty()) throw DataError("no parties");
  const PartyDataset& first = parties[0];
  struct Source {
    size_t party;
    size_t column;
  };
  std::map<int, Source> by_id;
  for (size_t p = 0; p < parties.size(); ++p) {
    parties[p].Validate();
    if (parties[p].num_samples() != first.num_samples()) {
      throw DataError("vertical rejoin: party " + parties[p].party_id +
                      " has a different sample count");
    }
    for (size_t c = 0; c < parties[p].num_features(); ++c) {
      int id = parties[p].GlobalFeatureId(c);
      if (!by_id.emplace(id, Source{p, c}).second) {
        throw DataError("vertical rejoin: feature id " + std::to_string(id) + " held twice");
      }
    }
  }
  // Row maps from sample id.
  std::vector<std::vector<size_t>> row_map(parties.size());
  for (size_t p = 0; p < parties.size(); ++p) {
    std::unordered_map<int64_t, size_t> idx;
    for (size_t r = 0; r < parties[p].num_samples(); ++r) idx[parties[p].sample_ids[r]] = r;
    for (int64_t id : first.sample_ids) {
      auto it = idx.find(id);
      if (it == idx.end()) {
        throw DataError("vertical rejoin: sample " + std::to_string(id) + " missing at " +
                        parties[p].party_id);
      }
      row_map[p].push_back(it->second);
    }
  }
  PartyDataset out;
  out.party_id = party_id;
  out.sample_ids = first.sample_ids;
  out.x = FeatureMatrix(first.num_samples(), by_id.size());
  size_t j = 0;
  for (const auto& [id, src] : by_id) {
    const PartyDataset& p = parties[src.party];
    if (src.column < p.features.size()) out.features.push_back(p.features[src.column]);
    out.feature_ids.push_back(id);
    for (size_t r = 0; r < out.num_samples(); ++r) {
      out.x.at(r, j) = p.x.at(row_map[src.party][r], src.column);
    }
    ++j;
  }
  for (size_t p = 0; p < parties.size(); ++p) {
    if (!parties[p].has_labels()) continue;
    out.labels.emplace();
    for (size_t r : row_map[p]) out.labels->push_back((*parties[p].labels)[r]);
    break;
  }
  // Plain 0..F-1 ids collapse to the empty form.
  std::vector<int> iota(out.feature_ids.size());
  std::iota(iota.begin(), iota.end(), 0);
  if (out.feature_ids == iota) out.feature_ids.clear();
  if (out.features.size() != out.num_features()) out.features.clear();
  out.Validate();
  return out;
}

}  // namespace fedxgb::data
