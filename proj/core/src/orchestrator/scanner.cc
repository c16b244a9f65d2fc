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

#include "fedxgb/orchestrator/scanner.h"

#include <unordered_set>

#include "fedxgb/common/errors.h"

namespace fedxgb::orchestrator {
namespace {

using nlohmann::json;

struct SenderSecrets {
  std::unordered_set<double> features;
  std::unordered_set<int64_t> integers;
};

class Scanner {
 public:
  Scanner(const ScanPolicy& policy, const std::vector<PartySecrets>& secrets)
      : policy_(policy) {
    for (const auto& s : secrets) {
      auto& dst = by_party_[s.party];
      dst.features.insert(s.feature_values.begin(), s.feature_values.end());
      for (int64_t v : s.secret_integers) {
        if (v != 0) dst.integers.insert(v);
      }
      for (const auto& l : s.label_vectors) {
        if (!l.empty()) labels_.push_back(l);
      }
    }
  }

  void Scan(size_t pos, const Envelope& e, ScanReport& report) {
    json payload;
    try {
      payload = e.Payload();
    } catch (const json::exception&) {
      Add(report, pos, e, "payload is not valid JSON");
      return;
    }
    const bool exempt = policy_.exempt_types.count(e.type) > 0;
    const bool no_float = !exempt && policy_.no_float_senders.count(e.sender) > 0;
    auto it = by_party_.find(e.sender);
    const SenderSecrets* own = it == by_party_.end() ? nullptr : &it->second;
    Walk(payload, pos, e, exempt, no_float, own, report);
  }

 private:
  void Walk(const json& v, size_t pos, const Envelope& e, bool exempt, bool no_float,
            const SenderSecrets* own, ScanReport& report) {
    switch (v.type()) {
      case json::value_t::object:
        for (const auto& [key, child] : v.items()) {
          if (policy_.forbidden_keys.count(key) > 0) {
            Add(report, pos, e, "forbidden key '" + key + "'");
          }
          Walk(child, pos, e, exempt, no_float, own, report);
        }
        break;
      case json::value_t::array:
        CheckLabels(v, pos, e, report);
        for (const auto& child : v) Walk(child, pos, e, exempt, no_float, own, report);
        break;
      case json::value_t::number_float: {
        const double d = v.get<double>();
        if (no_float) Add(report, pos, e, "floating-point value " + v.dump());
        if (!exempt && own != nullptr && own->features.count(d) > 0) {
          Add(report, pos, e, "raw feature value " + v.dump());
        }
        break;
      }
      case json::value_t::number_integer:
      case json::value_t::number_unsigned: {
        if (own == nullptr || own->integers.empty()) break;
        int64_t as_signed = v.is_number_unsigned()
                                ? static_cast<int64_t>(v.get<uint64_t>())
                                : v.get<int64_t>();
        if (own->integers.count(as_signed) > 0) {
          Add(report, pos, e, "unmasked secret integer " + v.dump());
        }
        break;
      }
      default:
        break;
    }
  }

  void CheckLabels(const json& arr, size_t pos, const Envelope& e, ScanReport& report) {
    for (const auto& l : labels_) {
      if (arr.size() != l.size()) continue;
      bool same = true;
      for (size_t i = 0; i < l.size() && same; ++i) {
        same = arr[i].is_number_integer() && arr[i].get<int64_t>() == l[i];
      }
      if (same) {
        Add(report, pos, e, "label vector of length " + std::to_string(l.size()));
        return;
      }
    }
  }

  static void Add(ScanReport& report, size_t pos, const Envelope& e, std::string what) {
    report.findings.push_back({pos, e.sender, e.recipient, e.type, std::move(what)});
  }

  const ScanPolicy& policy_;
  std::map<std::string, SenderSecrets> by_party_;
  std::vector<std::vector<int>> labels_;
};

}  // namespace

std::string ScanReport::Verdict() const {
  if (clean()) {
    return "clean: no raw labels/features found in " + std::to_string(messages) + " messages";
  }
  return "LEAK: " + std::to_string(findings.size()) + " finding(s) in " +
         std::to_string(messages) + " messages";
}

ScanReport ScanTranscript(const Transcript& transcript, const ScanPolicy& policy,
                          const std::vector<PartySecrets>& secrets) {
  Scanner scanner(policy, secrets);
  ScanReport report;
  report.messages = transcript.envelopes.size();
  for (size_t i = 0; i < transcript.envelopes.size(); ++i) {
    scanner.Scan(i, transcript.envelopes[i], report);
  }
  return report;
}

ScanPolicy HorizontalPolicy(const std::vector<std::string>& clients) {
  ScanPolicy p;
  p.no_float_senders.insert(clients.begin(), clients.end());
  p.exempt_types.insert(msg::kRangeReport);
  return p;
}

ScanPolicy VerticalPolicy(const std::vector<std::string>& passive_parties) {
  ScanPolicy p;
  p.no_float_senders.insert(passive_parties.begin(), passive_parties.end());
  return p;
}

}  // namespace fedxgb::orchestrator
