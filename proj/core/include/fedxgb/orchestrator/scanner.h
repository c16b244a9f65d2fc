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

#ifndef FEDXGB_ORCHESTRATOR_SCANNER_H_
#define FEDXGB_ORCHESTRATOR_SCANNER_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fedxgb/orchestrator/bus.h"

namespace fedxgb::orchestrator {

// What must not leave a party.
struct PartySecrets {
  std::string party;
  std::vector<double> feature_values;
  std::vector<std::vector<int>> label_vectors;
  // Exact integers that must never appear in clear, e.g. unmasked
  // fixed-point histogram sums. Zero is ignored.
  std::vector<int64_t> secret_integers;
};

struct ScanPolicy {
  // Parties whose outgoing messages must not carry any floating-point
  // number (structural check).
  std::set<std::string> no_float_senders;
  // Message types allowed to carry floats and feature extrema anyway
  // (declared metadata such as per-feature ranges).
  std::set<std::string> exempt_types;
  // Object keys that must never appear.
  std::set<std::string> forbidden_keys = {"label", "labels", "y", "features", "x"};
};

struct Finding {
  size_t position = 0;  // index into the transcript
  std::string sender;
  std::string recipient;
  std::string type;
  std::string what;
};

struct ScanReport {
  size_t messages = 0;
  std::vector<Finding> findings;
  bool clean() const { return findings.empty(); }
  std::string Verdict() const;
};

// Checks every envelope against the policy and, when given, the parties'
// secrets (features and secret integers of the sending party; label vectors
// of any party, as runs of 0/1 integers).
ScanReport ScanTranscript(const Transcript& transcript, const ScanPolicy& policy,
                          const std::vector<PartySecrets>& secrets = {});

// Policies used by the two protocols.
ScanPolicy HorizontalPolicy(const std::vector<std::string>& clients);
ScanPolicy VerticalPolicy(const std::vector<std::string>& passive_parties);

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_SCANNER_H_
