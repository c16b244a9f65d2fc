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

#ifndef FEDXGB_ORCHESTRATOR_ENVELOPE_H_
#define FEDXGB_ORCHESTRATOR_ENVELOPE_H_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace fedxgb::orchestrator {

// Message type tags.
namespace msg {
// Horizontal protocol.
inline constexpr char kKeyBroadcast[] = "KEY_BROADCAST";
inline constexpr char kRangeReport[] = "RANGE_REPORT";
inline constexpr char kBinningBroadcast[] = "BINNING_BROADCAST";
inline constexpr char kHistogramSubmit[] = "HISTOGRAM_SUBMIT";
inline constexpr char kSplitBroadcast[] = "SPLIT_BROADCAST";
inline constexpr char kPartitionReport[] = "PARTITION_REPORT";
inline constexpr char kModelDelivery[] = "MODEL_DELIVERY";
// Vertical protocol.
inline constexpr char kGradientBroadcast[] = "GRADIENT_BROADCAST";
inline constexpr char kSampleSpace[] = "SAMPLE_SPACE";
inline constexpr char kEncHistogramSubmit[] = "ENC_HISTOGRAM_SUBMIT";
inline constexpr char kSplitNotice[] = "SPLIT_NOTICE";
inline constexpr char kPartitionReply[] = "PARTITION_REPLY";
inline constexpr char kInferQuery[] = "INFER_QUERY";
inline constexpr char kInferReply[] = "INFER_REPLY";
// Aggregated tuning.
inline constexpr char kTunedParams[] = "TUNED_PARAMS";
inline constexpr char kTunedBroadcast[] = "TUNED_BROADCAST";
}  // namespace msg

// One serialized message. `payload` is compact JSON text; big integers
// inside it are lowercase hex strings.
struct Envelope {
  std::string sender;
  std::string recipient;
  int64_t round = 0;
  int64_t seq = 0;  // per-sender, strictly increasing
  std::string type;
  std::string payload;

  size_t bytes() const { return payload.size(); }
  nlohmann::json Payload() const { return nlohmann::json::parse(payload); }

  // Single-line JSON record including the byte length.
  std::string Serialize() const;
  // Throws ProtocolError when the record is malformed or its byte length
  // disagrees with the payload.
  static Envelope Parse(const std::string& line);

  bool operator==(const Envelope&) const = default;
};

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_ENVELOPE_H_
