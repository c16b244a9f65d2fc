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

#include "fedxgb/orchestrator/envelope.h"

#include "fedxgb/common/errors.h"

namespace fedxgb::orchestrator {

std::string Envelope::Serialize() const {
  nlohmann::json j = {{"sender", sender}, {"recipient", recipient}, {"round", round},
                      {"seq", seq},       {"type", type},           {"bytes", bytes()},
                      {"payload", payload}};
  return j.dump();
}

Envelope Envelope::Parse(const std::string& line) {
  Envelope e;
  try {
    nlohmann::json j = nlohmann::json::parse(line);
    e.sender = j.at("sender").get<std::string>();
    e.recipient = j.at("recipient").get<std::string>();
    e.round = j.at("round").get<int64_t>();
    e.seq = j.at("seq").get<int64_t>();
    e.type = j.at("type").get<std::string>();
    e.payload = j.at("payload").get<std::string>();
    if (j.at("bytes").get<uint64_t>() != e.payload.size()) {
      throw ProtocolError("envelope byte length does not match its payload");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ProtocolError(std::string("malformed envelope: ") + ex.what());
  }
  return e;
}

}  // namespace fedxgb::orchestrator
