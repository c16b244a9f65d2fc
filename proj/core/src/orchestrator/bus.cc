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

#include "fedxgb/orchestrator/bus.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "fedxgb/common/errors.h"
#include "fedxgb/common/rng.h"

namespace fedxgb::orchestrator {

uint64_t Transcript::TotalBytes() const {
  uint64_t total = 0;
  for (const auto& e : envelopes) total += e.bytes();
  return total;
}

std::map<std::string, uint64_t> Transcript::BytesBySender() const {
  std::map<std::string, uint64_t> out;
  for (const auto& e : envelopes) out[e.sender] += e.bytes();
  return out;
}

std::map<std::string, uint64_t> Transcript::MessagesBySender() const {
  std::map<std::string, uint64_t> out;
  for (const auto& e : envelopes) ++out[e.sender];
  return out;
}

void Transcript::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write transcript " + path);
  for (const auto& e : envelopes) out << e.Serialize() << '\n';
  if (!out) throw Error("write failed for " + path);
}

Transcript Transcript::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read transcript " + path);
  Transcript t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) t.envelopes.push_back(Envelope::Parse(line));
  }
  return t;
}

std::string Transcript::Digest() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& e : envelopes) h = Mix64(h ^ Fnv1a64(e.Serialize()));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void MessageBus::Register(const std::string& party) {
  mailboxes_[party];
  traffic_[party];
}

bool MessageBus::IsRegistered(const std::string& party) const {
  return mailboxes_.count(party) > 0;
}

const Envelope& MessageBus::Send(const std::string& sender, const std::string& recipient,
                                 int64_t round, const std::string& type,
                                 const nlohmann::json& payload) {
  const long position = static_cast<long>(transcript_.envelopes.size());
  if (!IsRegistered(sender)) throw ProtocolError("unregistered sender " + sender, position);
  if (!IsRegistered(recipient)) {
    throw ProtocolError("unregistered recipient " + recipient, position);
  }
  auto last = last_round_.find(sender);
  if (last != last_round_.end() && round < last->second) {
    throw ProtocolError(sender + " sent round " + std::to_string(round) + " after round " +
                            std::to_string(last->second),
                        position);
  }
  last_round_[sender] = round;
  Envelope e{sender, recipient, round, ++next_seq_[sender], type, payload.dump()};
  if (replay_.has_value()) {
    if (replay_pos_ >= replay_->envelopes.size()) {
      throw ProtocolError("replay: message beyond the end of the recording", position);
    }
    if (!(replay_->envelopes[replay_pos_] == e)) {
      throw ProtocolError("replay: " + type + " from " + sender + " differs from the recording",
                          position);
    }
    ++replay_pos_;
  }
  transcript_.envelopes.push_back(e);
  traffic_[sender].bytes_sent += e.bytes();
  traffic_[sender].messages_sent += 1;
  if (!(drop_ && drop_(e))) mailboxes_[recipient].push_back(e);
  return transcript_.envelopes.back();
}

Envelope MessageBus::Receive(const std::string& recipient, const std::string& sender,
                             const std::string& type, int64_t round) {
  auto& box = mailboxes_[recipient];
  auto it = std::find_if(box.begin(), box.end(), [&](const Envelope& e) {
    return e.sender == sender && e.type == type && e.round == round;
  });
  if (it == box.end()) {
    throw ProtocolError("missing " + type + " from " + sender + " to " + recipient +
                            " in round " + std::to_string(round),
                        static_cast<long>(transcript_.envelopes.size()));
  }
  Envelope e = std::move(*it);
  box.erase(it);
  traffic_[recipient].bytes_received += e.bytes();
  traffic_[recipient].messages_received += 1;
  return e;
}

std::vector<Envelope> MessageBus::Collect(const std::string& recipient,
                                          const std::vector<std::string>& senders,
                                          const std::string& type, int64_t round) {
  std::vector<std::string> sorted = senders;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Envelope> out;
  for (const auto& s : sorted) out.push_back(Receive(recipient, s, type, round));
  return out;
}

size_t MessageBus::Pending() const {
  size_t n = 0;
  for (const auto& [party, box] : mailboxes_) n += box.size();
  return n;
}

void MessageBus::StartReplay(Transcript recorded) {
  replay_ = std::move(recorded);
  replay_pos_ = 0;
}

bool MessageBus::ReplayComplete() const {
  return replay_.has_value() && replay_pos_ == replay_->envelopes.size();
}

void MessageBus::SetDropFilter(std::function<bool(const Envelope&)> filter) {
  drop_ = std::move(filter);
}

}  // namespace fedxgb::orchestrator
