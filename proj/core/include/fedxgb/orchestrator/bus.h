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

#ifndef FEDXGB_ORCHESTRATOR_BUS_H_
#define FEDXGB_ORCHESTRATOR_BUS_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fedxgb/orchestrator/envelope.h"

namespace fedxgb::orchestrator {

// Append-only log of every envelope sent, in send order.
struct Transcript {
  std::vector<Envelope> envelopes;

  uint64_t TotalBytes() const;
  // Bytes and message counts sent, per sender.
  std::map<std::string, uint64_t> BytesBySender() const;
  std::map<std::string, uint64_t> MessagesBySender() const;

  // One Envelope::Serialize() line per message.
  void Save(const std::string& path) const;
  static Transcript Load(const std::string& path);
  std::string Digest() const;  // hex hash over all lines
};

struct PartyTraffic {
  uint64_t bytes_sent = 0;
  uint64_t messages_sent = 0;
  uint64_t bytes_received = 0;
  uint64_t messages_received = 0;
};

// In-process message bus. Parties exchange envelopes through per-recipient
// mailboxes; every send is appended to the transcript. Receives are
// selective (by type and round) so the result never depends on the order in
// which parties of one round happened to send.
class MessageBus {
 public:
  void Register(const std::string& party);
  bool IsRegistered(const std::string& party) const;

  // Assigns the sender's next sequence number and delivers. Throws
  // ProtocolError for unregistered parties, a round lower than the sender's
  // previous one, or (in replay mode) a deviation from the recording.
  const Envelope& Send(const std::string& sender, const std::string& recipient, int64_t round,
                       const std::string& type, const nlohmann::json& payload);

  // Removes and returns the message of `type` and `round` from `sender` to
  // `recipient`. Throws ProtocolError naming the transcript position if it
  // was never delivered.
  Envelope Receive(const std::string& recipient, const std::string& sender,
                   const std::string& type, int64_t round);

  // One message of `type`/`round` from each sender, ordered by sender id.
  std::vector<Envelope> Collect(const std::string& recipient,
                                const std::vector<std::string>& senders,
                                const std::string& type, int64_t round);

  // Messages still waiting in any mailbox.
  size_t Pending() const;

  const Transcript& transcript() const { return transcript_; }
  const std::map<std::string, PartyTraffic>& traffic() const { return traffic_; }

  // Replay mode: every later send must equal the next recorded envelope.
  void StartReplay(Transcript recorded);
  bool ReplayComplete() const;

  // Test hook: envelopes for which the filter returns true are logged but
  // not delivered.
  void SetDropFilter(std::function<bool(const Envelope&)> filter);

  int64_t NextRound() { return ++round_counter_; }

 private:
  std::map<std::string, std::deque<Envelope>> mailboxes_;
  std::map<std::string, int64_t> next_seq_;
  std::map<std::string, int64_t> last_round_;
  std::map<std::string, PartyTraffic> traffic_;
  Transcript transcript_;
  std::optional<Transcript> replay_;
  size_t replay_pos_ = 0;
  std::function<bool(const Envelope&)> drop_;
  int64_t round_counter_ = 0;
};

}  // namespace fedxgb::orchestrator

#endif  // FEDXGB_ORCHESTRATOR_BUS_H_
