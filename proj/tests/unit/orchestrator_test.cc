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

#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fedxgb/common/errors.h"
#include "fedxgb/orchestrator/bus.h"
#include "fedxgb/orchestrator/config.h"
#include "fedxgb/orchestrator/envelope.h"
#include "fedxgb/orchestrator/scanner.h"

namespace fedxgb::orchestrator {
namespace {

using nlohmann::json;

MessageBus PingPongBus() {
  MessageBus bus;
  bus.Register("a");
  bus.Register("b");
  bus.Send("a", "b", 1, "PING", {{"n", 1}});
  bus.Receive("b", "a", "PING", 1);
  bus.Send("b", "a", 1, "PONG", {{"n", 2}});
  bus.Receive("a", "b", "PONG", 1);
  return bus;
}

TEST(Envelope, SerializeRoundTrip) {
  Envelope e{"server", "client0", 3, 7, msg::kSplitBroadcast, R"({"node":1})"};
  EXPECT_EQ(Envelope::Parse(e.Serialize()), e);
  json j = json::parse(e.Serialize());
  j["bytes"] = 99;
  EXPECT_THROW(Envelope::Parse(j.dump()), ProtocolError);
  EXPECT_THROW(Envelope::Parse("not json"), ProtocolError);
}

TEST(Bus, PingPongAccounting) {
  MessageBus bus = PingPongBus();
  const Transcript& t = bus.transcript();
  ASSERT_EQ(t.envelopes.size(), 2u);
  EXPECT_EQ(t.envelopes[0].seq, 1);
  EXPECT_EQ(t.envelopes[1].seq, 1);
  EXPECT_EQ(t.envelopes[1].sender, "b");
  const uint64_t one = std::string(R"({"n":1})").size();
  EXPECT_EQ(t.TotalBytes(), 2 * one);
  EXPECT_EQ(bus.traffic().at("a").bytes_sent, one);
  EXPECT_EQ(bus.traffic().at("a").bytes_received, one);
  EXPECT_EQ(bus.traffic().at("b").messages_received, 1u);
  EXPECT_EQ(t.MessagesBySender().at("b"), 1u);
  EXPECT_EQ(bus.Pending(), 0u);
}

TEST(Bus, SelectiveReceiveAndCollect) {
  MessageBus bus;
  for (const char* p : {"s", "c1", "c0"}) bus.Register(p);
  bus.Send("c1", "s", 2, "H", {{"v", 1}});
  bus.Send("c0", "s", 2, "H", {{"v", 0}});
  bus.Send("c0", "s", 2, "OTHER", json::object());
  const auto got = bus.Collect("s", {"c1", "c0"}, "H", 2);
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].sender, "c0");
  EXPECT_EQ(got[1].sender, "c1");
  EXPECT_EQ(bus.Pending(), 1u);
}

TEST(Bus, ProtocolViolations) {
  MessageBus bus;
  bus.Register("a");
  bus.Register("b");
  EXPECT_THROW(bus.Send("a", "zz", 1, "X", json::object()), ProtocolError);
  EXPECT_THROW(bus.Send("zz", "a", 1, "X", json::object()), ProtocolError);
  bus.Send("a", "b", 5, "X", json::object());
  EXPECT_THROW(bus.Send("a", "b", 4, "X", json::object()), ProtocolError);
  try {
    bus.Receive("b", "a", "Y", 5);
    FAIL();
  } catch (const ProtocolError& e) {
    EXPECT_EQ(e.position(), 1);
  }
  bus.SetDropFilter([](const Envelope& e) { return e.type == "LOST"; });
  bus.Send("a", "b", 6, "LOST", json::object());
  EXPECT_THROW(bus.Receive("b", "a", "LOST", 6), ProtocolError);
}

TEST(Bus, ReplayDetectsDeviation) {
  const Transcript recorded = PingPongBus().transcript();
  MessageBus same;
  same.Register("a");
  same.Register("b");
  same.StartReplay(recorded);
  same.Send("a", "b", 1, "PING", {{"n", 1}});
  same.Send("b", "a", 1, "PONG", {{"n", 2}});
  EXPECT_TRUE(same.ReplayComplete());

  MessageBus other;
  other.Register("a");
  other.Register("b");
  other.StartReplay(recorded);
  EXPECT_THROW(other.Send("a", "b", 1, "PING", {{"n", 9}}), ProtocolError);
}

TEST(Transcript, SaveLoadDigest) {
  const Transcript t = PingPongBus().transcript();
  const auto path = std::filesystem::temp_directory_path() / "fedxgb_transcript_test.log";
  t.Save(path.string());
  const Transcript back = Transcript::Load(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(back.envelopes, t.envelopes);
  EXPECT_EQ(back.Digest(), t.Digest());
  EXPECT_EQ(back.Digest().size(), 16u);
}

Transcript OneMessage(const std::string& sender, const std::string& type, const json& payload) {
  MessageBus bus;
  bus.Register(sender);
  bus.Register("s");
  bus.Send(sender, "s", 1, type, payload);
  return bus.transcript();
}

TEST(Scanner, CleanAndLeakyMessages) {
  const ScanPolicy policy = HorizontalPolicy({"c0"});
  const PartySecrets secrets{"c0", {1.25, 7.5}, {{0, 1, 1, 0, 1}}, {123456}};
  auto scan = [&](const std::string& type, const json& payload) {
    return ScanTranscript(OneMessage("c0", type, payload), policy, {secrets});
  };
  EXPECT_TRUE(scan(msg::kHistogramSubmit, {{"g", {"ab12", "ff"}}, {"count", 3}}).clean());
  EXPECT_FALSE(scan(msg::kHistogramSubmit, {{"g", 0.5}}).clean());
  EXPECT_FALSE(scan(msg::kHistogramSubmit, {{"labels", json::array()}}).clean());
  EXPECT_FALSE(scan(msg::kHistogramSubmit, {{"v", {0, 1, 1, 0, 1}}}).clean());
  EXPECT_FALSE(scan(msg::kHistogramSubmit, {{"sum", 123456}}).clean());
  // Declared ranges may carry floats, even feature extrema.
  EXPECT_TRUE(scan(msg::kRangeReport, {{"min", {1.25}}, {"max", {7.5}}}).clean());
  const ScanReport leak = scan(msg::kPartitionReport, {{"x", 7.5}});
  EXPECT_GE(leak.findings.size(), 2u);
  EXPECT_EQ(leak.findings[0].type, msg::kPartitionReport);
  EXPECT_NE(leak.Verdict().find("LEAK"), std::string::npos);
}

TEST(Scanner, VerticalPolicyAllowsActiveFloats) {
  const ScanPolicy policy = VerticalPolicy({"passive"});
  EXPECT_TRUE(ScanTranscript(OneMessage("active", msg::kSplitNotice, {{"t", 0.5}}), policy)
                  .clean());
  EXPECT_FALSE(ScanTranscript(OneMessage("passive", msg::kPartitionReply, {{"t", 0.5}}), policy)
                   .clean());
}

TEST(Config, JsonRoundTrip) {
  ExperimentConfig c;
  c.scenario = Scenario::kVflCaseTwo;
  c.regimes = {Regime::kFederated};
  c.tuning = {Tuning::kNone, Tuning::kAggregatedBo};
  c.params.max_depth = 3;
  c.k = 3;
  c.seed = 42;
  c.secagg = fed::SecAggMode::kMaskOnly;
  c.key_bits = 512;
  const ExperimentConfig back = ExperimentConfigFromJson(ToJson(c));
  EXPECT_EQ(ToJson(back), ToJson(c));
  EXPECT_TRUE(back.Has(Tuning::kAggregatedBo));
  EXPECT_FALSE(back.Has(Regime::kSeparate));
  EXPECT_EQ(back.params.max_depth, 3);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(ExperimentConfigFromJson({{"scenario", "hfl_case_one"}, {"bogus", 1}}),
               ConfigError);
  EXPECT_THROW(ExperimentConfigFromJson({{"scenario", "case_three"}}), ConfigError);
  EXPECT_THROW(ExperimentConfigFromJson({{"k", 1}}), ConfigError);
  EXPECT_THROW(ExperimentConfigFromJson({{"tuning", "random"}}), ConfigError);
  const ExperimentConfig c = ExperimentConfigFromJson({{"tuning", "direct_bo"}});
  EXPECT_EQ(c.tuning, std::vector<Tuning>{Tuning::kDirectBo});
  EXPECT_EQ(RegimeFromString(ToString(Regime::kCentralized)), Regime::kCentralized);
}

}  // namespace
}  // namespace fedxgb::orchestrator
