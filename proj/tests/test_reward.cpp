// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "awareopt/agent.hpp"
#include "awareopt/reward.hpp"
#include "support/fixtures.hpp"

using namespace aware;
using namespace aware::reward;

namespace {

// Builds a trajectory holding the given assistant messages, with tool turns
// interleaved after each tool_call the way the episode loop does.
agent::Trajectory transcript_of(const std::vector<std::string>& messages) {
  agent::Trajectory t;
  for (const std::string& raw : messages) {
    agent::AgentTurn turn = agent::parse_turn(raw);
    t.turns.push_back(turn);
    bool has_call = false;
    for (const auto& block : turn.blocks) {
      if (block.kind == agent::BlockKind::kToolCall) has_call = true;
    }
    bool has_answer = false;
    for (const auto& block : turn.blocks) {
      if (block.kind == agent::BlockKind::kAnswer) has_answer = true;
    }
    if (has_call && !has_answer) {
      t.turns.push_back(agent::make_tool_turn(
          R"({"status": "success", "improvement_over_oz": 0.1})"));
    }
  }
  return t;
}

}  // namespace

TEST_CASE("score_performance: direct formula") {
  CHECK(score_performance(1000, 800) == doctest::Approx(0.2));
  CHECK(score_performance(500, 500) == 0.0);
  CHECK(score_performance(1000, 1100) == doctest::Approx(-0.1));
  CHECK(score_performance(0, 100) == 0.0);
  CHECK(score_performance(-5, 100) == 0.0);
}

TEST_CASE("score_performance: sign flip around equal counts") {
  CHECK(score_performance(1000, 800) ==
        doctest::Approx(-score_performance(1000, 1200)));
}

TEST_CASE("total_reward: default weights") {
  RewardBreakdown b = total_reward(1, 1, 0.3);
  CHECK(b.total == doctest::Approx(0.1 * 1 + 0.2 * 1 + 0.7 * 0.3));
  CHECK(b.total == doctest::Approx(0.51));
}

TEST_CASE("total_reward: answer is forced to 0 when format is 0") {
  RewardBreakdown b = total_reward(0, 1, 0.5);
  CHECK(b.format == 0);
  CHECK(b.answer == 0);
  CHECK(b.total == doctest::Approx(0.7 * 0.5));

  RewardBreakdown none = total_reward(0, 1, std::nullopt);
  CHECK(none.total == 0.0);
}

TEST_CASE("total_reward: custom weights and validation") {
  RewardBreakdown b = total_reward(1, 0, std::nullopt, {1.0, 0.0, 0.0});
  CHECK(b.total == 1.0);
  CHECK_THROWS_AS(total_reward(1, 1, 0.0, {-0.1, 0.2, 0.7}), Error);
}

TEST_CASE("total_reward: linear in each component") {
  RewardWeights w;
  RewardBreakdown lo = total_reward(1, 1, 0.1, w);
  RewardBreakdown hi = total_reward(1, 1, 0.2, w);
  CHECK(hi.total - lo.total == doctest::Approx(w.performance * 0.1));
}

TEST_CASE("discounted_return: exact sums") {
  CHECK(discounted_return({1.0}, 0.9) == doctest::Approx(1.0));
  CHECK(discounted_return({1.0, 1.0}, 0.5) == doctest::Approx(1.5));
  CHECK(discounted_return({}, 0.7) == 0.0);
  CHECK(discounted_return({2.0, 3.0, 4.0}, 1.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(discounted_return({1.0}, 0.0), Error);
  CHECK_THROWS_AS(discounted_return({1.0}, 1.5), Error);

  DiscountedReturn r = make_discounted_return({0.0, 0.0, 0.51}, 0.9);
  CHECK(r.gamma == 0.9);
  CHECK(r.per_turn_rewards.size() == 3);
  CHECK(r.return_value == doctest::Approx(0.51 * 0.81));
}

TEST_CASE("score_answer: schema, validation, and compile gate") {
  auto catalog = testing::production_catalog();
  env::InstrCountResult ok;
  ok.status = env::EnvStatus::kSuccess;
  env::InstrCountResult failed;
  failed.status = env::EnvStatus::kCompileError;

  CHECK(score_answer({"--gvn", "--dse"}, *catalog, ok) == 1);
  CHECK(score_answer({"--no-such-pass"}, *catalog, ok) == 0);
  CHECK(score_answer({"--gvn"}, *catalog, failed) == 0);
  CHECK(score_answer({}, *catalog, ok) == 1);

  // Constraint table failures are schema failures too.
  pass::PassCatalog curated = pass::builtin_curated_catalog();
  CHECK(score_answer({"--gvn", "--newgvn"}, curated, ok) == 0);
  CHECK(score_answer({"-Oz", "--gvn"}, curated, ok) == 0);
  CHECK(score_answer({"-Oz"}, curated, ok) == 1);
}

TEST_CASE("score_format: reference exchange scores 1") {
  auto script = testing::exchange_script(
      ir::serialize_features(testing::tiny_features()), "prog",
      R"(["--inferattrs", "--dse", "--mldst-motion", "--mergefunc"])");
  CHECK(score_format(transcript_of(script)) == 1);
}

TEST_CASE("score_format: rejection cases") {
  // No answer block anywhere.
  CHECK(score_format(transcript_of({"<think>only thinking</think>"})) == 0);
  // Empty transcript.
  CHECK(score_format(agent::Trajectory{}) == 0);
  // Non-JSON tool_call body.
  CHECK(score_format(transcript_of(
            {"<think>t</think><tool_call>not json</tool_call>",
             "<answer>[\"--gvn\"]</answer>"})) == 0);
  // Unregistered tool name.
  CHECK(score_format(transcript_of(
            {"<tool_call>{\"name\": \"rm_rf\", \"arguments\": {}}</tool_call>",
             "<answer>[\"--gvn\"]</answer>"})) == 0);
  // Stray text outside tags.
  CHECK(score_format(transcript_of(
            {"hello <answer>[\"--gvn\"]</answer>"})) == 0);
  // Two answers.
  CHECK(score_format(transcript_of(
            {"<answer>[]</answer>", "<answer>[]</answer>"})) == 0);
  // Answer is not the last block of the final turn.
  CHECK(score_format(transcript_of(
            {"<answer>[]</answer><think>after</think>"})) == 0);
  // Answer body is not a list of strings.
  CHECK(score_format(transcript_of({"<answer>{\"a\": 1}</answer>"})) == 0);
  CHECK(score_format(transcript_of({"<answer>[1, 2]</answer>"})) == 0);
  // Unclosed tag.
  CHECK(score_format(transcript_of({"<answer>[\"--gvn\"]"})) == 0);
}

TEST_CASE("score_format: answer never exceeds format") {
  std::vector<std::vector<std::string>> transcripts = {
      {"<answer>[\"--gvn\"]</answer>"},
      {"<think>x</think>"},
      {"junk"},
      {"<answer>bad</answer>"},
  };
  auto catalog = testing::production_catalog();
  env::InstrCountResult ok;
  ok.status = env::EnvStatus::kSuccess;
  for (const auto& messages : transcripts) {
    agent::Trajectory t = transcript_of(messages);
    int format = score_format(t);
    int answer = 0;
    if (!t.turns.empty()) {
      for (const auto& block : t.turns.back().blocks) {
        if (block.kind == agent::BlockKind::kAnswer && !block.malformed) {
          answer = score_answer(block.answer_flags, *catalog, ok);
        }
      }
    }
    RewardBreakdown b = total_reward(format, answer, std::nullopt);
    CHECK(b.answer <= b.format);
  }
}
