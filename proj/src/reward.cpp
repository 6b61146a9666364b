// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include "awareopt/reward.hpp"

#include <cmath>

#include "awareopt/agent.hpp"

namespace aware::reward {

namespace {

bool assistant_turn_well_formed(const agent::AgentTurn& turn) {
  if (turn.has_stray_text || turn.blocks.empty()) return false;
  for (const agent::Block& block : turn.blocks) {
    if (block.malformed) return false;
    switch (block.kind) {
      case agent::BlockKind::kThink:
      case agent::BlockKind::kAnswer:
        break;
      case agent::BlockKind::kToolCall:
        if (block.tool_name != agent::kRetrievalToolName &&
            block.tool_name != agent::kInstrCountToolName) {
          return false;
        }
        break;
      case agent::BlockKind::kToolResponse:
        return false;  // assistant turns never carry tool responses
    }
  }
  return true;
}

bool tool_turn_well_formed(const agent::AgentTurn& turn) {
  return !turn.has_stray_text && turn.blocks.size() == 1 &&
         turn.blocks[0].kind == agent::BlockKind::kToolResponse &&
         !turn.blocks[0].malformed;
}

}  // namespace

int score_format(const agent::Trajectory& transcript) {
  if (transcript.turns.empty()) return 0;

  int answer_blocks = 0;
  for (const agent::AgentTurn& turn : transcript.turns) {
    if (turn.role == agent::AgentTurn::Role::kAssistant) {
      if (!assistant_turn_well_formed(turn)) return 0;
      for (const agent::Block& block : turn.blocks) {
        if (block.kind == agent::BlockKind::kAnswer) ++answer_blocks;
      }
    } else {
      if (!tool_turn_well_formed(turn)) return 0;
    }
  }
  if (answer_blocks != 1) return 0;

  // The single answer must close the transcript.
  const agent::AgentTurn& last = transcript.turns.back();
  if (last.role != agent::AgentTurn::Role::kAssistant) return 0;
  if (last.blocks.back().kind != agent::BlockKind::kAnswer) return 0;
  return 1;
}

int score_answer(const std::vector<std::string>& answer_flags,
                 const pass::PassCatalog& catalog,
                 const env::InstrCountResult& env_result) {
  pass::PassSequence seq;
  try {
    seq = pass::parse_flags(answer_flags, catalog);
  } catch (const UnknownPassError&) {
    return 0;  // schema constraint
  }
  if (!pass::validate_sequence(seq, catalog).valid) return 0;
  return env_result.status == env::EnvStatus::kSuccess ? 1 : 0;
}

double score_performance(long long ic_before, long long ic_after) {
  if (ic_before <= 0) return 0.0;
  return static_cast<double>(ic_before - ic_after) /
         static_cast<double>(ic_before);
}

RewardBreakdown total_reward(int format, int answer,
                             std::optional<double> performance,
                             const RewardWeights& weights) {
  if (weights.format < 0 || weights.answer < 0 || weights.performance < 0) {
    throw Error("reward weights must be non-negative");
  }
  RewardBreakdown breakdown;
  breakdown.weights = weights;
  breakdown.format = format == 1 ? 1 : 0;
  // An unparseable transcript has no answer to validate.
  breakdown.answer = breakdown.format == 1 && answer == 1 ? 1 : 0;
  breakdown.performance = performance.value_or(0.0);
  breakdown.total = weights.format * breakdown.format +
                    weights.answer * breakdown.answer +
                    weights.performance * breakdown.performance;
  return breakdown;
}

double discounted_return(const std::vector<double>& rewards, double gamma) {
  if (gamma <= 0.0 || gamma > 1.0) {
    throw Error("gamma must be in (0, 1]");
  }
  double value = 0.0;
  double factor = 1.0;
  for (double r : rewards) {
    value += factor * r;
    factor *= gamma;
  }
  return value;
}

DiscountedReturn make_discounted_return(std::vector<double> rewards,
                                        double gamma) {
  DiscountedReturn result;
  result.gamma = gamma;
  result.return_value = discounted_return(rewards, gamma);
  result.per_turn_rewards = std::move(rewards);
  return result;
}

}  // namespace aware::reward
