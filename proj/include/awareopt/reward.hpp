// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_REWARD_HPP
#define AWAREOPT_REWARD_HPP

#include <optional>
#include <string>
#include <vector>

#include "awareopt/compiler_env.hpp"
#include "awareopt/pass_space.hpp"

namespace aware::agent {
struct Trajectory;
}

namespace aware::reward {

struct RewardWeights {
  double format = 0.1;
  double answer = 0.2;
  double performance = 0.7;
};

struct RewardBreakdown {
  int format = 0;            // 0 or 1
  int answer = 0;            // 0 or 1; never 1 when format is 0
  double performance = 0.0;  // ΔIC-style ratio, may be negative
  double total = 0.0;
  RewardWeights weights;
};

// 1 iff the transcript follows the tag protocol: every assistant turn is a
// clean sequence of think/tool_call/answer blocks, every tool_call body is
// valid JSON naming a registered tool, and exactly one final answer block
// holding a JSON list of strings exists.
int score_format(const agent::Trajectory& transcript);

// 1 iff the flags parse against the catalog, the sequence validates, and the
// compilation test succeeded.
int score_answer(const std::vector<std::string>& answer_flags,
                 const pass::PassCatalog& catalog,
                 const env::InstrCountResult& env_result);

// (ic_before - ic_after) / ic_before; 0 when ic_before is not positive.
double score_performance(long long ic_before, long long ic_after);

// Combines the components; forces answer to 0 when format is 0 and treats a
// missing performance value as contributing nothing.
RewardBreakdown total_reward(int format, int answer,
                             std::optional<double> performance,
                             const RewardWeights& weights = {});

struct DiscountedReturn {
  double gamma = 1.0;
  std::vector<double> per_turn_rewards;
  double return_value = 0.0;
};

// Sum of gamma^t * r_t. gamma must be in (0, 1].
double discounted_return(const std::vector<double>& rewards, double gamma);

DiscountedReturn make_discounted_return(std::vector<double> rewards,
                                        double gamma);

}  // namespace aware::reward

#endif  // AWAREOPT_REWARD_HPP
