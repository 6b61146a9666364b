// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_AGENT_HPP
#define AWAREOPT_AGENT_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "awareopt/compiler_env.hpp"
#include "awareopt/errors.hpp"
#include "awareopt/ir_features.hpp"
#include "awareopt/knowledge_base.hpp"
#include "awareopt/pass_space.hpp"
#include "awareopt/reward.hpp"

namespace aware::agent {

inline constexpr const char* kRetrievalToolName =
    "lightrag_compiler_optimization";
inline constexpr const char* kInstrCountToolName = "instrcount";

enum class BlockKind { kThink, kToolCall, kToolResponse, kAnswer };
std::string_view block_kind_name(BlockKind kind);

struct Block {
  BlockKind kind = BlockKind::kThink;
  std::string body;  // verbatim text between the tags
  bool malformed = false;
  std::string error;
  // tool_call blocks:
  std::string tool_name;
  std::string tool_args_json;  // the "arguments" object, serialized
  // answer blocks:
  std::vector<std::string> answer_flags;
};

struct AgentTurn {
  enum class Role { kAssistant, kTool };
  Role role = Role::kAssistant;
  std::vector<Block> blocks;
  std::string raw;  // the message text exactly as exchanged
  bool has_stray_text = false;
};

// Total parse of one assistant message into tagged blocks. Never throws:
// malformed tags or JSON bodies are annotated on the block / turn.
AgentTurn parse_turn(const std::string& raw);

// Wraps a tool response JSON into the tool-role turn shape.
AgentTurn make_tool_turn(const std::string& response_json);

enum class TerminationReason { kAnswer, kMaxTurns, kProtocolError };
std::string_view termination_name(TerminationReason reason);

struct Trajectory {
  std::string program_id;
  std::string features_json;  // serialized program representation
  std::string prompt;         // rendered first message
  std::vector<AgentTurn> turns;
  // Present when terminated_by == kAnswer and every answered flag parses
  // against the catalog; the raw answer is always kept alongside.
  std::optional<pass::PassSequence> final_sequence;
  std::vector<std::string> final_answer_flags;
  reward::RewardBreakdown rewards;
  std::vector<env::InstrCountResult> env_results;
  TerminationReason terminated_by = TerminationReason::kProtocolError;
  double improvement_over_oz = 0.0;
  // Sparse reward stream: zero per assistant turn except the last, which
  // carries rewards.total.
  std::vector<double> per_turn_rewards;
  double gamma = 1.0;
};

std::string trajectory_to_json(const Trajectory& trajectory);
Trajectory trajectory_from_json(const std::string& json_text);

// ---------------------------------------------------------------------------
// Prompt rendering
// ---------------------------------------------------------------------------

// Interpolates the prompt template: {formatted_features}, {TotalInsts} and
// {program_id} placeholders, with {{ / }} escaping literal braces. Throws
// TemplateError on unknown or missing placeholders and aware::Error when
// total_insts disagrees with the feature vector.
std::string render_prompt(const ir::FeatureVector& fv, long long total_insts,
                          const std::string& program_id,
                          const std::string& template_text);

std::string read_text_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Policies
// ---------------------------------------------------------------------------

struct ChatMessage {
  std::string role;  // system | assistant | tool
  std::string content;
};

struct PolicyEndpoint {
  enum class Kind { kRemoteChat, kScriptedMock };
  Kind kind = Kind::kScriptedMock;
  std::string endpoint_url;  // required for kRemoteChat
  std::string model_name;
  std::string api_key;
  int max_turns = 8;
  double temperature = 0.0;
};

class Policy {
 public:
  virtual ~Policy() = default;
  // Produces the next assistant message given the conversation so far.
  virtual std::string next_turn(const std::vector<ChatMessage>& conversation) = 0;
};

// Replays a fixed list of assistant messages; returns empty text (a protocol
// error downstream) when the script runs out.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<std::string> turns)
      : turns_(std::move(turns)) {}
  std::string next_turn(const std::vector<ChatMessage>& conversation) override;

 private:
  std::vector<std::string> turns_;
  std::size_t next_ = 0;
};

// Mock policy that queries the knowledge base and answers the recommended
// sequence verbatim.
class RetrievalAnswerPolicy : public Policy {
 public:
  RetrievalAnswerPolicy(std::string program_id, std::string features_json)
      : program_id_(std::move(program_id)),
        features_json_(std::move(features_json)) {}
  std::string next_turn(const std::vector<ChatMessage>& conversation) override;

 private:
  std::string program_id_;
  std::string features_json_;
};

// Mock policy reproducing the two-phase workflow: try a heuristic sequence,
// check it with instrcount, and fall back to the knowledge base when the
// improvement is not positive.
class CaseStudyPolicy : public Policy {
 public:
  CaseStudyPolicy(std::string program_id, std::string features_json,
                  std::vector<std::string> heuristic_flags)
      : program_id_(std::move(program_id)),
        features_json_(std::move(features_json)),
        heuristic_flags_(std::move(heuristic_flags)) {}
  std::string next_turn(const std::vector<ChatMessage>& conversation) override;

 private:
  std::string program_id_;
  std::string features_json_;
  std::vector<std::string> heuristic_flags_;
};

// OpenAI-compatible chat completion call with up to 3 retries and backoff on
// transport failures and 5xx. Throws PolicyUnreachableError /
// MalformedResponseError.
std::string remote_chat(const std::vector<ChatMessage>& conversation,
                        const PolicyEndpoint& policy);

class RemoteChatPolicy : public Policy {
 public:
  explicit RemoteChatPolicy(PolicyEndpoint endpoint)
      : endpoint_(std::move(endpoint)) {}
  std::string next_turn(const std::vector<ChatMessage>& conversation) override {
    return remote_chat(conversation, endpoint_);
  }

 private:
  PolicyEndpoint endpoint_;
};

// ---------------------------------------------------------------------------
// Tool dispatch and the episode loop
// ---------------------------------------------------------------------------

// Routes a parsed tool_call to the knowledge base or the environment.
// Failures come back as in-band {"status":"error", ...} objects; the agent
// has to see them to adjust its strategy. Environment results are appended
// to result_sink when it is given, so trajectories keep every measurement.
std::string dispatch_tool(const Block& call, kb::KnowledgeBase& base,
                          env::Env& environment, std::size_t retrieval_k = 1,
                          std::vector<env::InstrCountResult>* result_sink = nullptr,
                          double retrieval_alpha = 0.5);

struct EpisodeConfig {
  reward::RewardWeights weights;
  double gamma = 1.0;
  std::size_t retrieval_k = 1;
  double retrieval_alpha = 0.5;  // similarity weight in the rank fusion
  int max_turns = 8;
  // Successful episodes feed K_emp; regressions below epsilon feed K_neg.
  bool knowledge_write_back = true;
};

struct EpisodeInputs {
  std::string program_id;
  ir::FeatureVector features;
  std::string template_text;
};

// Drives the multi-turn loop: prompt -> assistant turn -> tool dispatch ->
// ... until an answer or the turn budget. The raw answer is scored as-is
// (no repair). Throws PolicyUnreachableError when the policy transport
// fails; everything else lands in the trajectory.
Trajectory run_episode(const EpisodeInputs& inputs, Policy& policy,
                       kb::KnowledgeBase& base, env::Env& environment,
                       const EpisodeConfig& config = {});

}  // namespace aware::agent

#endif  // AWAREOPT_AGENT_HPP
