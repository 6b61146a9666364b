// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "awareopt/agent.hpp"

namespace aware::agent {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kTags[] = {"think", "tool_call", "answer"};

BlockKind kind_of_tag(std::string_view tag) {
  if (tag == "think") return BlockKind::kThink;
  if (tag == "tool_call") return BlockKind::kToolCall;
  if (tag == "answer") return BlockKind::kAnswer;
  return BlockKind::kToolResponse;
}

bool all_whitespace(std::string_view text) {
  return text.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void finish_tool_call(Block& block) {
  json parsed;
  try {
    parsed = json::parse(block.body);
  } catch (const json::exception&) {
    block.malformed = true;
    block.error = "tool_call body is not valid JSON";
    return;
  }
  if (!parsed.is_object() || !parsed.contains("name") ||
      !parsed["name"].is_string()) {
    block.malformed = true;
    block.error = "tool_call body lacks a string \"name\"";
    return;
  }
  block.tool_name = parsed["name"].get<std::string>();
  if (parsed.contains("arguments")) {
    if (!parsed["arguments"].is_object()) {
      block.malformed = true;
      block.error = "tool_call arguments must be an object";
      return;
    }
    block.tool_args_json = parsed["arguments"].dump();
  } else {
    block.tool_args_json = "{}";
  }
}

void finish_answer(Block& block) {
  json parsed;
  try {
    parsed = json::parse(block.body);
  } catch (const json::exception&) {
    block.malformed = true;
    block.error = "answer body is not valid JSON";
    return;
  }
  if (!parsed.is_array()) {
    block.malformed = true;
    block.error = "answer must be a JSON list";
    return;
  }
  for (const auto& item : parsed) {
    if (!item.is_string()) {
      block.malformed = true;
      block.error = "answer list items must be strings";
      return;
    }
    block.answer_flags.push_back(item.get<std::string>());
  }
}

}  // namespace

std::string_view block_kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::kThink: return "think";
    case BlockKind::kToolCall: return "tool_call";
    case BlockKind::kToolResponse: return "tool_response";
    case BlockKind::kAnswer: return "answer";
  }
  return "?";
}

std::string_view termination_name(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kAnswer: return "answer";
    case TerminationReason::kMaxTurns: return "max_turns";
    case TerminationReason::kProtocolError: return "protocol_error";
  }
  return "?";
}

AgentTurn parse_turn(const std::string& raw) {
  AgentTurn turn;
  turn.role = AgentTurn::Role::kAssistant;
  turn.raw = raw;

  std::size_t pos = 0;
  while (pos < raw.size()) {
    // Locate the earliest recognized opening tag.
    std::size_t best = std::string::npos;
    std::string_view best_tag;
    for (std::string_view tag : kTags) {
      std::string open = "<" + std::string(tag) + ">";
      std::size_t at = raw.find(open, pos);
      if (at != std::string::npos && (best == std::string::npos || at < best)) {
        best = at;
        best_tag = tag;
      }
    }
    if (best == std::string::npos) {
      if (!all_whitespace(std::string_view(raw).substr(pos))) {
        turn.has_stray_text = true;
      }
      break;
    }
    if (!all_whitespace(std::string_view(raw).substr(pos, best - pos))) {
      turn.has_stray_text = true;
    }

    std::string open = "<" + std::string(best_tag) + ">";
    std::string close = "</" + std::string(best_tag) + ">";
    std::size_t body_start = best + open.size();
    std::size_t end = raw.find(close, body_start);

    Block block;
    block.kind = kind_of_tag(best_tag);
    if (end == std::string::npos) {
      block.body = raw.substr(body_start);
      block.malformed = true;
      block.error = "unclosed <" + std::string(best_tag) + "> tag";
      turn.blocks.push_back(std::move(block));
      return turn;
    }
    block.body = raw.substr(body_start, end - body_start);
    if (block.kind == BlockKind::kToolCall) finish_tool_call(block);
    if (block.kind == BlockKind::kAnswer) finish_answer(block);
    turn.blocks.push_back(std::move(block));
    pos = end + close.size();
  }
  return turn;
}

AgentTurn make_tool_turn(const std::string& response_json) {
  AgentTurn turn;
  turn.role = AgentTurn::Role::kTool;
  Block block;
  block.kind = BlockKind::kToolResponse;
  block.body = response_json;
  turn.blocks.push_back(std::move(block));
  turn.raw = "<tool_response>" + response_json + "</tool_response>";
  return turn;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_prompt(const ir::FeatureVector& fv, long long total_insts,
                          const std::string& program_id,
                          const std::string& template_text) {
  if (total_insts != static_cast<long long>(fv[ir::kTotalInsts])) {
    throw Error("total_insts does not match the feature vector");
  }
  const std::string features_json = ir::serialize_features(fv);
  const std::string total_text = std::to_string(total_insts);

  std::string out;
  out.reserve(template_text.size() + features_json.size() * 2);
  bool saw_features = false;
  bool saw_total = false;
  bool saw_program = false;

  for (std::size_t i = 0; i < template_text.size(); ++i) {
    char c = template_text[i];
    if (c == '{') {
      if (i + 1 < template_text.size() && template_text[i + 1] == '{') {
        out += '{';
        ++i;
        continue;
      }
      std::size_t end = template_text.find('}', i + 1);
      if (end == std::string::npos) {
        throw TemplateError("unbalanced '{' in prompt template");
      }
      std::string name = template_text.substr(i + 1, end - i - 1);
      if (name == "formatted_features") {
        out += features_json;
        saw_features = true;
      } else if (name == "TotalInsts") {
        out += total_text;
        saw_total = true;
      } else if (name == "program_id") {
        out += program_id;
        saw_program = true;
      } else {
        throw TemplateError("unknown placeholder {" + name + "}");
      }
      i = end;
      continue;
    }
    if (c == '}') {
      if (i + 1 < template_text.size() && template_text[i + 1] == '}') {
        out += '}';
        ++i;
        continue;
      }
      throw TemplateError("unbalanced '}' in prompt template");
    }
    out += c;
  }
  if (!saw_features || !saw_total || !saw_program) {
    throw TemplateError("prompt template is missing a required placeholder");
  }
  return out;
}

std::string ScriptedPolicy::next_turn(
    const std::vector<ChatMessage>& conversation) {
  (void)conversation;
  if (next_ >= turns_.size()) return "";
  return turns_[next_++];
}

namespace {

// Pulls the parsed JSON out of the most recent tool message, if any.
std::optional<json> last_tool_response(
    const std::vector<ChatMessage>& conversation) {
  for (auto it = conversation.rbegin(); it != conversation.rend(); ++it) {
    if (it->role != "tool") continue;
    std::string body = it->content;
    constexpr std::string_view kOpen = "<tool_response>";
    constexpr std::string_view kClose = "</tool_response>";
    std::size_t open = body.find(kOpen);
    std::size_t close = body.rfind(kClose);
    if (open != std::string::npos && close != std::string::npos) {
      body = body.substr(open + kOpen.size(), close - open - kOpen.size());
    }
    try {
      return json::parse(body);
    } catch (const json::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::size_t count_tool_messages(const std::vector<ChatMessage>& conversation) {
  std::size_t n = 0;
  for (const ChatMessage& m : conversation) {
    if (m.role == "tool") ++n;
  }
  return n;
}

std::string retrieval_call(const std::string& features_json) {
  ordered_json call;
  call["name"] = kRetrievalToolName;
  call["arguments"] = {{"query", features_json}};
  return call.dump();
}

std::string instrcount_call(const std::string& program_id,
                            const std::vector<std::string>& flags) {
  ordered_json call;
  call["name"] = kInstrCountToolName;
  call["arguments"]["filename"] = program_id;
  call["arguments"]["optimization_flags"] = flags;
  return call.dump();
}

std::string answer_message(const std::string& think,
                           const std::vector<std::string>& flags) {
  return "<think>" + think + "</think>\n<answer>" + json(flags).dump() +
         "</answer>";
}

}  // namespace

std::string RetrievalAnswerPolicy::next_turn(
    const std::vector<ChatMessage>& conversation) {
  if (count_tool_messages(conversation) == 0) {
    return "<think>Consulting the knowledge base for a sequence matched to "
           "these features.</think>\n<tool_call>" +
           retrieval_call(features_json_) + "</tool_call>";
  }
  std::vector<std::string> flags;
  if (auto response = last_tool_response(conversation)) {
    if (response->contains("recommended_pass_sequence")) {
      for (const auto& f : (*response)["recommended_pass_sequence"]) {
        if (f.is_string()) flags.push_back(f.get<std::string>());
      }
    }
  }
  return answer_message("Answering the recommended sequence.", flags);
}

std::string CaseStudyPolicy::next_turn(
    const std::vector<ChatMessage>& conversation) {
  std::size_t responses = count_tool_messages(conversation);
  if (responses == 0) {
    return "<think>Starting from a common heuristic sequence; verifying it "
           "against the -Oz baseline first.</think>\n<tool_call>" +
           instrcount_call(program_id_, heuristic_flags_) + "</tool_call>";
  }
  if (responses == 1) {
    auto response = last_tool_response(conversation);
    double improvement = 0.0;
    if (response && response->contains("improvement_over_oz") &&
        (*response)["improvement_over_oz"].is_number()) {
      improvement = (*response)["improvement_over_oz"].get<double>();
    }
    if (response && improvement > 0 &&
        response->value("status", std::string()) == "success") {
      return answer_message("The heuristic already beats the baseline.",
                            heuristic_flags_);
    }
    return "<think>The heuristic attempt brought no improvement; querying "
           "the knowledge base for expert advice.</think>\n<tool_call>" +
           retrieval_call(features_json_) + "</tool_call>";
  }
  std::vector<std::string> flags = heuristic_flags_;
  if (auto response = last_tool_response(conversation)) {
    if (response->contains("recommended_pass_sequence")) {
      flags.clear();
      for (const auto& f : (*response)["recommended_pass_sequence"]) {
        if (f.is_string()) flags.push_back(f.get<std::string>());
      }
    }
  }
  return answer_message("Adopting the knowledge-base recommendation.", flags);
}

std::string remote_chat(const std::vector<ChatMessage>& conversation,
                        const PolicyEndpoint& policy) {
  if (policy.kind != PolicyEndpoint::Kind::kRemoteChat ||
      policy.endpoint_url.empty()) {
    throw PolicyUnreachableError("remote_chat requires an endpoint URL");
  }

  // Split scheme://host:port from an optional path.
  std::string base = policy.endpoint_url;
  std::string path = "/v1/chat/completions";
  std::size_t scheme = base.find("://");
  if (scheme != std::string::npos) {
    std::size_t slash = base.find('/', scheme + 3);
    if (slash != std::string::npos) {
      if (slash + 1 < base.size()) path = base.substr(slash);
      base = base.substr(0, slash);
    }
  }

  ordered_json body;
  body["model"] = policy.model_name;
  body["messages"] = ordered_json::array();
  for (const ChatMessage& m : conversation) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = policy.temperature;
  const std::string payload = body.dump();

  httplib::Client client(base);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (!policy.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + policy.api_key);
  }

  std::string last_failure;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
    }
    httplib::Result res =
        client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_failure = "server error: HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw PolicyUnreachableError("endpoint rejected request: HTTP " +
                                   std::to_string(res->status));
    }
    try {
      json parsed = json::parse(res->body);
      return parsed.at("choices").at(0).at("message").at("content")
          .get<std::string>();
    } catch (const json::exception& e) {
      throw MalformedResponseError(
          std::string("cannot read chat completion: ") + e.what());
    }
  }
  throw PolicyUnreachableError("policy endpoint unreachable after 3 attempts: " +
                               last_failure);
}

std::string dispatch_tool(const Block& call, kb::KnowledgeBase& base,
                          env::Env& environment, std::size_t retrieval_k,
                          std::vector<env::InstrCountResult>* result_sink,
                          double retrieval_alpha) {
  ordered_json response;
  if (call.malformed || call.kind != BlockKind::kToolCall) {
    response["status"] = "error";
    response["reason"] = "malformed_tool_call";
    return response.dump();
  }

  json args;
  try {
    args = json::parse(call.tool_args_json);
  } catch (const json::exception&) {
    response["status"] = "error";
    response["reason"] = "malformed_arguments";
    return response.dump();
  }

  if (call.tool_name == kRetrievalToolName) {
    if (!args.contains("query") || !args["query"].is_string()) {
      response["status"] = "error";
      response["reason"] = "missing_query";
      return response.dump();
    }
    ir::FeatureVector query;
    try {
      query = ir::deserialize_features(args["query"].get<std::string>());
    } catch (const Error&) {
      response["status"] = "error";
      response["reason"] = "bad_query";
      return response.dump();
    }
    try {
      kb::RetrievalResult retrieved =
          base.retrieve(query, retrieval_k, retrieval_alpha);
      const kb::RankedEntry& top = retrieved.ranked.front();
      response["recommended_pass_sequence"] =
          pass::render_flags(top.entry.sequence, base.catalog());
      response["performance_improvement"] = top.entry.effect;
      return response.dump();
    } catch (const EmptyStoreError&) {
      response["status"] = "error";
      response["reason"] = "empty_knowledge_base";
      return response.dump();
    }
  }

  if (call.tool_name == kInstrCountToolName) {
    if (!args.contains("filename") || !args["filename"].is_string()) {
      response["status"] = "error";
      response["reason"] = "missing_filename";
      return response.dump();
    }
    std::vector<std::string> flags;
    if (args.contains("optimization_flags")) {
      if (!args["optimization_flags"].is_array()) {
        response["status"] = "error";
        response["reason"] = "optimization_flags_must_be_a_list";
        return response.dump();
      }
      for (const auto& f : args["optimization_flags"]) {
        if (!f.is_string()) {
          response["status"] = "error";
          response["reason"] = "optimization_flags_must_be_strings";
          return response.dump();
        }
        flags.push_back(f.get<std::string>());
      }
    }
    try {
      env::InstrCountResult result =
          environment.instrcount(args["filename"].get<std::string>(), flags);
      if (result_sink) result_sink->push_back(result);
      response["status"] = env::status_name(result.status);
      response["improvement_over_oz"] = result.improvement_over_oz;
      if (result.status != env::EnvStatus::kSuccess) {
        response["reason"] = result.stderr_excerpt;
      }
      return response.dump();
    } catch (const UnknownProgramError&) {
      response["status"] = "error";
      response["reason"] = "unknown_program";
      return response.dump();
    }
  }

  response["status"] = "error";
  response["reason"] = "unknown_tool";
  return response.dump();
}

Trajectory run_episode(const EpisodeInputs& inputs, Policy& policy,
                       kb::KnowledgeBase& base, env::Env& environment,
                       const EpisodeConfig& config) {
  Trajectory trajectory;
  trajectory.program_id = inputs.program_id;
  trajectory.features_json = ir::serialize_features(inputs.features);
  trajectory.gamma = config.gamma;
  trajectory.prompt = render_prompt(
      inputs.features, static_cast<long long>(inputs.features[ir::kTotalInsts]),
      inputs.program_id, inputs.template_text);

  std::vector<ChatMessage> conversation = {{"system", trajectory.prompt}};
  int assistant_turns = 0;
  bool answered = false;
  trajectory.terminated_by = TerminationReason::kMaxTurns;

  while (assistant_turns < config.max_turns) {
    std::string raw = policy.next_turn(conversation);
    AgentTurn turn = parse_turn(raw);
    ++assistant_turns;
    trajectory.turns.push_back(turn);
    conversation.push_back({"assistant", raw});

    bool broken = turn.has_stray_text || turn.blocks.empty();
    for (const Block& block : turn.blocks) {
      if (block.malformed) broken = true;
    }
    if (broken) {
      trajectory.terminated_by = TerminationReason::kProtocolError;
      break;
    }

    const Block* answer = nullptr;
    for (const Block& block : turn.blocks) {
      if (block.kind == BlockKind::kAnswer) answer = &block;
    }
    if (answer) {
      trajectory.final_answer_flags = answer->answer_flags;
      trajectory.terminated_by = TerminationReason::kAnswer;
      answered = true;
      break;
    }

    for (const Block& block : turn.blocks) {
      if (block.kind != BlockKind::kToolCall) continue;
      std::string response =
          dispatch_tool(block, base, environment, config.retrieval_k,
                        &trajectory.env_results, config.retrieval_alpha);
      AgentTurn tool_turn = make_tool_turn(response);
      trajectory.turns.push_back(tool_turn);
      conversation.push_back({"tool", tool_turn.raw});
    }
  }

  // Score the raw answer as-is; the reward measures the policy, not the
  // harness.
  int format = reward::score_format(trajectory);
  int answer_score = 0;
  std::optional<double> performance;

  if (answered) {
    env::InstrCountResult final_result =
        environment.instrcount(inputs.program_id, trajectory.final_answer_flags);
    trajectory.env_results.push_back(final_result);
    trajectory.improvement_over_oz = final_result.improvement_over_oz;
    answer_score = reward::score_answer(trajectory.final_answer_flags,
                                        base.catalog(), final_result);
    if (final_result.status == env::EnvStatus::kSuccess) {
      performance = reward::score_performance(final_result.ic_unopt,
                                              final_result.ic_after);
    }
    try {
      trajectory.final_sequence =
          pass::parse_flags(trajectory.final_answer_flags, base.catalog());
    } catch (const UnknownPassError&) {
      trajectory.final_sequence = std::nullopt;
    }

    if (config.knowledge_write_back && trajectory.final_sequence &&
        final_result.status == env::EnvStatus::kSuccess) {
      double improvement = final_result.improvement_over_oz;
      if (improvement > 0 && improvement <= 1.0) {
        try {
          base.insert_empirical({inputs.features, *trajectory.final_sequence,
                                 improvement, inputs.program_id,
                                 "episode write-back"});
        } catch (const NegativeCollisionError&) {
          // Blacklisted earlier in this run; keep it out.
        }
      } else if (improvement < base.epsilon()) {
        base.insert_negative(*trajectory.final_sequence, improvement);
      }
    }
  }

  trajectory.rewards =
      reward::total_reward(format, answer_score, performance, config.weights);
  for (int t = 0; t < assistant_turns; ++t) trajectory.per_turn_rewards.push_back(0.0);
  if (!trajectory.per_turn_rewards.empty()) {
    trajectory.per_turn_rewards.back() = trajectory.rewards.total;
  }
  return trajectory;
}

namespace {

ordered_json env_result_to_json(const env::InstrCountResult& result) {
  ordered_json j;
  j["status"] = env::status_name(result.status);
  j["ic_unopt"] = result.ic_unopt;
  j["ic_after"] = result.ic_after;
  j["ic_oz"] = result.ic_oz;
  j["delta_ic"] = result.delta_ic;
  j["improvement_over_oz"] = result.improvement_over_oz;
  j["degenerate"] = result.degenerate;
  j["stderr_excerpt"] = result.stderr_excerpt;
  return j;
}

env::InstrCountResult env_result_from_json(const json& j) {
  env::InstrCountResult result;
  std::string status = j.value("status", "compile_error");
  result.status = status == "success" ? env::EnvStatus::kSuccess
                  : status == "timeout" ? env::EnvStatus::kTimeout
                                        : env::EnvStatus::kCompileError;
  result.ic_unopt = j.value("ic_unopt", 0LL);
  result.ic_after = j.value("ic_after", 0LL);
  result.ic_oz = j.value("ic_oz", 0LL);
  result.delta_ic = j.value("delta_ic", 0.0);
  result.improvement_over_oz = j.value("improvement_over_oz", 0.0);
  result.degenerate = j.value("degenerate", false);
  result.stderr_excerpt = j.value("stderr_excerpt", std::string());
  return result;
}

}  // namespace

std::string trajectory_to_json(const Trajectory& trajectory) {
  ordered_json j;
  j["program_id"] = trajectory.program_id;
  j["features_json"] = trajectory.features_json;
  j["terminated_by"] = termination_name(trajectory.terminated_by);
  j["prompt"] = trajectory.prompt;
  j["turns"] = ordered_json::array();
  for (const AgentTurn& turn : trajectory.turns) {
    j["turns"].push_back(
        {{"role", turn.role == AgentTurn::Role::kAssistant ? "assistant"
                                                           : "tool"},
         {"content", turn.raw}});
  }
  j["final_answer_flags"] = trajectory.final_answer_flags;
  if (trajectory.final_sequence) {
    j["final_sequence_indices"] = trajectory.final_sequence->items;
  } else {
    j["final_sequence_indices"] = nullptr;
  }
  j["rewards"] = {{"format", trajectory.rewards.format},
                  {"answer", trajectory.rewards.answer},
                  {"performance", trajectory.rewards.performance},
                  {"total", trajectory.rewards.total},
                  {"weights",
                   {{"format", trajectory.rewards.weights.format},
                    {"answer", trajectory.rewards.weights.answer},
                    {"performance", trajectory.rewards.weights.performance}}}};
  j["env_results"] = ordered_json::array();
  for (const env::InstrCountResult& result : trajectory.env_results) {
    j["env_results"].push_back(env_result_to_json(result));
  }
  j["improvement_over_oz"] = trajectory.improvement_over_oz;
  j["per_turn_rewards"] = trajectory.per_turn_rewards;
  j["gamma"] = trajectory.gamma;
  j["discounted_return"] =
      reward::discounted_return(trajectory.per_turn_rewards, trajectory.gamma);
  return j.dump();
}

Trajectory trajectory_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError("trajectory record is not valid JSON: " +
                  std::string(e.what()));
  }
  Trajectory trajectory;
  trajectory.program_id = j.value("program_id", std::string());
  trajectory.features_json = j.value("features_json", std::string());
  trajectory.prompt = j.value("prompt", std::string());
  std::string reason = j.value("terminated_by", "protocol_error");
  trajectory.terminated_by = reason == "answer" ? TerminationReason::kAnswer
                             : reason == "max_turns"
                                 ? TerminationReason::kMaxTurns
                                 : TerminationReason::kProtocolError;
  for (const auto& t : j.value("turns", json::array())) {
    std::string role = t.value("role", "assistant");
    std::string content = t.value("content", std::string());
    if (role == "assistant") {
      trajectory.turns.push_back(parse_turn(content));
    } else {
      constexpr std::string_view kOpen = "<tool_response>";
      constexpr std::string_view kClose = "</tool_response>";
      std::string body = content;
      std::size_t open = body.find(kOpen);
      std::size_t close = body.rfind(kClose);
      if (open != std::string::npos && close != std::string::npos) {
        body = body.substr(open + kOpen.size(), close - open - kOpen.size());
      }
      trajectory.turns.push_back(make_tool_turn(body));
    }
  }
  trajectory.final_answer_flags =
      j.value("final_answer_flags", std::vector<std::string>{});
  if (j.contains("final_sequence_indices") &&
      j["final_sequence_indices"].is_array()) {
    trajectory.final_sequence =
        pass::PassSequence{j["final_sequence_indices"].get<std::vector<int>>()};
  }
  if (j.contains("rewards")) {
    const auto& r = j["rewards"];
    trajectory.rewards.format = r.value("format", 0);
    trajectory.rewards.answer = r.value("answer", 0);
    trajectory.rewards.performance = r.value("performance", 0.0);
    trajectory.rewards.total = r.value("total", 0.0);
    if (r.contains("weights")) {
      trajectory.rewards.weights.format = r["weights"].value("format", 0.1);
      trajectory.rewards.weights.answer = r["weights"].value("answer", 0.2);
      trajectory.rewards.weights.performance =
          r["weights"].value("performance", 0.7);
    }
  }
  for (const auto& e : j.value("env_results", json::array())) {
    trajectory.env_results.push_back(env_result_from_json(e));
  }
  trajectory.improvement_over_oz = j.value("improvement_over_oz", 0.0);
  trajectory.per_turn_rewards =
      j.value("per_turn_rewards", std::vector<double>{});
  trajectory.gamma = j.value("gamma", 1.0);
  return trajectory;
}

}  // namespace aware::agent
