// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "awareopt/agent.hpp"
#include "support/fixtures.hpp"

using namespace aware;
using namespace aware::agent;

namespace {

kb::KnowledgeBase seeded_base(double epsilon = 0.0) {
  kb::KnowledgeBase base(testing::production_catalog(), epsilon);
  base.insert_empirical({testing::tiny_features(),
                         pass::PassSequence{{50, 26, 93, 91}},
                         0.42,
                         "seed",
                         ""});
  return base;
}

}  // namespace

TEST_CASE("parse_turn: think plus answer") {
  AgentTurn turn = parse_turn("<think>a</think><answer>[\"--gvn\"]</answer>");
  REQUIRE(turn.blocks.size() == 2);
  CHECK(turn.blocks[0].kind == BlockKind::kThink);
  CHECK(turn.blocks[0].body == "a");
  CHECK(turn.blocks[1].kind == BlockKind::kAnswer);
  CHECK(turn.blocks[1].answer_flags == std::vector<std::string>{"--gvn"});
  CHECK_FALSE(turn.has_stray_text);
}

TEST_CASE("parse_turn: tool_call body is JSON-parsed") {
  AgentTurn turn = parse_turn(
      "<think> checking </think>\n<tool_call>\n"
      R"({"name": "instrcount", "arguments": {"filename": "p", "optimization_flags": ["--gvn"]}})"
      "\n</tool_call>");
  REQUIRE(turn.blocks.size() == 2);
  const Block& call = turn.blocks[1];
  CHECK(call.kind == BlockKind::kToolCall);
  CHECK_FALSE(call.malformed);
  CHECK(call.tool_name == "instrcount");
  CHECK(call.tool_args_json.find("optimization_flags") != std::string::npos);
}

TEST_CASE("parse_turn: malformed bodies are annotated, never thrown") {
  AgentTurn bad_answer = parse_turn("<answer>not json</answer>");
  REQUIRE(bad_answer.blocks.size() == 1);
  CHECK(bad_answer.blocks[0].malformed);

  AgentTurn bad_call = parse_turn("<tool_call>{{{</tool_call>");
  CHECK(bad_call.blocks[0].malformed);

  AgentTurn no_name = parse_turn("<tool_call>{\"arguments\": {}}</tool_call>");
  CHECK(no_name.blocks[0].malformed);

  AgentTurn unclosed = parse_turn("<think>forever");
  CHECK(unclosed.blocks[0].malformed);

  AgentTurn stray = parse_turn("hello <think>x</think>");
  CHECK(stray.has_stray_text);

  AgentTurn junk = parse_turn("total junk");
  CHECK(junk.has_stray_text);
  CHECK(junk.blocks.empty());
}

TEST_CASE("render_prompt: template interpolation") {
  std::string tmpl = testing::template_text();
  ir::FeatureVector fv = testing::tiny_features();
  long long total = static_cast<long long>(fv[ir::kTotalInsts]);

  std::string prompt = render_prompt(fv, total, "cbench/crc32", tmpl);
  CHECK(prompt.rfind("Act as a compiler optimization expert", 0) == 0);
  CHECK(prompt.find(ir::serialize_features(fv)) != std::string::npos);
  CHECK(prompt.find("cbench/crc32") != std::string::npos);
  CHECK(prompt.find("Initial instruction count: " + std::to_string(total)) !=
        std::string::npos);
  // Escaped braces render as literal JSON braces.
  CHECK(prompt.find("{\"name\": \"lightrag_compiler_optimization\"") !=
        std::string::npos);
  CHECK(prompt.find("{formatted_features}") == std::string::npos);

  // Deterministic.
  CHECK(render_prompt(fv, total, "cbench/crc32", tmpl) == prompt);

  CHECK_THROWS_AS(render_prompt(fv, total + 1, "p", tmpl), Error);
  CHECK_THROWS_AS(render_prompt(fv, total, "p", "no placeholders"),
                  TemplateError);
  CHECK_THROWS_AS(
      render_prompt(fv, total, "p",
                    "{formatted_features}{TotalInsts}{program_id}{bogus}"),
      TemplateError);
  CHECK_THROWS_AS(render_prompt(fv, total, "p", "unbalanced {"),
                  TemplateError);
}

TEST_CASE("dispatch_tool: instrcount routes to the environment") {
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {});
  kb::KnowledgeBase base = seeded_base();

  Block call;
  call.kind = BlockKind::kToolCall;
  call.tool_name = kInstrCountToolName;
  call.tool_args_json =
      R"({"filename": "prog", "optimization_flags": ["-Oz"]})";
  std::string response = dispatch_tool(call, base, environment);
  nlohmann::json parsed = nlohmann::json::parse(response);
  CHECK(parsed["status"] == "success");
  CHECK(parsed["improvement_over_oz"] == 0.0);

  call.tool_args_json = R"({"filename": "ghost"})";
  parsed = nlohmann::json::parse(dispatch_tool(call, base, environment));
  CHECK(parsed["status"] == "error");
  CHECK(parsed["reason"] == "unknown_program");
}

TEST_CASE("dispatch_tool: retrieval returns the top-1 recommendation") {
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {});
  kb::KnowledgeBase base = seeded_base();

  Block call;
  call.kind = BlockKind::kToolCall;
  call.tool_name = kRetrievalToolName;
  nlohmann::json args;
  args["query"] = ir::serialize_features(testing::tiny_features());
  call.tool_args_json = args.dump();

  nlohmann::json parsed =
      nlohmann::json::parse(dispatch_tool(call, base, environment));
  REQUIRE(parsed.contains("recommended_pass_sequence"));
  CHECK(parsed["recommended_pass_sequence"] ==
        nlohmann::json::parse(
            R"(["--inferattrs", "--dse", "--mldst-motion", "--mergefunc"])"));
  CHECK(parsed["performance_improvement"] == 0.42);

  // Bad query text.
  call.tool_args_json = R"({"query": "not features"})";
  parsed = nlohmann::json::parse(dispatch_tool(call, base, environment));
  CHECK(parsed["reason"] == "bad_query");

  // Empty store.
  kb::KnowledgeBase empty(testing::production_catalog());
  call.tool_args_json = args.dump();
  parsed = nlohmann::json::parse(dispatch_tool(call, empty, environment));
  CHECK(parsed["reason"] == "empty_knowledge_base");
}

TEST_CASE("dispatch_tool: retrieval alpha shifts the fusion balance") {
  env::ScriptedEnv environment;
  kb::KnowledgeBase base(testing::production_catalog());
  // Similar program with a weak recipe vs dissimilar program with a strong one.
  base.insert_empirical(
      {testing::tiny_features(), pass::PassSequence{{24}}, 0.05, "similar", ""});
  ir::FeatureVector other;
  other[ir::kNumCallInst] = 99;
  base.insert_empirical({other, pass::PassSequence{{26}}, 0.9, "strong", ""});

  Block call;
  call.kind = BlockKind::kToolCall;
  call.tool_name = kRetrievalToolName;
  nlohmann::json args;
  args["query"] = ir::serialize_features(testing::tiny_features());
  call.tool_args_json = args.dump();

  auto top_flags = [&](double alpha) {
    nlohmann::json parsed = nlohmann::json::parse(
        dispatch_tool(call, base, environment, 1, nullptr, alpha));
    return parsed["recommended_pass_sequence"][0].get<std::string>();
  };
  CHECK(top_flags(1.0) == "--dce");  // pure similarity
  CHECK(top_flags(0.0) == "--dse");  // pure effect
}

TEST_CASE("dispatch_tool: unknown and malformed calls are in-band errors") {
  env::ScriptedEnv environment;
  kb::KnowledgeBase base(testing::production_catalog());

  Block unknown;
  unknown.kind = BlockKind::kToolCall;
  unknown.tool_name = "no_such_tool";
  unknown.tool_args_json = "{}";
  nlohmann::json parsed =
      nlohmann::json::parse(dispatch_tool(unknown, base, environment));
  CHECK(parsed["status"] == "error");
  CHECK(parsed["reason"] == "unknown_tool");

  Block malformed;
  malformed.kind = BlockKind::kToolCall;
  malformed.malformed = true;
  parsed = nlohmann::json::parse(dispatch_tool(malformed, base, environment));
  CHECK(parsed["reason"] == "malformed_tool_call");
}

TEST_CASE("run_episode: scripted reference exchange") {
  std::string features_json = ir::serialize_features(testing::tiny_features());
  std::vector<std::string> flags = {"--inferattrs", "--dse", "--mldst-motion",
                                    "--mergefunc"};
  ScriptedPolicy policy(testing::exchange_script(
      features_json, "prog",
      R"(["--inferattrs", "--dse", "--mldst-motion", "--mergefunc"])"));
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {{flags, 522}});
  kb::KnowledgeBase base = seeded_base();

  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  Trajectory t = run_episode(inputs, policy, base, environment);

  CHECK(t.terminated_by == TerminationReason::kAnswer);
  CHECK(t.rewards.format == 1);
  CHECK(t.rewards.answer == 1);
  REQUIRE(t.final_sequence.has_value());
  CHECK(t.final_answer_flags == flags);
  // One result from the instrcount tool call, one from the answer check.
  REQUIRE(t.env_results.size() == 2);
  CHECK(t.env_results.back().status == env::EnvStatus::kSuccess);
  CHECK(t.rewards.performance == doctest::Approx((1000.0 - 522.0) / 1000.0));
  CHECK(t.improvement_over_oz == doctest::Approx((900.0 - 522.0) / 900.0));

  // Turns: assistant, tool, assistant, tool, assistant.
  REQUIRE(t.turns.size() == 5);
  CHECK(t.turns[0].role == AgentTurn::Role::kAssistant);
  CHECK(t.turns[1].role == AgentTurn::Role::kTool);
  CHECK(t.turns[2].role == AgentTurn::Role::kAssistant);
  CHECK(t.turns[3].role == AgentTurn::Role::kTool);
  CHECK(t.turns[4].role == AgentTurn::Role::kAssistant);

  // Sparse reward stream: last assistant turn carries the total.
  REQUIRE(t.per_turn_rewards.size() == 3);
  CHECK(t.per_turn_rewards[0] == 0.0);
  CHECK(t.per_turn_rewards[1] == 0.0);
  CHECK(t.per_turn_rewards[2] == doctest::Approx(t.rewards.total));
}

TEST_CASE("run_episode: junk policy output is a protocol error") {
  ScriptedPolicy policy({"complete nonsense"});
  env::ScriptedEnv environment = testing::scripted_env_for("prog", 10, 9, {});
  kb::KnowledgeBase base = seeded_base();
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  Trajectory t = run_episode(inputs, policy, base, environment);
  CHECK(t.terminated_by == TerminationReason::kProtocolError);
  CHECK(t.rewards.format == 0);
  CHECK(t.rewards.answer == 0);
  CHECK_FALSE(t.final_sequence.has_value());
}

TEST_CASE("run_episode: -Oz answer self-compares to zero improvement") {
  ScriptedPolicy policy({"<think>expert pipeline</think>\n"
                         "<answer>[\"-Oz\"]</answer>"});
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {});
  kb::KnowledgeBase base = seeded_base();
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  Trajectory t = run_episode(inputs, policy, base, environment);
  CHECK(t.terminated_by == TerminationReason::kAnswer);
  CHECK(t.improvement_over_oz == 0.0);
  CHECK(t.rewards.performance == doctest::Approx(0.1));  // vs unoptimized
}

TEST_CASE("run_episode: max turns cap") {
  std::vector<std::string> endless(20, "<think>still thinking</think>");
  ScriptedPolicy policy(endless);
  env::ScriptedEnv environment = testing::scripted_env_for("prog", 10, 9, {});
  kb::KnowledgeBase base = seeded_base();
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  EpisodeConfig config;
  config.max_turns = 4;
  Trajectory t = run_episode(inputs, policy, base, environment, config);
  CHECK(t.terminated_by == TerminationReason::kMaxTurns);
  std::size_t assistant_turns = 0;
  for (const auto& turn : t.turns) {
    if (turn.role == AgentTurn::Role::kAssistant) ++assistant_turns;
  }
  CHECK(assistant_turns == 4);
}

TEST_CASE("run_episode: knowledge write-back on success and regression") {
  std::string features_json = ir::serialize_features(testing::tiny_features());
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};

  // Positive improvement lands in the empirical store.
  {
    ScriptedPolicy policy({"<answer>[\"--gvn\"]</answer>"});
    env::ScriptedEnv environment =
        testing::scripted_env_for("prog", 1000, 900, {{{"--gvn"}, 700}});
    kb::KnowledgeBase base(testing::production_catalog());
    base.insert_empirical({ir::FeatureVector{}, pass::PassSequence{{24}},
                           0.0, "seed", ""});
    std::size_t before = base.empirical().size();
    Trajectory t = run_episode(inputs, policy, base, environment);
    CHECK(t.improvement_over_oz > 0);
    CHECK(base.empirical().size() == before + 1);
  }

  // Regression below epsilon is blacklisted and never retrievable again.
  {
    ScriptedPolicy policy({"<answer>[\"--gvn\"]</answer>"});
    env::ScriptedEnv environment =
        testing::scripted_env_for("prog", 1000, 900, {{{"--gvn"}, 1200}});
    kb::KnowledgeBase base(testing::production_catalog());
    base.insert_empirical({testing::tiny_features(),
                           pass::PassSequence{{26}}, 0.1, "seed", ""});
    Trajectory t = run_episode(inputs, policy, base, environment);
    CHECK(t.improvement_over_oz < 0);
    CHECK(base.is_blacklisted(pass::PassSequence{{26}}) == false);
    CHECK(base.is_blacklisted(*t.final_sequence));
    kb::RetrievalResult blind = base.retrieve(testing::tiny_features(), 10);
    for (const auto& ranked : blind.ranked) {
      CHECK_FALSE(ranked.entry.sequence == *t.final_sequence);
    }
  }
}

TEST_CASE("run_episode: deterministic bytes under identical inputs") {
  auto run_once = [] {
    std::string flags_list = R"(["--gvn", "--dse"])";
    ScriptedPolicy policy(testing::exchange_script(
        ir::serialize_features(testing::tiny_features()), "prog", flags_list));
    env::ScriptedEnv environment = testing::scripted_env_for(
        "prog", 1000, 900, {{{"--gvn", "--dse"}, 777}});
    kb::KnowledgeBase base = seeded_base();
    EpisodeInputs inputs{"prog", testing::tiny_features(),
                         testing::template_text()};
    return trajectory_to_json(run_episode(inputs, policy, base, environment));
  };
  CHECK(run_once() == run_once());
}

TEST_CASE("trajectory JSON round-trip is stable") {
  ScriptedPolicy policy({"<answer>[\"--gvn\"]</answer>"});
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {{{"--gvn"}, 800}});
  kb::KnowledgeBase base = seeded_base();
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  Trajectory t = run_episode(inputs, policy, base, environment);
  std::string once = trajectory_to_json(t);
  std::string twice = trajectory_to_json(trajectory_from_json(once));
  CHECK(once == twice);
}

TEST_CASE("RetrievalAnswerPolicy answers the recommendation") {
  std::string features_json = ir::serialize_features(testing::tiny_features());
  RetrievalAnswerPolicy policy("prog", features_json);
  std::vector<std::string> recommended = {"--inferattrs", "--dse",
                                          "--mldst-motion", "--mergefunc"};
  env::ScriptedEnv environment =
      testing::scripted_env_for("prog", 1000, 900, {{recommended, 600}});
  kb::KnowledgeBase base = seeded_base();
  EpisodeInputs inputs{"prog", testing::tiny_features(),
                       testing::template_text()};
  Trajectory t = run_episode(inputs, policy, base, environment);
  CHECK(t.terminated_by == TerminationReason::kAnswer);
  CHECK(t.final_answer_flags == recommended);
  CHECK(t.rewards.answer == 1);
}

TEST_CASE("CaseStudyPolicy: falls back to the knowledge base") {
  std::string features_json = ir::serialize_features(testing::tiny_features());
  std::vector<std::string> heuristic = {"--simplifycfg", "--instcombine"};
  std::vector<std::string> recommended = {"--inferattrs", "--dse",
                                          "--mldst-motion", "--mergefunc"};

  // Heuristic regresses; the recommendation wins.
  {
    CaseStudyPolicy policy("prog", features_json, heuristic);
    env::ScriptedEnv environment = testing::scripted_env_for(
        "prog", 1000, 900, {{heuristic, 950}, {recommended, 600}});
    kb::KnowledgeBase base = seeded_base();
    EpisodeInputs inputs{"prog", testing::tiny_features(),
                         testing::template_text()};
    Trajectory t = run_episode(inputs, policy, base, environment);
    CHECK(t.terminated_by == TerminationReason::kAnswer);
    CHECK(t.final_answer_flags == recommended);
    // The failed heuristic probe is on record next to the final check.
    REQUIRE(t.env_results.size() == 2);
    CHECK(t.env_results.front().improvement_over_oz < 0);
    CHECK(t.improvement_over_oz > 0);
    CHECK(t.improvement_over_oz > t.env_results.front().improvement_over_oz);
  }

  // Heuristic already wins: answered directly, no retrieval.
  {
    CaseStudyPolicy policy("prog", features_json, heuristic);
    env::ScriptedEnv environment = testing::scripted_env_for(
        "prog", 1000, 900, {{heuristic, 500}});
    kb::KnowledgeBase base = seeded_base();
    EpisodeInputs inputs{"prog", testing::tiny_features(),
                         testing::template_text()};
    Trajectory t = run_episode(inputs, policy, base, environment);
    CHECK(t.final_answer_flags == heuristic);
    std::size_t assistant_turns = 0;
    for (const auto& turn : t.turns) {
      if (turn.role == AgentTurn::Role::kAssistant) ++assistant_turns;
    }
    CHECK(assistant_turns == 2);
  }
}

TEST_CASE("remote_chat: stub server, retries, and failure modes") {
  httplib::Server server;
  std::atomic<int> fail_count{0};
  std::string captured_body;

  server.Post("/v1/chat/completions",
              [&](const httplib::Request& req, httplib::Response& res) {
                captured_body = req.body;
                nlohmann::json reply = {
                    {"choices",
                     {{{"message",
                        {{"role", "assistant"},
                         {"content", "<think>hi</think>"}}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  server.Post("/fail5xx",
              [&](const httplib::Request&, httplib::Response& res) {
                fail_count.fetch_add(1);
                res.status = 500;
              });
  server.Post("/notjson",
              [&](const httplib::Request&, httplib::Response& res) {
                res.set_content("garbage", "text/plain");
              });

  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  PolicyEndpoint endpoint;
  endpoint.kind = PolicyEndpoint::Kind::kRemoteChat;
  endpoint.endpoint_url = "http://127.0.0.1:" + std::to_string(port);
  endpoint.model_name = "test-model";

  std::vector<ChatMessage> conversation = {
      {"system", "Act as a compiler optimization expert..."}};

  SUBCASE("echoes the canned reply and sends the conversation") {
    std::string reply = remote_chat(conversation, endpoint);
    CHECK(reply == "<think>hi</think>");
    nlohmann::json body = nlohmann::json::parse(captured_body);
    CHECK(body["model"] == "test-model");
    REQUIRE(body["messages"].size() == 1);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][0]["content"] ==
          "Act as a compiler optimization expert...");
  }

  SUBCASE("500 three times exhausts retries") {
    PolicyEndpoint failing = endpoint;
    failing.endpoint_url += "/fail5xx";
    CHECK_THROWS_AS(remote_chat(conversation, failing),
                    PolicyUnreachableError);
    CHECK(fail_count.load() == 3);
  }

  SUBCASE("unparseable body is a malformed response") {
    PolicyEndpoint bad = endpoint;
    bad.endpoint_url += "/notjson";
    CHECK_THROWS_AS(remote_chat(conversation, bad), MalformedResponseError);
  }

  SUBCASE("connection refused is unreachable") {
    PolicyEndpoint nowhere = endpoint;
    nowhere.endpoint_url = "http://127.0.0.1:1";
    CHECK_THROWS_AS(remote_chat(conversation, nowhere),
                    PolicyUnreachableError);
  }

  server.stop();
  listener.join();
}
