// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures for agent/dataset/harness tests: the canonical three-turn
// tool-calling exchange, scripted environments, and temp-file helpers.

#ifndef AWAREOPT_TESTS_SUPPORT_FIXTURES_HPP
#define AWAREOPT_TESTS_SUPPORT_FIXTURES_HPP

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "awareopt/agent.hpp"
#include "awareopt/compiler_env.hpp"
#include "awareopt/ir_features.hpp"
#include "awareopt/knowledge_base.hpp"
#include "awareopt/pass_space.hpp"

namespace aware::testing {

inline std::shared_ptr<const pass::PassCatalog> production_catalog() {
  static auto catalog =
      std::make_shared<const pass::PassCatalog>(pass::builtin_catalog());
  return catalog;
}

inline std::string template_text() {
  static std::string text = agent::read_text_file(
      std::filesystem::path(AWAREOPT_SOURCE_DIR) / "data" /
      "prompt_template.txt");
  return text;
}

// The reference multi-turn exchange: think + retrieval call, think +
// instrcount call, final answer.
inline std::vector<std::string> exchange_script(
    const std::string& features_json, const std::string& program_id,
    const std::string& flags_json_list) {
  std::vector<std::string> turns;
  nlohmann::ordered_json retrieval;
  retrieval["name"] = agent::kRetrievalToolName;
  retrieval["arguments"] = {{"query", features_json}};
  turns.push_back(
      "<think> Analyzing the autophase features, I notice a high number of "
      "memory instructions and branches. I will prioritize memory and "
      "control-flow optimizations. </think>\n<tool_call>\n" +
      retrieval.dump() + "\n</tool_call>");

  nlohmann::ordered_json verify;
  verify["name"] = agent::kInstrCountToolName;
  verify["arguments"]["filename"] = program_id;
  verify["arguments"]["optimization_flags"] =
      nlohmann::json::parse(flags_json_list);
  turns.push_back(
      "<think> I will verify the recommended sequence using the instrcount "
      "tool. </think>\n<tool_call>\n" +
      verify.dump() + "\n</tool_call>");

  turns.push_back("<answer>\n" + flags_json_list + "\n</answer>");
  return turns;
}

// Tiny module used wherever a real feature vector is convenient.
inline const char* tiny_ir() {
  return "define i32 @f(i32 %a) {\n"
         "entry:\n"
         "  %x = add nsw i32 %a, 1\n"
         "  %c = icmp sgt i32 %x, 10\n"
         "  br i1 %c, label %big, label %small\n"
         "big:\n"
         "  br label %done\n"
         "small:\n"
         "  br label %done\n"
         "done:\n"
         "  %r = phi i32 [ %x, %big ], [ 0, %small ]\n"
         "  ret i32 %r\n"
         "}\n";
}

inline ir::FeatureVector tiny_features() {
  return ir::extract_features(ir::parse_ir(tiny_ir()));
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("awareopt-fixture-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path write(const std::string& name,
                              const std::string& contents) const {
    std::filesystem::path file = path / name;
    std::ofstream out(file);
    out << contents;
    return file;
  }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
};

// Scripted environment preloaded for one program: unoptimized count, an -Oz
// count, and a per-flag-set count table.
inline env::ScriptedEnv scripted_env_for(
    const std::string& program_id, long long ic_unopt, long long ic_oz,
    const std::vector<std::pair<std::vector<std::string>, long long>>& table) {
  env::ScriptedEnv environment;
  environment.register_program(program_id);
  environment.set_counts(program_id, {"-Oz"}, ic_unopt, ic_oz, ic_oz);
  environment.set_counts(program_id, {}, ic_unopt, ic_unopt, ic_oz);
  for (const auto& [flags, count] : table) {
    environment.set_counts(program_id, flags, ic_unopt, count, ic_oz);
  }
  return environment;
}

}  // namespace aware::testing

#endif  // AWAREOPT_TESTS_SUPPORT_FIXTURES_HPP
