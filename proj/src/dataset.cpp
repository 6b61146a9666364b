// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "awareopt/dataset.hpp"

namespace aware::dataset {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_percent(double ratio) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f%%", ratio * 100.0);
  return buffer;
}

DatasetRecord trajectory_to_record(const agent::Trajectory& trajectory) {
  if (trajectory.terminated_by != agent::TerminationReason::kAnswer ||
      trajectory.env_results.empty()) {
    throw IncompleteTrajectoryError(
        "trajectory for " + trajectory.program_id + " terminated by " +
        std::string(agent::termination_name(trajectory.terminated_by)));
  }
  DatasetRecord record;
  record.program_representation = trajectory.features_json;
  std::string reasoning;
  for (const agent::AgentTurn& turn : trajectory.turns) {
    if (turn.role != agent::AgentTurn::Role::kAssistant) continue;
    for (const agent::Block& block : turn.blocks) {
      if (block.kind != agent::BlockKind::kThink) continue;
      std::string text = trim(block.body);
      if (text.empty()) continue;
      if (!reasoning.empty()) reasoning += "\n";
      reasoning += text;
    }
  }
  record.reasoning_process = std::move(reasoning);
  record.pass_sequence = trajectory.final_answer_flags;
  record.status =
      std::string(env::status_name(trajectory.env_results.back().status));
  record.improvement_over_oz = trajectory.improvement_over_oz;
  record.provenance = trajectory.program_id;
  return record;
}

std::string record_to_json(const DatasetRecord& record) {
  ordered_json j;
  j["Program Representation"] = record.program_representation;
  j["Reasoning Process"] = record.reasoning_process;
  j["Pass Sequence"] = record.pass_sequence;
  j["Optimization Effect"] = {
      {"Status", record.status},
      {"Improvement (over_oz)", format_percent(record.improvement_over_oz)},
      {"improvement_over_oz", record.improvement_over_oz}};
  j["Provenance"] = record.provenance;
  return j.dump();
}

DatasetRecord record_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError("dataset record is not valid JSON: " + std::string(e.what()));
  }
  DatasetRecord record;
  record.program_representation =
      j.value("Program Representation", std::string());
  record.reasoning_process = j.value("Reasoning Process", std::string());
  record.pass_sequence =
      j.value("Pass Sequence", std::vector<std::string>{});
  if (j.contains("Optimization Effect")) {
    const auto& effect = j["Optimization Effect"];
    record.status = effect.value("Status", std::string());
    record.improvement_over_oz = effect.value("improvement_over_oz", 0.0);
  }
  record.provenance = j.value("Provenance", std::string());
  return record;
}

SftSample trajectory_to_sft(const agent::Trajectory& trajectory) {
  if (trajectory.rewards.format != 1) {
    throw RejectedSampleError("format reward is 0");
  }
  if (trajectory.rewards.answer != 1) {
    throw RejectedSampleError("answer reward is 0");
  }
  SftSample sample;
  sample.messages.push_back({"system", trajectory.prompt});
  for (const agent::AgentTurn& turn : trajectory.turns) {
    bool assistant = turn.role == agent::AgentTurn::Role::kAssistant;
    if (assistant) sample.weightable_turns.push_back(sample.messages.size());
    sample.messages.push_back({assistant ? "assistant" : "tool", turn.raw});
  }
  return sample;
}

std::string sft_to_json(const SftSample& sample) {
  ordered_json j;
  j["messages"] = ordered_json::array();
  for (const agent::ChatMessage& m : sample.messages) {
    j["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  j["weightable_turns"] = sample.weightable_turns;
  return j.dump();
}

SftSample sft_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError("SFT sample is not valid JSON: " + std::string(e.what()));
  }
  SftSample sample;
  for (const auto& m : j.value("messages", json::array())) {
    sample.messages.push_back({m.value("role", std::string()),
                               m.value("content", std::string())});
  }
  sample.weightable_turns =
      j.value("weightable_turns", std::vector<std::size_t>{});
  return sample;
}

std::vector<DatasetRecord> filter_dataset(std::vector<DatasetRecord> records,
                                          double min_effect) {
  if (min_effect < -1.0 || min_effect > 1.0) {
    throw Error("min_effect must lie in [-1, 1]");
  }
  std::vector<DatasetRecord> kept;
  kept.reserve(records.size());
  for (DatasetRecord& record : records) {
    if (record.improvement_over_oz >= min_effect) {
      kept.push_back(std::move(record));
    }
  }
  return kept;
}

BuildOutcome build_files(const std::filesystem::path& trajectories_path,
                         const std::optional<std::filesystem::path>& records_out,
                         const std::optional<std::filesystem::path>& sft_out,
                         double min_effect) {
  std::ifstream in(trajectories_path);
  if (!in) {
    throw IoError("cannot open trajectory log: " + trajectories_path.string());
  }
  std::ofstream records_file;
  std::ofstream sft_file;
  if (records_out) {
    records_file.open(*records_out);
    if (!records_file) {
      throw IoError("cannot write records: " + records_out->string());
    }
  }
  if (sft_out) {
    sft_file.open(*sft_out);
    if (!sft_file) throw IoError("cannot write SFT file: " + sft_out->string());
  }

  BuildOutcome outcome;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    agent::Trajectory trajectory = agent::trajectory_from_json(line);
    if (records_out) {
      try {
        DatasetRecord record = trajectory_to_record(trajectory);
        if (record.improvement_over_oz >= min_effect) {
          records_file << record_to_json(record) << "\n";
          ++outcome.records;
        } else {
          ++outcome.rejected_records;
        }
      } catch (const IncompleteTrajectoryError&) {
        ++outcome.rejected_records;
      }
    }
    if (sft_out) {
      try {
        sft_file << sft_to_json(trajectory_to_sft(trajectory)) << "\n";
        ++outcome.sft_samples;
      } catch (const RejectedSampleError&) {
        ++outcome.rejected_sft;
      }
    }
  }
  return outcome;
}

}  // namespace aware::dataset
