// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_DATASET_HPP
#define AWAREOPT_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "awareopt/agent.hpp"

namespace aware::dataset {

// One context-aware training record: program representation, reasoning,
// sequence, and measured effect.
struct DatasetRecord {
  std::string program_representation;  // feature JSON text
  std::string reasoning_process;       // think blocks, flattened in order
  std::vector<std::string> pass_sequence;
  std::string status;
  double improvement_over_oz = 0.0;
  std::string provenance;  // which path produced the sequence
};

// 0.1772 -> "17.72%".
std::string format_percent(double ratio);

// Builds a record from an answered trajectory. Throws
// IncompleteTrajectoryError for episodes that never reached an answer.
DatasetRecord trajectory_to_record(const agent::Trajectory& trajectory);

// JSON with the exact field names of the training-sample format:
// "Program Representation", "Reasoning Process", "Pass Sequence",
// "Optimization Effect" {"Status", "Improvement (over_oz)"}. The raw ratio
// is stored alongside the formatted percentage.
std::string record_to_json(const DatasetRecord& record);
DatasetRecord record_from_json(const std::string& json_text);

// Chat-format replay of a clean demonstration.
struct SftSample {
  std::vector<agent::ChatMessage> messages;  // first is the rendered prompt
  std::vector<std::size_t> weightable_turns;  // assistant message indices
};

// Requires format and answer rewards of 1; throws RejectedSampleError
// otherwise. Tag structure is preserved verbatim inside assistant contents.
SftSample trajectory_to_sft(const agent::Trajectory& trajectory);

std::string sft_to_json(const SftSample& sample);
SftSample sft_from_json(const std::string& json_text);

// Keeps records with improvement_over_oz >= min_effect, stable order.
// min_effect must lie in [-1, 1].
std::vector<DatasetRecord> filter_dataset(std::vector<DatasetRecord> records,
                                          double min_effect);

struct BuildOutcome {
  std::size_t records = 0;
  std::size_t sft_samples = 0;
  std::size_t rejected_records = 0;
  std::size_t rejected_sft = 0;
};

// Streams a trajectory JSONL file into record / SFT JSONL files. Either
// output may be disabled by passing nullopt.
BuildOutcome build_files(const std::filesystem::path& trajectories_path,
                         const std::optional<std::filesystem::path>& records_out,
                         const std::optional<std::filesystem::path>& sft_out,
                         double min_effect = -1.0);

}  // namespace aware::dataset

#endif  // AWAREOPT_DATASET_HPP
