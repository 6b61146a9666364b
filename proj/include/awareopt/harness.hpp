// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_HARNESS_HPP
#define AWAREOPT_HARNESS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "awareopt/agent.hpp"
#include "awareopt/compiler_env.hpp"
#include "awareopt/knowledge_base.hpp"

namespace aware::harness {

struct ProgramSpec {
  std::string id;
  std::filesystem::path ir_path;
};

struct Suite {
  std::string name;
  std::vector<ProgramSpec> programs;
};

struct BenchmarkManifest {
  std::vector<Suite> suites;

  env::ProgramRegistry to_registry() const;
  std::optional<ProgramSpec> find_program(const std::string& id) const;
};

// JSON: {"suites": [{"name", "programs": [{"id", "ir_path"}]}]}. Relative
// paths resolve against the manifest location. Ids must be globally unique
// and every path must exist. Throws IoError / Error.
BenchmarkManifest load_manifest(const std::filesystem::path& path);

struct ProgramRow {
  std::string id;
  long long ic_unopt = 0;
  long long ic_method = 0;
  double reduction = 0.0;  // (ic_unopt - ic_method) / ic_unopt
  bool success = false;    // sequence validated and compile succeeded
  std::string error;
};

struct SuiteReport {
  std::string suite;
  std::string method;
  std::vector<ProgramRow> per_program;
  double average_reduction = 0.0;          // arithmetic mean over programs
  std::optional<double> success_rate;      // absent for an empty suite
};

// Per-program mean; failures count as zero reduction.
double average_reduction(const std::vector<ProgramRow>& rows);
// Geometric-mean alternative over (1 + reduction), offered since the
// aggregation is configurable.
double geometric_mean_reduction(const std::vector<ProgramRow>& rows);
std::optional<double> success_rate(const SuiteReport& report);

std::string report_to_json(const std::vector<SuiteReport>& reports);
std::vector<SuiteReport> report_from_json(const std::string& json_text);

struct Method {
  enum class Kind { kBaseline, kFixedSequence, kAgent };
  Kind kind = Kind::kBaseline;
  env::BaselineLevel level = env::BaselineLevel::kOz;  // kBaseline
  std::vector<std::string> flags;                      // kFixedSequence
  std::string name;                                    // report label

  static Method baseline(env::BaselineLevel level);
  static Method fixed(std::vector<std::string> flags);
  static Method agent();
};

using PolicyFactory = std::function<std::unique_ptr<agent::Policy>(
    const ProgramSpec& program, const ir::FeatureVector& features,
    const std::string& features_json)>;

struct EvalOptions {
  int workers = 1;
  // Agent-method plumbing:
  std::string template_text;
  agent::EpisodeConfig episode;
  PolicyFactory policy_factory;
  std::filesystem::path trajectory_log;  // empty = do not log
};

// Evaluates one method over every suite. All methods are routed through
// Env::instrcount, so offline scripted environments work the same as real
// opt. Per-program failures are recorded in the report and never abort the
// suite. With workers > 1, agent episodes run on knowledge-base copies and
// write-back is disabled.
std::vector<SuiteReport> evaluate_method(const BenchmarkManifest& manifest,
                                         const Method& method,
                                         env::Env& environment,
                                         const kb::KnowledgeBase& base,
                                         const EvalOptions& options = {});

struct Comparison {
  std::string text_table;
  std::string csv;
};

// Aligned reduction table with per-suite averages and deltas. Both reports
// must cover the same program ids. Throws MismatchedProgramsError.
Comparison compare_report(const std::vector<SuiteReport>& a,
                          const std::vector<SuiteReport>& b);

}  // namespace aware::harness

#endif  // AWAREOPT_HARNESS_HPP
