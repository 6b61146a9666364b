// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "awareopt/harness.hpp"

namespace aware::harness {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

env::ProgramRegistry BenchmarkManifest::to_registry() const {
  env::ProgramRegistry registry;
  for (const Suite& suite : suites) {
    for (const ProgramSpec& program : suite.programs) {
      registry.add(program.id, program.ir_path);
    }
  }
  return registry;
}

std::optional<ProgramSpec> BenchmarkManifest::find_program(
    const std::string& id) const {
  for (const Suite& suite : suites) {
    for (const ProgramSpec& program : suite.programs) {
      if (program.id == id) return program;
    }
  }
  return std::nullopt;
}

BenchmarkManifest load_manifest(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw IoError("manifest is not valid JSON: " + std::string(e.what()));
  }
  BenchmarkManifest manifest;
  std::set<std::string> seen_ids;
  std::filesystem::path base_dir = path.parent_path();
  for (const auto& s : doc.value("suites", json::array())) {
    Suite suite;
    suite.name = s.value("name", std::string("default"));
    for (const auto& p : s.value("programs", json::array())) {
      ProgramSpec program;
      program.id = p.at("id").get<std::string>();
      std::filesystem::path ir = p.at("ir_path").get<std::string>();
      program.ir_path = ir.is_absolute() ? ir : base_dir / ir;
      if (!seen_ids.insert(program.id).second) {
        throw Error("duplicate program id in manifest: " + program.id);
      }
      if (!std::filesystem::exists(program.ir_path)) {
        throw Error("manifest references missing file: " +
                    program.ir_path.string());
      }
      suite.programs.push_back(std::move(program));
    }
    manifest.suites.push_back(std::move(suite));
  }
  return manifest;
}

double average_reduction(const std::vector<ProgramRow>& rows) {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const ProgramRow& row : rows) sum += row.reduction;
  return sum / static_cast<double>(rows.size());
}

double geometric_mean_reduction(const std::vector<ProgramRow>& rows) {
  if (rows.empty()) return 0.0;
  double log_sum = 0.0;
  for (const ProgramRow& row : rows) {
    double factor = 1.0 + row.reduction;
    if (factor <= 0.0) factor = 1e-9;
    log_sum += std::log(factor);
  }
  return std::exp(log_sum / static_cast<double>(rows.size())) - 1.0;
}

std::optional<double> success_rate(const SuiteReport& report) {
  if (report.per_program.empty()) return std::nullopt;
  std::size_t successes = 0;
  for (const ProgramRow& row : report.per_program) {
    if (row.success) ++successes;
  }
  return static_cast<double>(successes) /
         static_cast<double>(report.per_program.size());
}

Method Method::baseline(env::BaselineLevel level) {
  Method m;
  m.kind = Kind::kBaseline;
  m.level = level;
  m.name = std::string(env::baseline_flag(level));
  return m;
}

Method Method::fixed(std::vector<std::string> flags) {
  Method m;
  m.kind = Kind::kFixedSequence;
  m.flags = std::move(flags);
  m.name = "flags:";
  for (const std::string& f : m.flags) m.name += f + " ";
  return m;
}

Method Method::agent() {
  Method m;
  m.kind = Kind::kAgent;
  m.name = "agent";
  return m;
}

namespace {

ProgramRow evaluate_fixed_flags(const ProgramSpec& program,
                                const std::vector<std::string>& flags,
                                bool check_schema, env::Env& environment,
                                const pass::PassCatalog& catalog) {
  ProgramRow row;
  row.id = program.id;
  bool schema_ok = true;
  if (check_schema) {
    try {
      pass::PassSequence seq = pass::parse_flags(flags, catalog);
      schema_ok = pass::validate_sequence(seq, catalog).valid;
    } catch (const UnknownPassError& e) {
      schema_ok = false;
      row.error = e.what();
    }
  }
  env::InstrCountResult result = environment.instrcount(program.id, flags);
  row.ic_unopt = result.ic_unopt;
  row.ic_method = result.ic_after;
  row.reduction = result.delta_ic;
  row.success = schema_ok && result.status == env::EnvStatus::kSuccess;
  if (result.status != env::EnvStatus::kSuccess) {
    row.error = result.stderr_excerpt;
    row.reduction = 0.0;
    row.ic_method = 0;
  }
  return row;
}

ProgramRow evaluate_agent(const ProgramSpec& program, env::Env& environment,
                          kb::KnowledgeBase& base, const EvalOptions& options,
                          bool allow_write_back, std::mutex& log_mutex,
                          std::ofstream* trajectory_log) {
  ProgramRow row;
  row.id = program.id;
  if (!options.policy_factory) {
    row.error = "no policy configured for the agent method";
    return row;
  }
  ir::FeatureVector features;
  try {
    features = ir::extract_features(
        ir::parse_ir(read_file(program.ir_path), program.ir_path.string()));
  } catch (const Error& e) {
    row.error = e.what();
    return row;
  }
  std::string features_json = ir::serialize_features(features);
  std::unique_ptr<agent::Policy> policy =
      options.policy_factory(program, features, features_json);
  if (!policy) {
    row.error = "policy factory returned nothing";
    return row;
  }

  agent::EpisodeConfig episode = options.episode;
  episode.knowledge_write_back =
      episode.knowledge_write_back && allow_write_back;
  agent::EpisodeInputs inputs{program.id, features, options.template_text};
  agent::Trajectory trajectory;
  try {
    trajectory = agent::run_episode(inputs, *policy, base, environment, episode);
  } catch (const Error& e) {
    row.error = e.what();
    return row;
  }

  if (trajectory_log) {
    std::lock_guard<std::mutex> lock(log_mutex);
    *trajectory_log << agent::trajectory_to_json(trajectory) << "\n";
  }

  if (!trajectory.env_results.empty()) {
    const env::InstrCountResult& final_result = trajectory.env_results.back();
    row.ic_unopt = final_result.ic_unopt;
    row.ic_method = final_result.ic_after;
    if (final_result.status == env::EnvStatus::kSuccess) {
      row.reduction = final_result.delta_ic;
    }
  }
  row.success = trajectory.rewards.answer == 1;
  if (!row.success && row.error.empty()) {
    row.error = "episode terminated by " +
                std::string(agent::termination_name(trajectory.terminated_by));
  }
  return row;
}

}  // namespace

std::vector<SuiteReport> evaluate_method(const BenchmarkManifest& manifest,
                                         const Method& method,
                                         env::Env& environment,
                                         const kb::KnowledgeBase& base,
                                         const EvalOptions& options) {
  std::ofstream trajectory_log;
  bool log_open = false;
  if (method.kind == Method::Kind::kAgent && !options.trajectory_log.empty()) {
    trajectory_log.open(options.trajectory_log, std::ios::app);
    if (!trajectory_log) {
      throw IoError("cannot open trajectory log: " +
                    options.trajectory_log.string());
    }
    log_open = true;
  }
  std::mutex log_mutex;

  int workers = std::max(1, options.workers);
  bool allow_write_back = workers == 1;

  std::vector<SuiteReport> reports;
  for (const Suite& suite : manifest.suites) {
    SuiteReport report;
    report.suite = suite.name;
    report.method = method.name;
    report.per_program.resize(suite.programs.size());

    auto evaluate_one = [&](std::size_t index, kb::KnowledgeBase& kb_ref) {
      const ProgramSpec& program = suite.programs[index];
      ProgramRow row;
      try {
        switch (method.kind) {
          case Method::Kind::kBaseline:
            row = evaluate_fixed_flags(
                program, {std::string(env::baseline_flag(method.level))},
                /*check_schema=*/false, environment, base.catalog());
            break;
          case Method::Kind::kFixedSequence:
            row = evaluate_fixed_flags(program, method.flags,
                                       /*check_schema=*/true, environment,
                                       base.catalog());
            break;
          case Method::Kind::kAgent:
            row = evaluate_agent(program, environment, kb_ref, options,
                                 allow_write_back, log_mutex,
                                 log_open ? &trajectory_log : nullptr);
            break;
        }
      } catch (const std::exception& e) {
        row.id = program.id;
        row.success = false;
        row.error = e.what();
      }
      report.per_program[index] = std::move(row);
    };

    if (workers == 1) {
      // A single writer may evolve the shared knowledge base.
      kb::KnowledgeBase working = base;
      for (std::size_t i = 0; i < suite.programs.size(); ++i) {
        evaluate_one(i, working);
      }
    } else {
      std::vector<std::thread> pool;
      std::atomic<std::size_t> next{0};
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          // Each worker reads its own copy; write-back is off.
          kb::KnowledgeBase copy = base;
          for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= suite.programs.size()) break;
            evaluate_one(i, copy);
          }
        });
      }
      for (std::thread& t : pool) t.join();
    }

    report.average_reduction = average_reduction(report.per_program);
    report.success_rate = success_rate(report);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::string report_to_json(const std::vector<SuiteReport>& reports) {
  ordered_json doc = ordered_json::array();
  for (const SuiteReport& report : reports) {
    ordered_json suite;
    suite["suite"] = report.suite;
    suite["method"] = report.method;
    suite["per_program"] = ordered_json::array();
    for (const ProgramRow& row : report.per_program) {
      suite["per_program"].push_back({{"id", row.id},
                                      {"ic_unopt", row.ic_unopt},
                                      {"ic_method", row.ic_method},
                                      {"reduction", row.reduction},
                                      {"success", row.success},
                                      {"error", row.error}});
    }
    suite["average_reduction"] = report.average_reduction;
    if (report.success_rate) {
      suite["success_rate"] = *report.success_rate;
    } else {
      suite["success_rate"] = nullptr;
    }
    doc.push_back(std::move(suite));
  }
  return doc.dump(2) + "\n";
}

std::vector<SuiteReport> report_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw IoError("report is not valid JSON: " + std::string(e.what()));
  }
  std::vector<SuiteReport> reports;
  for (const auto& s : doc) {
    SuiteReport report;
    report.suite = s.value("suite", std::string());
    report.method = s.value("method", std::string());
    for (const auto& p : s.value("per_program", json::array())) {
      ProgramRow row;
      row.id = p.value("id", std::string());
      row.ic_unopt = p.value("ic_unopt", 0LL);
      row.ic_method = p.value("ic_method", 0LL);
      row.reduction = p.value("reduction", 0.0);
      row.success = p.value("success", false);
      row.error = p.value("error", std::string());
      report.per_program.push_back(std::move(row));
    }
    report.average_reduction = s.value("average_reduction", 0.0);
    if (s.contains("success_rate") && s["success_rate"].is_number()) {
      report.success_rate = s["success_rate"].get<double>();
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

Comparison compare_report(const std::vector<SuiteReport>& a,
                          const std::vector<SuiteReport>& b) {
  std::map<std::string, const ProgramRow*> rows_b;
  std::map<std::string, std::string> suite_of;
  for (const SuiteReport& report : b) {
    for (const ProgramRow& row : report.per_program) {
      rows_b[row.id] = &row;
    }
  }
  std::set<std::string> ids_a;
  for (const SuiteReport& report : a) {
    for (const ProgramRow& row : report.per_program) {
      ids_a.insert(row.id);
      suite_of[row.id] = report.suite;
    }
  }
  if (ids_a.size() != rows_b.size()) {
    throw MismatchedProgramsError("reports cover different program sets");
  }
  for (const auto& [id, row] : rows_b) {
    if (!ids_a.count(id)) {
      throw MismatchedProgramsError("program only in second report: " + id);
    }
  }

  std::ostringstream table;
  std::ostringstream csv;
  const std::string method_a = a.empty() ? "a" : a.front().method;
  const std::string method_b = b.empty() ? "b" : b.front().method;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %-20s %12s %12s %10s\n", "suite",
                "program", method_a.substr(0, 12).c_str(),
                method_b.substr(0, 12).c_str(), "delta");
  table << line;
  csv << "suite,program," << method_a << "," << method_b << ",delta\n";

  for (const SuiteReport& report : a) {
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (const ProgramRow& row : report.per_program) {
      const ProgramRow& other = *rows_b.at(row.id);
      double delta = row.reduction - other.reduction;
      std::snprintf(line, sizeof(line), "%-12s %-20s %11.2f%% %11.2f%% %9.2f%%\n",
                    report.suite.substr(0, 12).c_str(),
                    row.id.substr(0, 20).c_str(), row.reduction * 100.0,
                    other.reduction * 100.0, delta * 100.0);
      table << line;
      csv << report.suite << "," << row.id << "," << row.reduction << ","
          << other.reduction << "," << delta << "\n";
      sum_a += row.reduction;
      sum_b += other.reduction;
    }
    std::size_t n = std::max<std::size_t>(1, report.per_program.size());
    std::snprintf(line, sizeof(line), "%-12s %-20s %11.2f%% %11.2f%% %9.2f%%\n",
                  report.suite.substr(0, 12).c_str(), "(average)",
                  sum_a / n * 100.0, sum_b / n * 100.0,
                  (sum_a - sum_b) / n * 100.0);
    table << line;
  }
  return {table.str(), csv.str()};
}

}  // namespace aware::harness
