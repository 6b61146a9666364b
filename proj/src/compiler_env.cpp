// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "awareopt/compiler_env.hpp"
#include "awareopt/ir_features.hpp"
#include "subprocess.hpp"

namespace aware::env {

namespace {

bool is_executable_file(const std::filesystem::path& path) {
  std::error_code ec;
  return std::filesystem::is_regular_file(path, ec) &&
         ::access(path.c_str(), X_OK) == 0;
}

std::optional<std::filesystem::path> find_on_path(const std::string& name) {
  const char* raw = std::getenv("PATH");
  if (!raw) return std::nullopt;
  std::stringstream stream(raw);
  std::string dir;
  while (std::getline(stream, dir, ':')) {
    if (dir.empty()) continue;
    std::filesystem::path candidate = std::filesystem::path(dir) / name;
    if (is_executable_file(candidate)) return candidate;
  }
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompileError("cannot read IR file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string excerpt(const std::string& text, std::size_t cap = 2000) {
  if (text.size() <= cap) return text;
  return text.substr(0, cap) + "...";
}

// Pulls "<N> instcount - Number of instructions (of all types)" out of the
// -stats report. Zero-valued statistics are omitted from the report, so an
// absent line with a successful exit means zero.
std::optional<long long> parse_instcount_stats(const std::string& stats_text) {
  std::stringstream stream(stats_text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.find("instcount") == std::string::npos) continue;
    if (line.find("Number of instructions (of all types)") ==
        std::string::npos) {
      continue;
    }
    std::stringstream fields(line);
    long long value = 0;
    if (fields >> value) return value;
  }
  return std::nullopt;
}

}  // namespace

CompilerConfig make_config(std::optional<std::filesystem::path> opt_binary,
                           std::filesystem::path workdir) {
  CompilerConfig cfg;
  if (opt_binary) {
    if (!is_executable_file(*opt_binary)) {
      throw CompileError("opt binary not executable: " + opt_binary->string());
    }
    cfg.opt_binary = std::move(opt_binary);
  } else if (const char* env_bin = std::getenv("AWARE_OPT_BIN")) {
    if (!is_executable_file(env_bin)) {
      throw CompileError(std::string("AWARE_OPT_BIN not executable: ") +
                         env_bin);
    }
    cfg.opt_binary = env_bin;
  } else {
    cfg.opt_binary = find_on_path("opt");
  }

  if (workdir.empty()) {
    workdir = std::filesystem::temp_directory_path() / "aware-opt-work";
  }
  std::filesystem::create_directories(workdir);
  cfg.workdir = std::move(workdir);
  return cfg;
}

std::string_view status_name(EnvStatus status) {
  switch (status) {
    case EnvStatus::kSuccess: return "success";
    case EnvStatus::kCompileError: return "compile_error";
    case EnvStatus::kTimeout: return "timeout";
  }
  return "?";
}

void finish_ratios(InstrCountResult& result) {
  if (result.ic_unopt > 0) {
    result.delta_ic = static_cast<double>(result.ic_unopt - result.ic_after) /
                      static_cast<double>(result.ic_unopt);
  } else {
    result.delta_ic = 0.0;
    result.degenerate = true;
  }
  if (result.ic_oz > 0) {
    result.improvement_over_oz =
        static_cast<double>(result.ic_oz - result.ic_after) /
        static_cast<double>(result.ic_oz);
  } else {
    result.improvement_over_oz = 0.0;
    result.degenerate = true;
  }
}

std::string_view baseline_flag(BaselineLevel level) {
  switch (level) {
    case BaselineLevel::kO1: return "-O1";
    case BaselineLevel::kO2: return "-O2";
    case BaselineLevel::kO3: return "-O3";
    case BaselineLevel::kOz: return "-Oz";
  }
  return "?";
}

std::optional<BaselineLevel> baseline_from_name(std::string_view name) {
  if (name == "o1" || name == "O1" || name == "-O1") return BaselineLevel::kO1;
  if (name == "o2" || name == "O2" || name == "-O2") return BaselineLevel::kO2;
  if (name == "o3" || name == "O3" || name == "-O3") return BaselineLevel::kO3;
  if (name == "oz" || name == "Oz" || name == "-Oz") return BaselineLevel::kOz;
  return std::nullopt;
}

void ProgramRegistry::add(std::string id, std::filesystem::path ir_path) {
  programs_[std::move(id)] = std::move(ir_path);
}

const std::filesystem::path& ProgramRegistry::resolve(
    const std::string& id) const {
  auto it = programs_.find(id);
  if (it == programs_.end()) {
    throw UnknownProgramError("program not registered: " + id);
  }
  return it->second;
}

bool ProgramRegistry::contains(const std::string& id) const {
  return programs_.count(id) > 0;
}

std::uint64_t file_digest(const std::filesystem::path& path) {
  std::string data = read_file(path);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

CompilerEnv::CompilerEnv(CompilerConfig cfg, ProgramRegistry registry)
    : cfg_(std::move(cfg)), registry_(std::move(registry)) {
  if (cfg_.opt_binary && !is_executable_file(*cfg_.opt_binary)) {
    throw CompileError("opt binary not executable: " +
                       cfg_.opt_binary->string());
  }
  std::filesystem::create_directories(cfg_.workdir);
}

std::filesystem::path CompilerEnv::fresh_scratch_dir() {
  static std::atomic<std::uint64_t> counter{0};
  std::filesystem::path dir =
      cfg_.workdir / ("run-" + std::to_string(::getpid()) + "-" +
                      std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

long long CompilerEnv::count_with_opt(const std::filesystem::path& ir_path) {
  // Probe which instcount spelling this opt accepts, once.
  const std::string opt = cfg_.opt_binary->string();
  std::vector<std::vector<std::string>> modes = {
      {opt, "-passes=instcount", "-stats", "-disable-output", ir_path.string()},
      {opt, "-enable-new-pm=0", "-instcount", "-stats", "-disable-output",
       ir_path.string()},
      {opt, "-instcount", "-stats", "-disable-output", ir_path.string()},
  };
  int first = counting_mode_ > 0 ? counting_mode_ - 1 : 0;
  for (int mode = first; mode < static_cast<int>(modes.size()); ++mode) {
    SubprocessResult run = run_subprocess(modes[static_cast<std::size_t>(mode)],
                                          cfg_.timeout);
    if (run.timed_out) {
      throw TimeoutError("opt instcount timed out on " + ir_path.string());
    }
    if (run.exit_code != 0) {
      if (counting_mode_ > 0) {
        throw CompileError("opt instcount failed: " + excerpt(run.err));
      }
      continue;  // try the next spelling
    }
    counting_mode_ = mode + 1;
    if (auto count = parse_instcount_stats(run.err)) return *count;
    return 0;  // stats omit zero-valued counters
  }
  throw CompileError("no usable opt instcount invocation for " +
                     ir_path.string());
}

long long CompilerEnv::count_instructions(
    const std::filesystem::path& ir_path) {
  if (!std::filesystem::exists(ir_path)) {
    throw CompileError("no such file: " + ir_path.string());
  }
  if (cfg_.opt_binary) return count_with_opt(ir_path);
  if (ir_path.extension() == ".bc") {
    throw CompileError("bitcode counting requires opt: " + ir_path.string());
  }
  ir::IrModule module = [&] {
    try {
      return ir::parse_ir(read_file(ir_path), ir_path.string());
    } catch (const ParseError& e) {
      throw CompileError(std::string("IR parse failed: ") + e.what());
    }
  }();
  long long total = 0;
  for (const ir::IrFunction& fn : module.functions) {
    for (const ir::IrBasicBlock& block : fn.blocks) {
      total += static_cast<long long>(block.instructions.size());
    }
  }
  return total;
}

std::filesystem::path CompilerEnv::apply_passes(
    const std::filesystem::path& ir_path,
    const std::vector<std::string>& flags) {
  if (!cfg_.opt_binary) {
    throw CompileError("pass application requires opt (none found; set "
                       "AWARE_OPT_BIN)");
  }
  if (!std::filesystem::exists(ir_path)) {
    throw CompileError("no such file: " + ir_path.string());
  }
  std::filesystem::path scratch = fresh_scratch_dir();
  std::filesystem::path out = scratch / "out.ll";
  std::vector<std::string> argv = {cfg_.opt_binary->string()};
  argv.insert(argv.end(), flags.begin(), flags.end());
  argv.push_back("-S");
  argv.push_back(std::filesystem::absolute(ir_path).string());
  argv.push_back("-o");
  argv.push_back(out.string());

  SubprocessResult run = run_subprocess(argv, cfg_.timeout, scratch);
  if (run.timed_out) {
    throw TimeoutError("opt timed out applying passes to " + ir_path.string());
  }
  if (run.exit_code != 0 || !std::filesystem::exists(out)) {
    throw CompileError("opt failed (exit " + std::to_string(run.exit_code) +
                       "): " + excerpt(run.err));
  }
  return out;
}

long long CompilerEnv::run_baseline(const std::filesystem::path& ir_path,
                                    BaselineLevel level) {
  std::uint64_t digest = file_digest(ir_path);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = baseline_cache_.find({digest, level});
    if (it != baseline_cache_.end()) return it->second;
  }
  std::filesystem::path out =
      apply_passes(ir_path, {std::string(baseline_flag(level))});
  long long count = count_instructions(out);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  baseline_cache_[{digest, level}] = count;
  return count;
}

InstrCountResult CompilerEnv::instrcount(const std::string& program_id,
                                         const std::vector<std::string>& flags) {
  const std::filesystem::path& ir_path = registry_.resolve(program_id);
  InstrCountResult result;
  try {
    result.ic_unopt = count_instructions(ir_path);
    result.ic_oz = run_baseline(ir_path, BaselineLevel::kOz);
    // Standard pipelines go through the baseline cache, keeping one source
    // of truth for their counts (and making -Oz self-comparison exact).
    std::optional<BaselineLevel> level =
        flags.size() == 1 ? baseline_from_name(flags[0]) : std::nullopt;
    if (level) {
      result.ic_after = run_baseline(ir_path, *level);
    } else {
      std::filesystem::path out = apply_passes(ir_path, flags);
      result.ic_after = count_instructions(out);
    }
    result.status = EnvStatus::kSuccess;
    finish_ratios(result);
  } catch (const TimeoutError& e) {
    result.status = EnvStatus::kTimeout;
    result.stderr_excerpt = e.what();
  } catch (const CompileError& e) {
    result.status = EnvStatus::kCompileError;
    result.stderr_excerpt = e.what();
  }
  return result;
}

void ScriptedEnv::register_program(const std::string& id) {
  known_programs_[id] = true;
}

std::string ScriptedEnv::key(const std::string& program_id,
                             const std::vector<std::string>& flags) {
  std::string joined = program_id + "|";
  for (const std::string& flag : flags) joined += flag + " ";
  return joined;
}

void ScriptedEnv::set_result(const std::string& program_id,
                             const std::vector<std::string>& flags,
                             InstrCountResult result) {
  known_programs_[program_id] = true;
  results_[key(program_id, flags)] = std::move(result);
}

void ScriptedEnv::set_counts(const std::string& program_id,
                             const std::vector<std::string>& flags,
                             long long ic_unopt, long long ic_after,
                             long long ic_oz) {
  InstrCountResult result;
  result.status = EnvStatus::kSuccess;
  result.ic_unopt = ic_unopt;
  result.ic_after = ic_after;
  result.ic_oz = ic_oz;
  finish_ratios(result);
  set_result(program_id, flags, std::move(result));
}

InstrCountResult ScriptedEnv::instrcount(const std::string& program_id,
                                         const std::vector<std::string>& flags) {
  if (!known_programs_.count(program_id)) {
    throw UnknownProgramError("program not registered: " + program_id);
  }
  auto it = results_.find(key(program_id, flags));
  if (it == results_.end()) {
    InstrCountResult result;
    result.status = EnvStatus::kCompileError;
    result.stderr_excerpt = "no scripted result for this flag combination";
    return result;
  }
  return it->second;
}

}  // namespace aware::env
