// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_COMPILER_ENV_HPP
#define AWAREOPT_COMPILER_ENV_HPP

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "awareopt/errors.hpp"

namespace aware::env {

// opt exited nonzero or produced unusable output.
class CompileError : public Error {
 public:
  using Error::Error;
};

// opt exceeded the configured time budget.
class TimeoutError : public Error {
 public:
  using Error::Error;
};

struct CompilerConfig {
  // Absent when no opt binary could be found; counting then falls back to
  // the builtin parser and pass application reports compile errors.
  std::optional<std::filesystem::path> opt_binary;
  std::chrono::milliseconds timeout{60000};
  std::filesystem::path workdir;
  std::string llvm_version_expected = "10";  // advisory only
};

// Resolution order: explicit path (must exist), else $AWARE_OPT_BIN, else
// `opt` on PATH. Throws CompileError when an explicitly requested binary is
// missing or not executable.
CompilerConfig make_config(
    std::optional<std::filesystem::path> opt_binary = std::nullopt,
    std::filesystem::path workdir = {});

enum class EnvStatus { kSuccess, kCompileError, kTimeout };
std::string_view status_name(EnvStatus status);

struct InstrCountResult {
  EnvStatus status = EnvStatus::kCompileError;
  long long ic_unopt = 0;
  long long ic_after = 0;
  long long ic_oz = 0;
  double delta_ic = 0.0;             // (ic_unopt - ic_after) / ic_unopt
  double improvement_over_oz = 0.0;  // (ic_oz - ic_after) / ic_oz
  bool degenerate = false;           // a zero denominator forced a 0 ratio
  std::string stderr_excerpt;
};

// Fills in the two ratios from the three counts, guarding zero divisions.
void finish_ratios(InstrCountResult& result);

enum class BaselineLevel { kO1, kO2, kO3, kOz };
std::string_view baseline_flag(BaselineLevel level);
std::optional<BaselineLevel> baseline_from_name(std::string_view name);

// Maps agent-visible program ids onto IR files.
class ProgramRegistry {
 public:
  void add(std::string id, std::filesystem::path ir_path);
  // Throws UnknownProgramError.
  const std::filesystem::path& resolve(const std::string& id) const;
  bool contains(const std::string& id) const;
  const std::map<std::string, std::filesystem::path>& programs() const {
    return programs_;
  }

 private:
  std::map<std::string, std::filesystem::path> programs_;
};

// The agent-facing environment surface: evaluate a pass sequence on a
// registered program. Implementations never throw for compile failures or
// timeouts; those are status values the agent must observe.
class Env {
 public:
  virtual ~Env() = default;
  virtual InstrCountResult instrcount(const std::string& program_id,
                                      const std::vector<std::string>& flags) = 0;
};

// Real environment: shells out to LLVM opt. Every invocation runs in its own
// scratch subdirectory under cfg.workdir; baseline and -Oz counts are cached
// by (file digest, level) behind a mutex, so concurrent episodes are safe.
class CompilerEnv : public Env {
 public:
  CompilerEnv(CompilerConfig cfg, ProgramRegistry registry);

  bool opt_available() const { return cfg_.opt_binary.has_value(); }
  const CompilerConfig& config() const { return cfg_; }
  const ProgramRegistry& registry() const { return registry_; }

  // Total static instruction count. Counts with opt when available (the
  // instcount statistic), otherwise with the builtin .ll parser. Throws
  // CompileError / TimeoutError.
  long long count_instructions(const std::filesystem::path& ir_path);

  // Runs `opt <flags> <ir> -S -o <out>` and returns the output path.
  // Throws CompileError (with a stderr excerpt) / TimeoutError.
  std::filesystem::path apply_passes(const std::filesystem::path& ir_path,
                                     const std::vector<std::string>& flags);

  // Instruction count after a standard pipeline, cached per (digest, level).
  long long run_baseline(const std::filesystem::path& ir_path,
                         BaselineLevel level);

  // The agent tool: ic_unopt, ic_after, cached ic_oz, and both ratios.
  // Throws UnknownProgramError for unregistered ids; compile failures and
  // timeouts land in the status field.
  InstrCountResult instrcount(const std::string& program_id,
                              const std::vector<std::string>& flags) override;

 private:
  std::filesystem::path fresh_scratch_dir();
  long long count_with_opt(const std::filesystem::path& ir_path);

  CompilerConfig cfg_;
  ProgramRegistry registry_;
  std::mutex cache_mutex_;
  std::map<std::pair<std::uint64_t, BaselineLevel>, long long> baseline_cache_;
  // 0 = unprobed, 1 = new pass manager syntax, 2 = legacy syntax.
  int counting_mode_ = 0;
};

// Table-driven environment for offline runs and tests: results are keyed by
// (program id, rendered flags). Lookups for unknown programs throw
// UnknownProgramError; unknown flag combinations report compile_error.
class ScriptedEnv : public Env {
 public:
  void register_program(const std::string& id);
  void set_result(const std::string& program_id,
                  const std::vector<std::string>& flags,
                  InstrCountResult result);
  // Convenience: derive a full result from the three counts.
  void set_counts(const std::string& program_id,
                  const std::vector<std::string>& flags, long long ic_unopt,
                  long long ic_after, long long ic_oz);

  InstrCountResult instrcount(const std::string& program_id,
                              const std::vector<std::string>& flags) override;

 private:
  static std::string key(const std::string& program_id,
                         const std::vector<std::string>& flags);
  std::map<std::string, InstrCountResult> results_;
  std::map<std::string, bool> known_programs_;
};

// FNV-1a digest of the file contents, used as the cache key.
std::uint64_t file_digest(const std::filesystem::path& path);

}  // namespace aware::env

#endif  // AWAREOPT_COMPILER_ENV_HPP
