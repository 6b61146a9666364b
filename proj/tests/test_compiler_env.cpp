// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>

#include "awareopt/compiler_env.hpp"
#include "awareopt/ir_features.hpp"
#include "subprocess.hpp"
#include "support/fixtures.hpp"

using namespace aware;
using namespace aware::env;

namespace {

// Environment with no opt binary, regardless of what the host has.
CompilerEnv offline_env(const std::filesystem::path& workdir,
                        ProgramRegistry registry = {}) {
  CompilerConfig cfg;
  cfg.opt_binary = std::nullopt;
  cfg.workdir = workdir;
  return CompilerEnv(std::move(cfg), std::move(registry));
}

}  // namespace

TEST_CASE("run_subprocess: captures output, exit codes, timeouts") {
  SubprocessResult echo =
      run_subprocess({"/bin/echo", "hello"}, std::chrono::milliseconds(5000));
  CHECK(echo.exit_code == 0);
  CHECK(echo.out == "hello\n");
  CHECK_FALSE(echo.timed_out);

  SubprocessResult fail =
      run_subprocess({"/bin/false"}, std::chrono::milliseconds(5000));
  CHECK(fail.exit_code == 1);

  SubprocessResult missing =
      run_subprocess({"/no/such/binary"}, std::chrono::milliseconds(5000));
  CHECK(missing.exit_code == 127);

  SubprocessResult slow =
      run_subprocess({"/bin/sleep", "5"}, std::chrono::milliseconds(100));
  CHECK(slow.timed_out);
}

TEST_CASE("finish_ratios: formulas and zero-division guards") {
  InstrCountResult r;
  r.ic_unopt = 1000;
  r.ic_after = 800;
  r.ic_oz = 900;
  finish_ratios(r);
  CHECK(r.delta_ic == doctest::Approx(0.2));
  CHECK(r.improvement_over_oz == doctest::Approx((900.0 - 800.0) / 900.0));
  CHECK_FALSE(r.degenerate);

  InstrCountResult zero;
  zero.ic_unopt = 0;
  zero.ic_after = 5;
  zero.ic_oz = 0;
  finish_ratios(zero);
  CHECK(zero.delta_ic == 0.0);
  CHECK(zero.improvement_over_oz == 0.0);
  CHECK(zero.degenerate);
}

TEST_CASE("ProgramRegistry: resolve and unknown ids") {
  ProgramRegistry registry;
  registry.add("p1", "/tmp/p1.ll");
  CHECK(registry.resolve("p1") == "/tmp/p1.ll");
  CHECK(registry.contains("p1"));
  CHECK_FALSE(registry.contains("p2"));
  CHECK_THROWS_AS(registry.resolve("p2"), UnknownProgramError);
}

TEST_CASE("count_instructions: parser fallback without opt") {
  testing::TempDir dir;
  auto single = dir.write("one.ll",
                          "define i32 @f() {\nentry:\n  ret i32 0\n}\n");
  auto multi = dir.write("multi.ll", testing::tiny_ir());
  CompilerEnv environment = offline_env(dir.path / "work");
  CHECK(environment.count_instructions(single) == 1);

  // Fallback total equals the feature extractor's TotalInsts.
  long long expected =
      static_cast<long long>(testing::tiny_features()[ir::kTotalInsts]);
  CHECK(environment.count_instructions(multi) == expected);

  CHECK_THROWS_AS(environment.count_instructions(dir.path / "missing.ll"),
                  CompileError);
  auto bc = dir.write("prog.bc", "BC\xc0\xde");
  CHECK_THROWS_AS(environment.count_instructions(bc), CompileError);
}

TEST_CASE("apply_passes and instrcount degrade cleanly without opt") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", testing::tiny_ir());
  ProgramRegistry registry;
  registry.add("p", file);
  CompilerEnv environment = offline_env(dir.path / "work", registry);

  CHECK_THROWS_AS(environment.apply_passes(file, {"--dce"}), CompileError);

  InstrCountResult result = environment.instrcount("p", {"--dce"});
  CHECK(result.status == EnvStatus::kCompileError);
  CHECK_FALSE(result.stderr_excerpt.empty());
  CHECK_THROWS_AS(environment.instrcount("ghost", {}), UnknownProgramError);
}

TEST_CASE("file_digest: deterministic and content-sensitive") {
  testing::TempDir dir;
  auto a = dir.write("a.ll", "define void @f() {\nentry:\n  ret void\n}\n");
  auto b = dir.write("b.ll", "define void @g() {\nentry:\n  ret void\n}\n");
  CHECK(file_digest(a) == file_digest(a));
  CHECK(file_digest(a) != file_digest(b));
}

TEST_CASE("ScriptedEnv: table lookups and ratio derivation") {
  env::ScriptedEnv environment = testing::scripted_env_for(
      "prog", 1000, 900, {{{"--gvn", "--dse"}, 800}});

  InstrCountResult hit = environment.instrcount("prog", {"--gvn", "--dse"});
  CHECK(hit.status == EnvStatus::kSuccess);
  CHECK(hit.delta_ic == doctest::Approx(0.2));
  CHECK(hit.improvement_over_oz == doctest::Approx((900.0 - 800.0) / 900.0));

  InstrCountResult oz = environment.instrcount("prog", {"-Oz"});
  CHECK(oz.improvement_over_oz == 0.0);

  InstrCountResult unknown_flags =
      environment.instrcount("prog", {"--whatever"});
  CHECK(unknown_flags.status == EnvStatus::kCompileError);

  CHECK_THROWS_AS(environment.instrcount("ghost", {}), UnknownProgramError);
}

// The remaining paths need a real opt; they run whenever one is on PATH or
// named by AWARE_OPT_BIN, and are otherwise skipped.
TEST_CASE("opt integration: identity, dce, baselines" *
          doctest::skip(!make_config().opt_binary.has_value())) {
  testing::TempDir dir;
  CompilerConfig cfg = make_config({}, dir.path / "work");
  REQUIRE(cfg.opt_binary.has_value());

  auto file = dir.write("p.ll", testing::tiny_ir());
  ProgramRegistry registry;
  registry.add("p", file);
  CompilerEnv environment(cfg, registry);

  long long base_count = environment.count_instructions(file);
  CHECK(base_count ==
        static_cast<long long>(testing::tiny_features()[ir::kTotalInsts]));

  // Identity pipeline does not change the count.
  auto out = environment.apply_passes(file, {});
  CHECK(environment.count_instructions(out) == base_count);

  // A trivially dead instruction disappears under --dce.
  auto dead = dir.write("dead.ll",
                        "define i32 @f(i32 %a) {\n"
                        "entry:\n"
                        "  %unused = add i32 %a, 41\n"
                        "  ret i32 %a\n"
                        "}\n");
  long long before = environment.count_instructions(dead);
  auto optimized = environment.apply_passes(dead, {"--dce"});
  CHECK(environment.count_instructions(optimized) <= before - 1);

  CHECK_THROWS_AS(environment.apply_passes(file, {"--not-a-pass"}),
                  CompileError);

  // Baselines cache and stay non-negative.
  for (BaselineLevel level : {BaselineLevel::kO1, BaselineLevel::kO2,
                              BaselineLevel::kO3, BaselineLevel::kOz}) {
    long long first = environment.run_baseline(file, level);
    CHECK(first >= 0);
    CHECK(environment.run_baseline(file, level) == first);
  }

  InstrCountResult oz_self = environment.instrcount("p", {"-Oz"});
  CHECK(oz_self.status == EnvStatus::kSuccess);
  CHECK(oz_self.improvement_over_oz == 0.0);
}
