// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// Drives the opt subprocess plumbing against the fake_opt.sh emulator:
// argument construction, stats parsing, baseline caching, error and timeout
// propagation. The real-LLVM acceptance criterion stays gated on a genuine
// opt binary; these tests cover the machinery only.

#include <doctest.h>

#include <chrono>
#include <filesystem>

#include "awareopt/compiler_env.hpp"
#include "awareopt/ir_features.hpp"
#include "support/fixtures.hpp"

using namespace aware;
using namespace aware::env;

namespace {

// Nine two-space-indented instructions; the emulator "optimizes" by
// deleting the add/mul lines (three of them).
constexpr const char* kFakeFriendlyIr =
    "define i32 @f(i32 %a) {\n"
    "entry:\n"
    "  %x = add nsw i32 %a, 1\n"
    "  %y = mul nsw i32 %x, 2\n"
    "  %z = add nsw i32 %y, 3\n"
    "  %c = icmp sgt i32 %z, 10\n"
    "  br i1 %c, label %b1, label %b2\n"
    "b1:\n"
    "  br label %done\n"
    "b2:\n"
    "  br label %done\n"
    "done:\n"
    "  %r = phi i32 [ %y, %b1 ], [ 0, %b2 ]\n"
    "  ret i32 %r\n"
    "}\n";

std::filesystem::path fake_opt_path() {
  return std::filesystem::path(AWAREOPT_SOURCE_DIR) / "tests" / "support" /
         "fake_opt.sh";
}

CompilerEnv fake_env(const testing::TempDir& dir, ProgramRegistry registry) {
  CompilerConfig cfg = make_config(fake_opt_path(), dir.path / "work");
  return CompilerEnv(std::move(cfg), std::move(registry));
}

}  // namespace

TEST_CASE("make_config honors an explicit binary and rejects missing ones") {
  testing::TempDir dir;
  CompilerConfig cfg = make_config(fake_opt_path(), dir.path / "w");
  REQUIRE(cfg.opt_binary.has_value());
  CHECK(*cfg.opt_binary == fake_opt_path());
  CHECK_THROWS_AS(make_config(dir.path / "nonexistent-opt", dir.path / "w"),
                  CompileError);
}

TEST_CASE("fake opt: counting via the stats report matches the parser") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  CompilerEnv environment = fake_env(dir, {});
  long long via_stats = environment.count_instructions(file);

  ir::IrModule module = ir::parse_ir(kFakeFriendlyIr);
  long long via_parser = 0;
  for (const auto& fn : module.functions) {
    for (const auto& block : fn.blocks) {
      via_parser += static_cast<long long>(block.instructions.size());
    }
  }
  CHECK(via_stats == via_parser);
  CHECK(via_stats == 9);
}

TEST_CASE("fake opt: apply_passes, baselines, and instrcount ratios") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  ProgramRegistry registry;
  registry.add("p", file);
  CompilerEnv environment = fake_env(dir, registry);

  // Identity pipeline copies the module through.
  auto out = environment.apply_passes(file, {});
  CHECK(environment.count_instructions(out) == 9);

  // The emulated -Oz deletes the three add/mul lines.
  CHECK(environment.run_baseline(file, BaselineLevel::kOz) == 6);
  CHECK(environment.run_baseline(file, BaselineLevel::kOz) == 6);  // cached

  InstrCountResult self = environment.instrcount("p", {"-Oz"});
  CHECK(self.status == EnvStatus::kSuccess);
  CHECK(self.ic_unopt == 9);
  CHECK(self.ic_after == 6);
  CHECK(self.ic_oz == 6);
  CHECK(self.improvement_over_oz == 0.0);
  CHECK(self.delta_ic == doctest::Approx(3.0 / 9.0));

  InstrCountResult plain = environment.instrcount("p", {});
  CHECK(plain.ic_after == 9);
  CHECK(plain.improvement_over_oz == doctest::Approx((6.0 - 9.0) / 6.0));

  InstrCountResult bad = environment.instrcount("p", {"--not-a-pass"});
  CHECK(bad.status == EnvStatus::kCompileError);
  CHECK(bad.stderr_excerpt.find("not-a-pass") != std::string::npos);
}

TEST_CASE("fake opt: counting probe falls back to the legacy spelling") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  ::setenv("FAKE_OPT_LEGACY", "1", 1);
  CompilerEnv environment = fake_env(dir, {});
  long long count = environment.count_instructions(file);
  ::unsetenv("FAKE_OPT_LEGACY");
  CHECK(count == 9);
}

TEST_CASE("fake opt: rejected flags raise CompileError from apply_passes") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  CompilerEnv environment = fake_env(dir, {});
  CHECK_THROWS_AS(environment.apply_passes(file, {"--not-a-pass"}),
                  CompileError);
}

TEST_CASE("fake opt: slow invocations hit the timeout path") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  ProgramRegistry registry;
  registry.add("p", file);
  CompilerConfig cfg = make_config(fake_opt_path(), dir.path / "work");
  cfg.timeout = std::chrono::milliseconds(300);
  CompilerEnv environment(cfg, registry);

  // Counting succeeds fast; the sleeping flag trips the deadline.
  CHECK(environment.count_instructions(file) == 9);
  CHECK_THROWS_AS(environment.apply_passes(file, {"--fake-sleep"}),
                  TimeoutError);
  InstrCountResult result = environment.instrcount("p", {"--fake-sleep"});
  CHECK(result.status == EnvStatus::kTimeout);
}

TEST_CASE("fake opt: scratch directories stay inside the workdir") {
  testing::TempDir dir;
  auto file = dir.write("p.ll", kFakeFriendlyIr);
  CompilerEnv environment = fake_env(dir, {});
  auto out = environment.apply_passes(file, {});
  auto workdir = std::filesystem::weakly_canonical(dir.path / "work");
  auto produced = std::filesystem::weakly_canonical(out);
  CHECK(produced.string().rfind(workdir.string(), 0) == 0);
}
