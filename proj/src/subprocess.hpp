// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_SRC_SUBPROCESS_HPP
#define AWAREOPT_SRC_SUBPROCESS_HPP

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace aware::env {

struct SubprocessResult {
  int exit_code = -1;      // negative signal number when killed
  bool timed_out = false;
  std::string out;
  std::string err;
};

// Runs argv[0] with the given arguments, capturing stdout/stderr (capped at
// 64 KiB each). The child is killed when the deadline passes. spawn_error is
// reported as exit_code 127 with a message in err.
SubprocessResult run_subprocess(const std::vector<std::string>& argv,
                                std::chrono::milliseconds timeout,
                                const std::filesystem::path& cwd = {});

}  // namespace aware::env

#endif  // AWAREOPT_SRC_SUBPROCESS_HPP
