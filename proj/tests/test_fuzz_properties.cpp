// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// Randomized totality properties: the turn parser never throws and the IR
// parser either parses or raises ParseError, on arbitrarily mangled input.

#include <doctest.h>

#include <random>
#include <string>

#include "awareopt/agent.hpp"
#include "awareopt/ir_features.hpp"
#include "support/fixtures.hpp"

using namespace aware;

namespace {

std::string mutate(std::string text, std::mt19937& rng) {
  if (text.empty()) return text;
  std::uniform_int_distribution<int> op_dist(0, 3);
  std::uniform_int_distribution<std::size_t> pos_dist(0, text.size() - 1);
  static const char kAlphabet[] =
      "abcdefghijklmnopqrstuvwxyz0123456789%@<>[]{}(),=:*!#\"\n\t ";
  std::uniform_int_distribution<std::size_t> char_dist(
      0, sizeof(kAlphabet) - 2);
  int edits = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < edits && !text.empty(); ++i) {
    std::size_t at = pos_dist(rng) % text.size();
    switch (op_dist(rng)) {
      case 0:
        text.erase(at, 1);
        break;
      case 1:
        text.insert(at, 1, kAlphabet[char_dist(rng)]);
        break;
      case 2:
        text[at] = kAlphabet[char_dist(rng)];
        break;
      case 3: {
        std::size_t len = std::min<std::size_t>(text.size() - at, rng() % 20);
        text.erase(at, len);
        break;
      }
    }
  }
  return text;
}

}  // namespace

TEST_CASE("parse_ir: mangled input parses or raises ParseError, never worse") {
  std::mt19937 rng(20260808);
  const std::string bases[] = {
      testing::tiny_ir(),
      "define i32 @sw(i32 %v) {\n"
      "entry:\n"
      "  switch i32 %v, label %d [\n"
      "    i32 0, label %a\n"
      "  ]\n"
      "a:\n"
      "  br label %d\n"
      "d:\n"
      "  ret i32 %v\n"
      "}\n",
  };
  int parsed = 0;
  int rejected = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = mutate(bases[trial % 2], rng);
    try {
      ir::IrModule module = ir::parse_ir(text, "fuzz");
      ir::extract_features(module);  // must also be total
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    }
    // Any other exception type fails the test by escaping.
  }
  CHECK(parsed + rejected == 2000);
  CHECK(parsed > 0);
  CHECK(rejected > 0);
}

TEST_CASE("parse_turn: arbitrary tag soup never throws") {
  std::mt19937 rng(77);
  const std::string base =
      "<think>x</think>\n<tool_call>{\"name\": \"instrcount\", "
      "\"arguments\": {\"filename\": \"p\"}}</tool_call>\n"
      "<answer>[\"--gvn\"]</answer>";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = mutate(base, rng);
    agent::AgentTurn turn = agent::parse_turn(text);
    // Every block is one of the recognized kinds.
    for (const agent::Block& block : turn.blocks) {
      bool known = block.kind == agent::BlockKind::kThink ||
                   block.kind == agent::BlockKind::kToolCall ||
                   block.kind == agent::BlockKind::kAnswer;
      CHECK(known);
    }
  }
}

TEST_CASE("score_format is total over mangled transcripts") {
  std::mt19937 rng(99);
  const std::string base =
      "<think>a</think><answer>[\"--dse\"]</answer>";
  for (int trial = 0; trial < 500; ++trial) {
    agent::Trajectory t;
    t.turns.push_back(agent::parse_turn(mutate(base, rng)));
    int format = reward::score_format(t);
    CHECK(format >= 0);
    CHECK(format <= 1);
  }
}
