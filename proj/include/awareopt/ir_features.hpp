// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_IR_FEATURES_HPP
#define AWAREOPT_IR_FEATURES_HPP

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "awareopt/errors.hpp"

namespace aware::ir {

// Opcodes that get a dedicated feature counter. Everything else parses as
// kOther with the raw mnemonic retained.
enum class Opcode {
  kAdd,
  kAlloca,
  kAnd,
  kAShr,
  kBitCast,
  kBr,
  kCall,
  kGetElementPtr,
  kICmp,
  kLoad,
  kLShr,
  kMul,
  kOr,
  kPhi,
  kRet,
  kSExt,
  kSelect,
  kShl,
  kStore,
  kSub,
  kTrunc,
  kXor,
  kZExt,
  kOther,
};

Opcode classify_opcode(std::string_view mnemonic);
bool is_terminator_opcode(std::string_view mnemonic);
bool is_binary_opcode(std::string_view mnemonic);
// UnaryInstruction in the LLVM class hierarchy: alloca, load, casts, fneg,
// freeze, extractvalue, va_arg.
bool is_unary_opcode(std::string_view mnemonic);
// Memory traffic: load, store, alloca, getelementptr, call, invoke, plus
// atomic read-modify-write forms.
bool is_memory_opcode(std::string_view mnemonic);

struct Operand {
  enum class Kind {
    kRegister,   // %name
    kGlobal,     // @name
    kConstInt,   // integer literal (true/false are width-1 ints)
    kConstOther  // float literal, null, undef, zeroinitializer, ...
  };

  Kind kind = Kind::kConstOther;
  unsigned bit_width = 0;   // ConstInt only; 0 when the type was not visible
  long long value = 0;      // ConstInt only; saturated on overflow
  std::string text;
};

struct IrInstruction {
  std::string opcode_name;  // lowercase mnemonic as written, e.g. "add"
  Opcode opcode = Opcode::kOther;
  std::vector<Operand> operands;
  std::vector<std::string> successor_labels;  // terminators only, in order
  bool is_terminator = false;
  bool is_unconditional_br = false;
  // Call-only details used by the returnInt feature.
  bool is_direct_call = false;
  bool call_returns_int = false;
  unsigned phi_incoming_count = 0;
};

struct IrBasicBlock {
  std::string label;
  std::vector<IrInstruction> instructions;
  std::set<std::string> predecessors;
  std::set<std::string> successors;
};

struct IrFunction {
  std::string name;
  bool is_external = false;  // declare without a body
  std::vector<IrBasicBlock> blocks;
};

struct IrModule {
  std::string source_name;
  std::vector<IrFunction> functions;
};

// Parses a textual LLVM IR module (the dialect subset needed for feature
// counting; LLVM >= 10). Unrecognized but well-formed instructions are
// retained as opaque kOther instructions, never dropped. Throws ParseError
// for structurally invalid input: unterminated function body, non-empty
// block without a terminator.
IrModule parse_ir(std::string_view ir_text,
                  std::string source_name = "<memory>");

// ---------------------------------------------------------------------------
// AutoPhase features
// ---------------------------------------------------------------------------

// Index constants for the 56-entry vector, in canonical order.
enum FeatureIndex : std::size_t {
  kBBNumArgsHi = 0,
  kBBNumArgsLo = 1,
  kOnePred = 2,
  kOnePredOneSuc = 3,
  kOnePredTwoSuc = 4,
  kOneSuccessor = 5,
  kTwoPred = 6,
  kTwoPredOneSuc = 7,
  kTwoEach = 8,
  kTwoSuccessor = 9,
  kMorePreds = 10,
  kBB03Phi = 11,
  kBBHiPhi = 12,
  kBBNoPhi = 13,
  kBeginPhi = 14,
  kBranchCount = 15,
  kReturnInt = 16,
  kCriticalCount = 17,
  kNumEdges = 18,
  kConst32Bit = 19,
  kConst64Bit = 20,
  kNumConstZeroes = 21,
  kNumConstOnes = 22,
  kUncondBranches = 23,
  kBinaryConstArg = 24,
  kNumAShrInst = 25,
  kNumAddInst = 26,
  kNumAllocaInst = 27,
  kNumAndInst = 28,
  kBlockMid = 29,
  kBlockLow = 30,
  kNumBitCastInst = 31,
  kNumBrInst = 32,
  kNumCallInst = 33,
  kNumGetElementPtrInst = 34,
  kNumICmpInst = 35,
  kNumLShrInst = 36,
  kNumLoadInst = 37,
  kNumMulInst = 38,
  kNumOrInst = 39,
  kNumPHIInst = 40,
  kNumRetInst = 41,
  kNumSExtInst = 42,
  kNumSelectInst = 43,
  kNumShlInst = 44,
  kNumStoreInst = 45,
  kNumSubInst = 46,
  kNumTruncInst = 47,
  kNumXorInst = 48,
  kNumZExtInst = 49,
  kTotalBlocks = 50,
  kTotalInsts = 51,
  kTotalMemInst = 52,
  kTotalFuncs = 53,
  kArgsPhi = 54,
  kTestUnary = 55,
};

inline constexpr std::size_t kFeatureCount = 56;

// Canonical key strings, position = feature index.
const std::array<std::string_view, kFeatureCount>& feature_keys();

// Human-readable description of one feature.
std::string_view feature_description(std::size_t index);

struct FeatureVector {
  std::array<std::uint64_t, kFeatureCount> counts{};

  std::uint64_t& operator[](std::size_t i) { return counts[i]; }
  std::uint64_t operator[](std::size_t i) const { return counts[i]; }
  bool operator==(const FeatureVector&) const = default;
};

// Computes all 56 counters for a parsed module. Pure and deterministic.
FeatureVector extract_features(const IrModule& module);

// Flat {"key": count, ...} JSON text, keys in index order, byte-stable.
std::string serialize_features(const FeatureVector& fv);

// Inverse of serialize_features. Accepts any key order but requires all 56
// canonical keys with non-negative integer values. Throws aware::Error.
FeatureVector deserialize_features(std::string_view json_text);

}  // namespace aware::ir

#endif  // AWAREOPT_IR_FEATURES_HPP
