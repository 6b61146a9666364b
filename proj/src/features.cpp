// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <map>

#include <json.hpp>

#include "awareopt/ir_features.hpp"

namespace aware::ir {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kKeys = {
    "BBNumArgsHi",
    "BBNumArgsLo",
    "onePred",
    "onePredOneSuc",
    "onePredTwoSuc",
    "oneSuccessor",
    "twoPred",
    "twoPredOneSuc",
    "twoEach",
    "twoSuccessor",
    "morePreds",
    "BB03Phi",
    "BBHiPhi",
    "BBNoPhi",
    "BeginPhi",
    "BranchCount",
    "returnInt",
    "CriticalCount",
    "NumEdges",
    "const32Bit",
    "const64Bit",
    "numConstZeroes",
    "numConstOnes",
    "UncondBranches",
    "binaryConstArg",
    "NumAShrInst",
    "NumAddInst",
    "NumAllocaInst",
    "NumAndInst",
    "BlockMid",
    "BlockLow",
    "NumBitCastInst",
    "NumBrInst",
    "NumCallInst",
    "NumGetElementPtrInst",
    "NumICmpInst",
    "NumLShrInst",
    "NumLoadInst",
    "NumMulInst",
    "NumOrInst",
    "NumPHIInst",
    "NumRetInst",
    "NumSExtInst",
    "NumSelectInst",
    "NumShlInst",
    "NumStoreInst",
    "NumSubInst",
    "NumTruncInst",
    "NumXorInst",
    "NumZExtInst",
    "TotalBlocks",
    "TotalInsts",
    "TotalMemInst",
    "TotalFuncs",
    "ArgsPhi",
    "testUnary",
};

constexpr std::array<std::string_view, kFeatureCount> kDescriptions = {
    "Basic blocks whose total phi args exceed 5",
    "Basic blocks with total phi args in [1,5]",
    "Basic blocks with 1 predecessor",
    "Basic blocks with 1 predecessor and 1 successor",
    "Basic blocks with 1 predecessor and 2 successors",
    "Basic blocks with 1 successor",
    "Basic blocks with 2 predecessors",
    "Basic blocks with 2 predecessors and 1 successor",
    "Basic blocks with 2 predecessors and 2 successors",
    "Basic blocks with 2 successors",
    "Basic blocks with more than 2 predecessors",
    "Basic blocks with phi node count in (0,3]",
    "Basic blocks with more than 3 phi nodes",
    "Basic blocks with no phi nodes",
    "Basic blocks whose first instruction is a phi",
    "Branch instructions",
    "Direct calls returning an integer",
    "Critical CFG edges",
    "CFG edges",
    "Occurrences of 32-bit integer constants",
    "Occurrences of 64-bit integer constants",
    "Occurrences of constant 0",
    "Occurrences of constant 1",
    "Unconditional branches",
    "Binary operations with a constant operand",
    "AShr instructions",
    "Add instructions",
    "Alloca instructions",
    "And instructions",
    "Basic blocks with instruction count in [15,500]",
    "Basic blocks with instruction count below 15",
    "BitCast instructions",
    "Br instructions",
    "Call instructions",
    "GetElementPtr instructions",
    "ICmp instructions",
    "LShr instructions",
    "Load instructions",
    "Mul instructions",
    "Or instructions",
    "PHI instructions",
    "Ret instructions",
    "SExt instructions",
    "Select instructions",
    "Shl instructions",
    "Store instructions",
    "Sub instructions",
    "Trunc instructions",
    "Xor instructions",
    "ZExt instructions",
    "Basic blocks",
    "Instructions of all types",
    "Memory instructions",
    "Non-external functions",
    "Total arguments to phi nodes",
    "Unary instructions",
};

void count_block(const IrBasicBlock& block, FeatureVector& fv) {
  fv[kTotalBlocks] += 1;

  std::size_t preds = block.predecessors.size();
  std::size_t succs = block.successors.size();
  fv[kNumEdges] += succs;
  if (succs == 1) fv[kOneSuccessor] += 1;
  if (succs == 2) fv[kTwoSuccessor] += 1;
  if (preds == 1) fv[kOnePred] += 1;
  if (preds == 2) fv[kTwoPred] += 1;
  if (preds > 2) fv[kMorePreds] += 1;
  if (preds == 1 && succs == 1) fv[kOnePredOneSuc] += 1;
  if (preds == 1 && succs == 2) fv[kOnePredTwoSuc] += 1;
  if (preds == 2 && succs == 1) fv[kTwoPredOneSuc] += 1;
  if (preds == 2 && succs == 2) fv[kTwoEach] += 1;

  std::uint64_t phi_count = 0;
  std::uint64_t block_phi_args = 0;
  bool first = true;
  for (const IrInstruction& inst : block.instructions) {
    fv[kTotalInsts] += 1;
    if (is_memory_opcode(inst.opcode_name)) fv[kTotalMemInst] += 1;
    if (is_unary_opcode(inst.opcode_name)) fv[kTestUnary] += 1;

    switch (inst.opcode) {
      case Opcode::kAShr: fv[kNumAShrInst] += 1; break;
      case Opcode::kAdd: fv[kNumAddInst] += 1; break;
      case Opcode::kAlloca: fv[kNumAllocaInst] += 1; break;
      case Opcode::kAnd: fv[kNumAndInst] += 1; break;
      case Opcode::kBitCast: fv[kNumBitCastInst] += 1; break;
      case Opcode::kBr: fv[kNumBrInst] += 1; break;
      case Opcode::kCall: fv[kNumCallInst] += 1; break;
      case Opcode::kGetElementPtr: fv[kNumGetElementPtrInst] += 1; break;
      case Opcode::kICmp: fv[kNumICmpInst] += 1; break;
      case Opcode::kLShr: fv[kNumLShrInst] += 1; break;
      case Opcode::kLoad: fv[kNumLoadInst] += 1; break;
      case Opcode::kMul: fv[kNumMulInst] += 1; break;
      case Opcode::kOr: fv[kNumOrInst] += 1; break;
      case Opcode::kPhi: fv[kNumPHIInst] += 1; break;
      case Opcode::kRet: fv[kNumRetInst] += 1; break;
      case Opcode::kSExt: fv[kNumSExtInst] += 1; break;
      case Opcode::kSelect: fv[kNumSelectInst] += 1; break;
      case Opcode::kShl: fv[kNumShlInst] += 1; break;
      case Opcode::kStore: fv[kNumStoreInst] += 1; break;
      case Opcode::kSub: fv[kNumSubInst] += 1; break;
      case Opcode::kTrunc: fv[kNumTruncInst] += 1; break;
      case Opcode::kXor: fv[kNumXorInst] += 1; break;
      case Opcode::kZExt: fv[kNumZExtInst] += 1; break;
      case Opcode::kOther: break;
    }

    if (inst.opcode == Opcode::kBr) {
      fv[kBranchCount] += 1;
      if (inst.is_unconditional_br) fv[kUncondBranches] += 1;
    }
    if (inst.opcode == Opcode::kCall && inst.is_direct_call &&
        inst.call_returns_int) {
      fv[kReturnInt] += 1;
    }
    if (inst.opcode == Opcode::kPhi) {
      phi_count += 1;
      fv[kArgsPhi] += inst.phi_incoming_count;
      block_phi_args += inst.phi_incoming_count;
      if (first) fv[kBeginPhi] += 1;
    }

    for (const Operand& operand : inst.operands) {
      if (operand.kind != Operand::Kind::kConstInt) continue;
      if (operand.bit_width == 32) fv[kConst32Bit] += 1;
      if (operand.bit_width == 64) fv[kConst64Bit] += 1;
      if (operand.value == 0) fv[kNumConstZeroes] += 1;
      if (operand.value == 1) fv[kNumConstOnes] += 1;
    }
    if (is_binary_opcode(inst.opcode_name)) {
      bool has_const_arg = false;
      for (const Operand& operand : inst.operands) {
        if (operand.kind != Operand::Kind::kRegister) has_const_arg = true;
      }
      if (has_const_arg) fv[kBinaryConstArg] += 1;
    }
    first = false;
  }

  if (phi_count == 0) fv[kBBNoPhi] += 1;
  else if (phi_count <= 3) fv[kBB03Phi] += 1;
  else fv[kBBHiPhi] += 1;
  if (block_phi_args > 5) fv[kBBNumArgsHi] += 1;
  else if (block_phi_args >= 1) fv[kBBNumArgsLo] += 1;

  std::size_t inst_count = block.instructions.size();
  if (inst_count < 15) fv[kBlockLow] += 1;
  else if (inst_count <= 500) fv[kBlockMid] += 1;
}

}  // namespace

const std::array<std::string_view, kFeatureCount>& feature_keys() {
  return kKeys;
}

std::string_view feature_description(std::size_t index) {
  return kDescriptions.at(index);
}

FeatureVector extract_features(const IrModule& module) {
  FeatureVector fv;
  for (const IrFunction& fn : module.functions) {
    if (!fn.is_external) fv[kTotalFuncs] += 1;
    std::map<std::string, const IrBasicBlock*> by_label;
    for (const IrBasicBlock& block : fn.blocks) by_label[block.label] = &block;
    for (const IrBasicBlock& block : fn.blocks) {
      count_block(block, fv);
      // An edge is critical when its source has several successors and its
      // target has several predecessors.
      if (block.successors.size() > 1) {
        for (const std::string& succ : block.successors) {
          auto it = by_label.find(succ);
          if (it != by_label.end() && it->second->predecessors.size() > 1) {
            fv[kCriticalCount] += 1;
          }
        }
      }
    }
  }
  return fv;
}

std::string serialize_features(const FeatureVector& fv) {
  std::string out = "{";
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (i != 0) out += ", ";
    out += '"';
    out += kKeys[i];
    out += "\": ";
    out += std::to_string(fv[i]);
  }
  out += "}";
  return out;
}

FeatureVector deserialize_features(std::string_view json_text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid feature JSON: ") + e.what());
  }
  if (!parsed.is_object()) throw Error("feature JSON must be an object");
  FeatureVector fv;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    std::string key(kKeys[i]);
    if (!parsed.contains(key)) throw Error("missing feature key: " + key);
    const auto& value = parsed[key];
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
      throw Error("feature " + key + " must be a non-negative integer");
    }
    fv[i] = value.get<std::uint64_t>();
  }
  return fv;
}

}  // namespace aware::ir
