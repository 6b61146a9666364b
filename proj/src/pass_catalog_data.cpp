// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// The 125-action optimization space: 124 LLVM 10.0.0 opt transformation
// passes plus -Oz, indexed as the agent sees them.

#include "awareopt/pass_space.hpp"

namespace aware::pass {

namespace {

struct RawPass {
  const char* name;
  const char* semantics;
};

constexpr RawPass kRawPasses[] = {
    {"add-discriminators", "Add DWARF discriminators to distinguish code on the same source line"},
    {"adce", "Aggressive dead code elimination assuming instructions dead until proven live"},
    {"aggressive-instcombine", "Expensive instruction-combining patterns such as wide bit manipulations"},
    {"alignment-from-assumptions", "Derive pointer alignment facts from llvm.assume calls"},
    {"always-inline", "Inline functions marked alwaysinline"},
    {"argpromotion", "Promote by-reference arguments into scalar arguments"},
    {"attributor", "Interprocedural attribute deduction fixpoint"},
    {"barrier", "Pass-manager barrier separating module pass phases"},
    {"bdce", "Bit-tracking dead code elimination of dead bits and instructions"},
    {"break-crit-edges", "Split critical CFG edges with dedicated blocks"},
    {"simplifycfg", "Simplify the CFG: merge blocks, fold branches, remove unreachable code"},
    {"callsite-splitting", "Split call sites whose arguments are conditionally known"},
    {"called-value-propagation", "Propagate possible callee sets to indirect call sites"},
    {"canonicalize-aliases", "Rewrite aliases into their canonical aliasee form"},
    {"consthoist", "Hoist expensive constant materialization code"},
    {"constmerge", "Merge duplicate global constants"},
    {"constprop", "Fold instructions whose operands are all constants"},
    {"coro-cleanup", "Lower remaining coroutine intrinsics after splitting"},
    {"coro-early", "Lower early-stage coroutine intrinsics"},
    {"coro-elide", "Remove coroutine heap allocations proven not to escape"},
    {"coro-split", "Split coroutines into ramp, resume, and destroy parts"},
    {"correlated-propagation", "Propagate values using correlated branch conditions"},
    {"cross-dso-cfi", "Export control-flow-integrity checks across DSO boundaries"},
    {"deadargelim", "Remove dead arguments and return values of internal functions"},
    {"dce", "Dead code elimination of trivially dead instructions"},
    {"die", "Dead instruction elimination in a single sweep"},
    {"dse", "Dead store elimination"},
    {"reg2mem", "Demote SSA registers to stack memory slots"},
    {"div-rem-pairs", "Combine matching division/remainder pairs"},
    {"early-cse-memssa", "Early common subexpression elimination backed by MemorySSA"},
    {"early-cse", "Early common subexpression elimination over a dominator walk"},
    {"elim-avail-extern", "Convert available_externally definitions into declarations"},
    {"ee-instrument", "Instrument function entry and exit before inlining"},
    {"flattencfg", "Flatten the CFG by merging conditional blocks"},
    {"float2int", "Demote floating-point operations to equivalent integer ones"},
    {"forceattrs", "Force-set function attributes given on the command line"},
    {"inline", "Function integration driven by the inline cost model"},
    {"insert-gcov-profiling", "Insert gcov-style coverage instrumentation"},
    {"gvn-hoist", "Hoist identical expressions out of successors using GVN"},
    {"gvn", "Global value numbering; eliminates fully and partially redundant computations"},
    {"globaldce", "Remove unreferenced global values"},
    {"globalopt", "Transform globals: localize, shrink, and delete where possible"},
    {"globalsplit", "Split global structs whose elements have disjoint uses"},
    {"guard-widening", "Combine adjacent guard intrinsics into wider guards"},
    {"hotcoldsplit", "Outline cold regions into separate functions"},
    {"ipconstprop", "Interprocedural constant propagation of call arguments"},
    {"ipsccp", "Interprocedural sparse conditional constant propagation"},
    {"indvars", "Canonicalize loop induction variables"},
    {"irce", "Inductive range check elimination"},
    {"infer-address-spaces", "Infer concrete address spaces from generic pointers"},
    {"inferattrs", "Infer attributes of well-known library functions"},
    {"inject-tli-mappings", "Inject vector-library mappings for scalar math calls"},
    {"instsimplify", "Remove instructions that simplify away without creating new ones"},
    {"instcombine", "Combine instructions into fewer, canonical forms"},
    {"instnamer", "Assign names to anonymous instructions and values"},
    {"jump-threading", "Thread jumps across blocks with predictable outcomes"},
    {"lcssa", "Rewrite loops into loop-closed SSA form"},
    {"licm", "Loop-invariant code motion out of loop bodies"},
    {"libcalls-shrinkwrap", "Guard library calls against their no-op domains"},
    {"load-store-vectorizer", "Vectorize adjacent loads and stores"},
    {"loop-data-prefetch", "Insert software prefetches for strided loop accesses"},
    {"loop-deletion", "Delete loops with no observable effects"},
    {"loop-distribute", "Distribute loops to isolate vectorizable parts"},
    {"loop-fusion", "Fuse adjacent compatible loops"},
    {"loop-guard-widening", "Guard widening scoped to individual loops"},
    {"loop-idiom", "Replace loop idioms with memset/memcpy intrinsics"},
    {"loop-instsimplify", "Instruction simplification restricted to loop bodies"},
    {"loop-interchange", "Interchange nested loops to improve locality"},
    {"loop-load-elim", "Eliminate loads forwarded across loop iterations"},
    {"loop-predication", "Turn loop-variant guards into loop-invariant ones"},
    {"loop-reroll", "Re-roll manually unrolled loops"},
    {"loop-rotate", "Rotate loops into do-while form"},
    {"loop-simplifycfg", "CFG simplification scoped to loop bodies"},
    {"loop-simplify", "Canonicalize loops: preheaders, dedicated exits, single backedge"},
    {"loop-sink", "Sink loop-invariant code into cold loop paths"},
    {"loop-reduce", "Strength reduction of loop induction expressions"},
    {"loop-unroll-and-jam", "Unroll outer loops and fuse the resulting inner bodies"},
    {"loop-unroll", "Unroll loops by a computed or requested factor"},
    {"loop-unswitch", "Hoist loop-invariant conditions out of loops by versioning"},
    {"loop-vectorize", "Auto-vectorize loops into SIMD form"},
    {"loop-versioning-licm", "Version loops to enable LICM under runtime checks"},
    {"loop-versioning", "Create loop versions specialized by runtime assumptions"},
    {"loweratomic", "Lower atomic intrinsics to non-atomic equivalents"},
    {"lower-constant-intrinsics", "Fold llvm.is.constant and objectsize intrinsics"},
    {"lower-expect", "Lower llvm.expect hints into branch weight metadata"},
    {"lower-guard-intrinsic", "Lower guard intrinsics into explicit deopt branches"},
    {"lowerinvoke", "Rewrite invoke instructions into plain calls"},
    {"lower-matrix-intrinsics", "Lower matrix intrinsics to vector operations"},
    {"lowerswitch", "Rewrite switch instructions into branch trees"},
    {"lower-widenable-condition", "Lower widenable conditions to constant true"},
    {"memcpyopt", "Optimize memcpy/memset calls and forward stored values"},
    {"mergefunc", "Merge structurally identical functions"},
    {"mergeicmps", "Merge integer comparison chains into memcmp"},
    {"mldst-motion", "Merged load/store motion across diamond control flow"},
    {"sancov", "SanitizerCoverage instrumentation"},
    {"name-anon-globals", "Name anonymous globals deterministically"},
    {"nary-reassociate", "Reassociate n-ary expressions to expose redundancy"},
    {"newgvn", "Next-generation global value numbering framework"},
    {"pgo-memop-opt", "Specialize memory intrinsics using profiled sizes"},
    {"partial-inliner", "Inline hot prefixes of functions via outlining"},
    {"partially-inline-libcalls", "Inline fast paths of library calls such as sqrt"},
    {"post-inline-ee-instrument", "Entry/exit instrumentation after inlining"},
    {"functionattrs", "Deduce function attributes such as readnone and nounwind"},
    {"mem2reg", "Promote stack slots into SSA registers"},
    {"prune-eh", "Remove unused exception-handling information"},
    {"reassociate", "Reassociate commutative expressions into canonical rank order"},
    {"redundant-dbg-inst-elim", "Remove redundant debug intrinsics"},
    {"rpo-functionattrs", "Deduce function attributes over reverse post order"},
    {"rewrite-statepoints-for-gc", "Make GC relocations explicit at statepoints"},
    {"sccp", "Sparse conditional constant propagation"},
    {"slp-vectorizer", "Superword-level parallelism vectorization of straight-line code"},
    {"sroa", "Scalar replacement of aggregates; promotes allocas to SSA"},
    {"scalarizer", "Scalarize vector operations into scalar ones"},
    {"separate-const-offset-from-gep", "Split constant offsets out of GEPs to expose CSE"},
    {"simple-loop-unswitch", "Unswitch loops on guaranteed-invariant conditions"},
    {"sink", "Sink instructions closer to their uses"},
    {"speculative-execution", "Hoist instructions speculatively above branches"},
    {"slsr", "Straight-line strength reduction of related expressions"},
    {"strip-dead-prototypes", "Remove unused function declarations"},
    {"strip-debug-declare", "Remove llvm.dbg.declare intrinsics"},
    {"strip-nondebug", "Strip symbols except debug information"},
    {"strip", "Strip all names and debug symbols from the module"},
    {"tailcallelim", "Mark eligible calls as tail calls and eliminate tail recursion"},
    {"mergereturn", "Unify multiple function exits into a single return block"},
};

constexpr int kOzIndex = 124;

std::vector<PassDescriptor> production_passes() {
  std::vector<PassDescriptor> passes;
  passes.reserve(125);
  int index = 0;
  for (const RawPass& raw : kRawPasses) {
    passes.push_back({index++, std::string("--") + raw.name, raw.semantics,
                      {}, {}});
  }
  passes.push_back({kOzIndex, "-Oz",
                    "Standard size-minimizing pipeline; a complete expert strategy",
                    {}, {}});
  return passes;
}

}  // namespace

PassCatalog builtin_catalog() { return PassCatalog(production_passes()); }

PassCatalog builtin_curated_catalog() {
  std::vector<PassDescriptor> passes = production_passes();

  auto add_deps = [&](int index, std::initializer_list<int> deps) {
    passes[index].deps.insert(deps.begin(), deps.end());
  };
  auto add_conflict = [&](int a, int b) {
    passes[a].conflicts.insert(b);
    passes[b].conflicts.insert(a);
  };

  constexpr int kLcssa = 56;
  constexpr int kLoopSimplify = 73;

  // Loop transforms run on canonicalized loops in LCSSA form.
  add_deps(kLcssa, {kLoopSimplify});
  for (int loop_pass : {47 /*indvars*/, 57 /*licm*/, 61 /*loop-deletion*/,
                        65 /*loop-idiom*/, 67 /*loop-interchange*/,
                        70 /*loop-reroll*/, 76 /*loop-unroll-and-jam*/,
                        77 /*loop-unroll*/, 78 /*loop-unswitch*/,
                        114 /*simple-loop-unswitch*/}) {
    add_deps(loop_pass, {kLoopSimplify, kLcssa});
  }
  for (int loop_pass : {71 /*loop-rotate*/, 75 /*loop-reduce*/,
                        79 /*loop-vectorize*/, 81 /*loop-versioning*/}) {
    add_deps(loop_pass, {kLoopSimplify});
  }

  // Inverse transforms undo each other; redundant GVN engines double work.
  add_conflict(27 /*reg2mem*/, 103 /*mem2reg*/);
  add_conflict(39 /*gvn*/, 97 /*newgvn*/);

  // -Oz is a meta-level action, not a pass: it replaces, never mixes.
  for (int i = 0; i < kOzIndex; ++i) add_conflict(kOzIndex, i);

  return PassCatalog(std::move(passes));
}

}  // namespace aware::pass
