// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_PASS_SPACE_HPP
#define AWAREOPT_PASS_SPACE_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "awareopt/errors.hpp"

namespace aware::pass {

// One optimization action: an opt flag plus its semantics text and the
// constraint sets used for sequence validation.
struct PassDescriptor {
  int index = 0;
  std::string flag;        // "--gvn"; the meta action renders "-Oz"
  std::string semantics;
  std::set<int> deps;      // passes that must precede this one
  std::set<int> conflicts; // passes that cannot co-occur with this one
};

// Immutable after construction; all invariants verified up front.
class PassCatalog {
 public:
  explicit PassCatalog(std::vector<PassDescriptor> passes);

  std::size_t size() const { return passes_.size(); }
  bool contains(int index) const {
    return index >= 0 && static_cast<std::size_t>(index) < passes_.size();
  }
  const PassDescriptor& at(int index) const;
  std::optional<int> index_of_flag(std::string_view flag) const;
  const std::vector<PassDescriptor>& passes() const { return passes_; }

 private:
  std::vector<PassDescriptor> passes_;
  std::map<std::string, int, std::less<>> by_flag_;
};

struct PassSequence {
  std::vector<int> items;

  bool operator==(const PassSequence&) const = default;
  std::size_t length() const { return items.size(); }
};

enum class ViolationKind {
  kDependencyViolation,
  kConflictViolation,
  kUnknownPass,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  // Sequence positions involved: for dependency violations, the dependent's
  // first position then the dependency's first position (-1 when absent);
  // for conflicts, both first positions in order; single position for
  // unknown passes.
  std::vector<int> positions;
  std::vector<int> passes;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

struct RepairResult {
  PassSequence sequence;
  std::vector<int> dropped;   // passes removed (conflict losers, unknowns)
  std::vector<int> inserted;  // dependencies spliced in
  bool reordered = false;
  bool is_subsequence_of_input = true;
};

// The 125-action production catalog (Appendix-style table, "--" flags,
// index 124 = -Oz). No dependency or conflict constraints: any sequence of
// known flags is valid, matching observed opt behavior.
PassCatalog builtin_catalog();

// Same actions with a curated non-trivial constraint table: loop passes
// require loop-simplify/lcssa, inverse pairs conflict, and -Oz conflicts
// with everything. Used for tests and as a template for custom tables.
PassCatalog builtin_curated_catalog();

// Loads a catalog from a JSON list of {index, flag, semantics, deps,
// conflicts}. Throws IoError / CatalogError.
PassCatalog load_catalog(const std::filesystem::path& path);

// Writes the same JSON shape load_catalog reads.
void save_catalog(const PassCatalog& catalog,
                  const std::filesystem::path& path);
std::string catalog_to_json(const PassCatalog& catalog);

// Checks dependency ordering (against first occurrences), conflict
// co-occurrence, and catalog membership. Enumerates every violation.
ValidationReport validate_sequence(const PassSequence& seq,
                                   const PassCatalog& catalog);

// Produces a valid sequence: drops the later member of each conflicting
// pair, splices missing dependencies in before their first dependent, and
// stable-topologically reorders if an ordering violation remains. Throws
// RepairImpossibleError when required dependencies conflict.
RepairResult repair_sequence(const PassSequence& seq,
                             const PassCatalog& catalog);

// Sequence <-> flag list, round-trip identity on valid sequences.
std::vector<std::string> render_flags(const PassSequence& seq,
                                      const PassCatalog& catalog);
PassSequence parse_flags(const std::vector<std::string>& flags,
                         const PassCatalog& catalog);

// Comma/space separated flag text -> flag list ("--gvn,--dse").
std::vector<std::string> split_flag_text(std::string_view text);

std::string report_to_json(const ValidationReport& report);

}  // namespace aware::pass

#endif  // AWAREOPT_PASS_SPACE_HPP
