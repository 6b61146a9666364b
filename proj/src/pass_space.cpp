// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "awareopt/pass_space.hpp"

namespace aware::pass {

namespace {

using nlohmann::ordered_json;

// First occurrence position of every pass present in the sequence,
// ignoring out-of-catalog indices.
std::map<int, int> first_positions(const PassSequence& seq,
                                   const PassCatalog& catalog) {
  std::map<int, int> first;
  for (std::size_t pos = 0; pos < seq.items.size(); ++pos) {
    int p = seq.items[pos];
    if (!catalog.contains(p)) continue;
    first.emplace(p, static_cast<int>(pos));
  }
  return first;
}

}  // namespace

PassCatalog::PassCatalog(std::vector<PassDescriptor> passes)
    : passes_(std::move(passes)) {
  std::sort(passes_.begin(), passes_.end(),
            [](const PassDescriptor& a, const PassDescriptor& b) {
              return a.index < b.index;
            });
  for (std::size_t i = 0; i < passes_.size(); ++i) {
    const PassDescriptor& p = passes_[i];
    if (p.index != static_cast<int>(i)) {
      throw CatalogError("pass indices must be unique and contiguous from 0; "
                         "saw index " + std::to_string(p.index) +
                         " at position " + std::to_string(i));
    }
    if (p.flag.empty()) {
      throw CatalogError("pass " + std::to_string(p.index) + " has no flag");
    }
    if (!by_flag_.emplace(p.flag, p.index).second) {
      throw CatalogError("duplicate flag: " + p.flag);
    }
    if (p.deps.count(p.index) || p.conflicts.count(p.index)) {
      throw CatalogError("pass " + p.flag + " depends on or conflicts with itself");
    }
  }
  // Referential integrity plus conflict symmetry.
  for (const PassDescriptor& p : passes_) {
    for (int d : p.deps) {
      if (!contains(d)) {
        throw CatalogError("pass " + p.flag + " depends on unknown index " +
                           std::to_string(d));
      }
    }
    for (int c : p.conflicts) {
      if (!contains(c)) {
        throw CatalogError("pass " + p.flag + " conflicts with unknown index " +
                           std::to_string(c));
      }
      if (!passes_[c].conflicts.count(p.index)) {
        throw CatalogError("asymmetric conflict between " + p.flag + " and " +
                           passes_[c].flag);
      }
    }
  }
  // The dependency graph must be acyclic.
  enum class Mark { kUnvisited, kInProgress, kDone };
  std::vector<Mark> marks(passes_.size(), Mark::kUnvisited);
  std::function<void(int)> visit = [&](int index) {
    if (marks[index] == Mark::kDone) return;
    if (marks[index] == Mark::kInProgress) {
      throw CatalogError("dependency cycle involving " + passes_[index].flag);
    }
    marks[index] = Mark::kInProgress;
    for (int d : passes_[index].deps) visit(d);
    marks[index] = Mark::kDone;
  };
  for (const PassDescriptor& p : passes_) visit(p.index);
}

const PassDescriptor& PassCatalog::at(int index) const {
  if (!contains(index)) {
    throw UnknownPassError("pass index " + std::to_string(index) +
                           " not in catalog");
  }
  return passes_[static_cast<std::size_t>(index)];
}

std::optional<int> PassCatalog::index_of_flag(std::string_view flag) const {
  auto it = by_flag_.find(flag);
  if (it == by_flag_.end()) return std::nullopt;
  return it->second;
}

PassCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file: " + path.string());
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CatalogError("catalog is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_array()) throw CatalogError("catalog must be a JSON list");
  std::vector<PassDescriptor> passes;
  passes.reserve(doc.size());
  for (const auto& entry : doc) {
    try {
      PassDescriptor p;
      p.index = entry.at("index").get<int>();
      p.flag = entry.at("flag").get<std::string>();
      p.semantics = entry.value("semantics", std::string());
      for (const auto& d : entry.value("deps", ordered_json::array()))
        p.deps.insert(d.get<int>());
      for (const auto& c : entry.value("conflicts", ordered_json::array()))
        p.conflicts.insert(c.get<int>());
      passes.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw CatalogError("malformed catalog entry: " + std::string(e.what()));
    }
  }
  return PassCatalog(std::move(passes));
}

std::string catalog_to_json(const PassCatalog& catalog) {
  ordered_json doc = ordered_json::array();
  for (const PassDescriptor& p : catalog.passes()) {
    ordered_json entry;
    entry["index"] = p.index;
    entry["flag"] = p.flag;
    entry["semantics"] = p.semantics;
    entry["deps"] = p.deps;
    entry["conflicts"] = p.conflicts;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

void save_catalog(const PassCatalog& catalog,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write catalog file: " + path.string());
  out << catalog_to_json(catalog);
}

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDependencyViolation: return "DependencyViolation";
    case ViolationKind::kConflictViolation: return "ConflictViolation";
    case ViolationKind::kUnknownPass: return "UnknownPass";
  }
  return "?";
}

ValidationReport validate_sequence(const PassSequence& seq,
                                   const PassCatalog& catalog) {
  ValidationReport report;

  for (std::size_t pos = 0; pos < seq.items.size(); ++pos) {
    if (!catalog.contains(seq.items[pos])) {
      report.violations.push_back({ViolationKind::kUnknownPass,
                                   {static_cast<int>(pos)},
                                   {seq.items[pos]}});
    }
  }

  std::map<int, int> first = first_positions(seq, catalog);

  // Dependencies are checked against first occurrences: if p_j occurs, every
  // dependency must occur somewhere before p_j's first occurrence.
  for (const auto& [p, pos] : first) {
    for (int dep : catalog.at(p).deps) {
      auto it = first.find(dep);
      if (it == first.end()) {
        report.violations.push_back(
            {ViolationKind::kDependencyViolation, {pos, -1}, {p, dep}});
      } else if (it->second > pos) {
        report.violations.push_back(
            {ViolationKind::kDependencyViolation, {pos, it->second}, {p, dep}});
      }
    }
  }

  // Conflicting passes cannot appear together, in any order.
  for (const auto& [p, pos] : first) {
    for (int other : catalog.at(p).conflicts) {
      if (other <= p) continue;  // one report per unordered pair
      auto it = first.find(other);
      if (it == first.end()) continue;
      int a = std::min(pos, it->second);
      int b = std::max(pos, it->second);
      report.violations.push_back(
          {ViolationKind::kConflictViolation, {a, b}, {seq.items[static_cast<std::size_t>(a)], seq.items[static_cast<std::size_t>(b)]}});
    }
  }

  report.valid = report.violations.empty();
  return report;
}

RepairResult repair_sequence(const PassSequence& seq,
                             const PassCatalog& catalog) {
  RepairResult result;
  std::vector<int> items;

  // Unknown indices cannot be satisfied; drop them.
  for (int p : seq.items) {
    if (catalog.contains(p)) {
      items.push_back(p);
    } else {
      result.dropped.push_back(p);
    }
  }

  // Resolve conflicts: repeatedly find the earliest pass whose first
  // occurrence conflicts with an earlier one, and drop all its occurrences.
  for (;;) {
    std::map<int, int> first = first_positions({items}, catalog);
    int loser = -1;
    int loser_pos = static_cast<int>(items.size());
    for (const auto& [p, pos] : first) {
      for (int other : catalog.at(p).conflicts) {
        auto it = first.find(other);
        if (it == first.end()) continue;
        int later = pos > it->second ? p : it->second > pos ? other : p;
        int later_pos = std::max(pos, it->second);
        if (later_pos < loser_pos) {
          loser = later;
          loser_pos = later_pos;
        }
      }
    }
    if (loser == -1) break;
    items.erase(std::remove(items.begin(), items.end(), loser), items.end());
    result.dropped.push_back(loser);
  }

  // Splice missing dependencies in front of their first dependent,
  // transitively, dependencies-of-dependencies first.
  for (;;) {
    std::map<int, int> first = first_positions({items}, catalog);
    int missing = -1;
    int insert_pos = -1;
    for (const auto& [p, pos] : first) {
      for (int dep : catalog.at(p).deps) {
        if (!first.count(dep) && (insert_pos == -1 || pos < insert_pos)) {
          missing = dep;
          insert_pos = pos;
        }
      }
    }
    if (missing == -1) break;
    // A required dependency that conflicts with anything present cannot be
    // inserted.
    for (int present : items) {
      if (catalog.at(missing).conflicts.count(present)) {
        throw RepairImpossibleError(
            "dependency " + catalog.at(missing).flag + " conflicts with " +
            catalog.at(present).flag);
      }
    }
    items.insert(items.begin() + insert_pos, missing);
    result.inserted.push_back(missing);
  }

  // Fix ordering violations with a stable topological reorder. An element is
  // ready when its pass already appeared or all its dependencies have.
  if (!validate_sequence({items}, catalog).valid) {
    std::vector<int> ordered;
    std::vector<bool> used(items.size(), false);
    std::unordered_set<int> emitted;
    for (std::size_t n = 0; n < items.size(); ++n) {
      std::size_t pick = items.size();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (used[i]) continue;
        int p = items[i];
        bool ready = emitted.count(p) > 0;
        if (!ready) {
          ready = true;
          for (int dep : catalog.at(p).deps) {
            bool dep_present = std::find(items.begin(), items.end(), dep) !=
                               items.end();
            if (dep_present && !emitted.count(dep)) {
              ready = false;
              break;
            }
          }
        }
        if (ready) {
          pick = i;
          break;
        }
      }
      if (pick == items.size()) {
        throw RepairImpossibleError("unsatisfiable dependency ordering");
      }
      used[pick] = true;
      ordered.push_back(items[pick]);
      emitted.insert(items[pick]);
    }
    items = std::move(ordered);
    result.reordered = true;
  }

  result.sequence = PassSequence{std::move(items)};

  // Subsequence check against the input.
  std::size_t j = 0;
  for (int p : seq.items) {
    if (j < result.sequence.items.size() && result.sequence.items[j] == p) ++j;
  }
  result.is_subsequence_of_input = j == result.sequence.items.size();
  return result;
}

std::vector<std::string> render_flags(const PassSequence& seq,
                                      const PassCatalog& catalog) {
  std::vector<std::string> flags;
  flags.reserve(seq.items.size());
  for (int p : seq.items) flags.push_back(catalog.at(p).flag);
  return flags;
}

PassSequence parse_flags(const std::vector<std::string>& flags,
                         const PassCatalog& catalog) {
  PassSequence seq;
  seq.items.reserve(flags.size());
  for (const std::string& flag : flags) {
    auto index = catalog.index_of_flag(flag);
    if (!index) throw UnknownPassError("unknown pass flag: " + flag);
    seq.items.push_back(*index);
  }
  return seq;
}

std::vector<std::string> split_flag_text(std::string_view text) {
  std::vector<std::string> flags;
  std::string current;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n') {
      if (!current.empty()) flags.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) flags.push_back(std::move(current));
  return flags;
}

std::string report_to_json(const ValidationReport& report) {
  ordered_json doc;
  doc["valid"] = report.valid;
  doc["violations"] = ordered_json::array();
  for (const Violation& v : report.violations) {
    ordered_json entry;
    entry["kind"] = violation_kind_name(v.kind);
    entry["positions"] = v.positions;
    entry["passes"] = v.passes;
    doc["violations"].push_back(std::move(entry));
  }
  return doc.dump();
}

}  // namespace aware::pass
