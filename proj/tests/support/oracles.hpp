// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles used by unit and acceptance tests. These deliberately
// re-derive results with the dumbest implementation available and must stay
// independent of the library code paths they check.

#ifndef AWAREOPT_TESTS_SUPPORT_ORACLES_HPP
#define AWAREOPT_TESTS_SUPPORT_ORACLES_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "awareopt/knowledge_base.hpp"
#include "awareopt/pass_space.hpp"

namespace aware::testing {

// Positional pair-enumeration validity check: conflicts over all position
// pairs, dependencies by scanning everything before the dependent's first
// occurrence.
inline bool brute_force_valid(const std::vector<int>& items,
                              const pass::PassCatalog& catalog) {
  for (int p : items) {
    if (!catalog.contains(p)) return false;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (i == j) continue;
      if (catalog.at(items[j]).conflicts.count(items[i])) return false;
    }
  }
  for (std::size_t j = 0; j < items.size(); ++j) {
    // Only the first occurrence of a pass carries ordering constraints.
    bool first_occurrence = true;
    for (std::size_t k = 0; k < j; ++k) {
      if (items[k] == items[j]) first_occurrence = false;
    }
    if (!first_occurrence) continue;
    for (int dep : catalog.at(items[j]).deps) {
      bool found_before = false;
      for (std::size_t i = 0; i < j; ++i) {
        if (items[i] == dep) found_before = true;
      }
      if (!found_before) return false;
    }
  }
  return true;
}

// Synthetic catalog with random dependencies (toward lower indices, so the
// graph is acyclic by construction) and random symmetric conflicts.
inline pass::PassCatalog random_catalog(std::mt19937& rng,
                                        int num_passes = 8) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<pass::PassDescriptor> passes;
  for (int i = 0; i < num_passes; ++i) {
    passes.push_back({i, "--p" + std::to_string(i), "synthetic", {}, {}});
  }
  for (int i = 0; i < num_passes; ++i) {
    for (int j = 0; j < i; ++j) {
      double roll = coin(rng);
      if (roll < 0.15) {
        passes[i].deps.insert(j);
      } else if (roll < 0.30) {
        passes[i].conflicts.insert(j);
        passes[j].conflicts.insert(i);
      }
    }
  }
  return pass::PassCatalog(std::move(passes));
}

inline std::vector<int> random_sequence(std::mt19937& rng, int num_passes,
                                        int max_len = 12) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<int> pass_dist(0, num_passes - 1);
  std::vector<int> items(static_cast<std::size_t>(len_dist(rng)));
  for (int& p : items) p = pass_dist(rng);
  return items;
}

// Score-and-sort retrieval oracle: computes every rank score directly and
// stable-sorts, mirroring the documented fusion formula.
struct OracleRanked {
  std::size_t store_pos;
  double rank_score;
};

inline std::vector<OracleRanked> brute_force_retrieve(
    const kb::KnowledgeBase& base, const ir::FeatureVector& query,
    std::size_t k, double alpha) {
  std::vector<std::size_t> candidates;
  double min_effect = 0.0;
  double max_effect = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < base.empirical().size(); ++i) {
    const auto& entry = base.empirical()[i];
    if (base.is_blacklisted(entry.sequence)) continue;
    candidates.push_back(i);
    if (first || entry.effect < min_effect) min_effect = entry.effect;
    if (first || entry.effect > max_effect) max_effect = entry.effect;
    first = false;
  }
  std::vector<OracleRanked> scored;
  for (std::size_t i : candidates) {
    const auto& entry = base.empirical()[i];
    double normalized = max_effect > min_effect
                            ? (entry.effect - min_effect) / (max_effect - min_effect)
                            : 0.5;
    double score = alpha * kb::similarity(query, entry.features) +
                   (1.0 - alpha) * normalized;
    scored.push_back({i, score});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const OracleRanked& a, const OracleRanked& b) {
                     return a.rank_score > b.rank_score;
                   });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace aware::testing

#endif  // AWAREOPT_TESTS_SUPPORT_ORACLES_HPP
