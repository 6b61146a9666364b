// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#ifndef AWAREOPT_KNOWLEDGE_BASE_HPP
#define AWAREOPT_KNOWLEDGE_BASE_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "awareopt/errors.hpp"
#include "awareopt/ir_features.hpp"
#include "awareopt/pass_space.hpp"

namespace aware::kb {

// One observed (features -> sequence -> effect) data point.
struct EmpiricalEntry {
  ir::FeatureVector features;
  pass::PassSequence sequence;
  double effect = 0.0;  // signed size-reduction ratio, e.g. improvement over -Oz
  std::string provenance;
  std::string note;
};

// A sequence observed to regress below the threshold, excluded from
// retrieval forever after.
struct NegativeEntry {
  pass::PassSequence sequence;
  double score = 0.0;
  double threshold_at_insert = 0.0;
};

struct RankedEntry {
  EmpiricalEntry entry;
  double similarity = 0.0;  // in [0,1]
  double rank_score = 0.0;
};

struct RetrievalResult {
  std::vector<RankedEntry> ranked;  // rank_score descending, stable ties
  std::size_t k = 0;                // requested count
};

enum class NegativeInsertOutcome {
  kInserted,
  kNotNegative,  // score >= epsilon: no-op
};

// Cosine similarity over log1p-transformed counts, mapped from [-1,1] to
// [0,1]. Symmetric; 1 for identical nonzero vectors and for two all-zero
// vectors; 0.5 for orthogonal ones.
double similarity(const ir::FeatureVector& a, const ir::FeatureVector& b);

// Empirical + symbolic + negative compiler knowledge. The symbolic part is
// the catalog's dependency/conflict table; empirical and negative stores are
// kept disjoint by every mutation.
//
// Value-semantic and cheap to copy-on-write: share one instance between many
// readers or hand a copy to a single writer; no internal locking.
class KnowledgeBase {
 public:
  explicit KnowledgeBase(std::shared_ptr<const pass::PassCatalog> catalog,
                         double epsilon = 0.0);

  double epsilon() const { return epsilon_; }
  const pass::PassCatalog& catalog() const { return *catalog_; }
  std::shared_ptr<const pass::PassCatalog> catalog_ptr() const {
    return catalog_;
  }
  const std::vector<EmpiricalEntry>& empirical() const { return empirical_; }
  const std::vector<NegativeEntry>& negative() const { return negative_; }

  // Appends an entry. A duplicate (features, sequence) pair replaces the
  // stored one only when the new effect is higher. Throws
  // InvalidSequenceError when the sequence fails validation or the effect is
  // out of [-1,1]; NegativeCollisionError when the sequence is blacklisted.
  void insert_empirical(EmpiricalEntry entry);

  // Blacklists a sequence scored below epsilon and removes any matching
  // empirical entries. Returns kNotNegative (no-op) when score >= epsilon.
  NegativeInsertOutcome insert_negative(const pass::PassSequence& seq,
                                        double score);

  bool is_blacklisted(const pass::PassSequence& seq) const;

  // Rebuilds a base verbatim from persisted stores, re-checking every
  // invariant (effect range, sequence validity, score < threshold,
  // store disjointness). Throws IoError on violations.
  static KnowledgeBase restore(std::shared_ptr<const pass::PassCatalog> catalog,
                               double epsilon,
                               std::vector<EmpiricalEntry> empirical,
                               std::vector<NegativeEntry> negative);

  // Rank-fusion retrieval: rank_score = alpha * similarity +
  // (1 - alpha) * effect normalized over the surviving store (0.5 when the
  // spread is degenerate). Blacklisted sequences never appear. Throws
  // EmptyStoreError when nothing survives, aware::Error when k < 1.
  RetrievalResult retrieve(const ir::FeatureVector& query, std::size_t k,
                           double alpha = 0.5) const;

 private:
  std::shared_ptr<const pass::PassCatalog> catalog_;
  double epsilon_;
  std::vector<EmpiricalEntry> empirical_;
  std::vector<NegativeEntry> negative_;
};

// Versioned JSON persistence: {version, epsilon, empirical, negative}.
// load(persist(kb)) is structurally the identity. Throws IoError and
// SchemaVersionMismatchError.
void persist(const KnowledgeBase& base, const std::filesystem::path& path);
KnowledgeBase load_kb(const std::filesystem::path& path,
                      std::shared_ptr<const pass::PassCatalog> catalog);

}  // namespace aware::kb

#endif  // AWAREOPT_KNOWLEDGE_BASE_HPP
