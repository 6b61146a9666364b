// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "awareopt/knowledge_base.hpp"

namespace aware::kb {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "aware-kb/1";

}  // namespace

double similarity(const ir::FeatureVector& a, const ir::FeatureVector& b) {
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < ir::kFeatureCount; ++i) {
    double x = std::log1p(static_cast<double>(a[i]));
    double y = std::log1p(static_cast<double>(b[i]));
    dot += x * y;
    norm_a += x * x;
    norm_b += y * y;
  }
  if (norm_a == 0.0 && norm_b == 0.0) return 1.0;  // two empty programs
  if (norm_a == 0.0 || norm_b == 0.0) return 0.5;  // cosine 0 mapped
  double cosine = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
  cosine = std::clamp(cosine, -1.0, 1.0);
  return (cosine + 1.0) / 2.0;
}

KnowledgeBase::KnowledgeBase(std::shared_ptr<const pass::PassCatalog> catalog,
                             double epsilon)
    : catalog_(std::move(catalog)), epsilon_(epsilon) {
  if (!catalog_) throw Error("knowledge base requires a catalog");
}

void KnowledgeBase::insert_empirical(EmpiricalEntry entry) {
  if (entry.effect < -1.0 || entry.effect > 1.0) {
    throw InvalidSequenceError("effect must be within [-1, 1], got " +
                               std::to_string(entry.effect));
  }
  pass::ValidationReport report =
      pass::validate_sequence(entry.sequence, *catalog_);
  if (!report.valid) {
    throw InvalidSequenceError("sequence fails validation: " +
                               pass::report_to_json(report));
  }
  if (is_blacklisted(entry.sequence)) {
    throw NegativeCollisionError("sequence is in the negative store");
  }
  for (EmpiricalEntry& existing : empirical_) {
    if (existing.features == entry.features &&
        existing.sequence == entry.sequence) {
      if (entry.effect > existing.effect) existing = std::move(entry);
      return;
    }
  }
  empirical_.push_back(std::move(entry));
}

NegativeInsertOutcome KnowledgeBase::insert_negative(
    const pass::PassSequence& seq, double score) {
  if (score >= epsilon_) return NegativeInsertOutcome::kNotNegative;
  if (!is_blacklisted(seq)) {
    negative_.push_back({seq, score, epsilon_});
  }
  std::erase_if(empirical_, [&](const EmpiricalEntry& entry) {
    return entry.sequence == seq;
  });
  return NegativeInsertOutcome::kInserted;
}

bool KnowledgeBase::is_blacklisted(const pass::PassSequence& seq) const {
  return std::any_of(negative_.begin(), negative_.end(),
                     [&](const NegativeEntry& entry) {
                       return entry.sequence == seq;
                     });
}

KnowledgeBase KnowledgeBase::restore(
    std::shared_ptr<const pass::PassCatalog> catalog, double epsilon,
    std::vector<EmpiricalEntry> empirical, std::vector<NegativeEntry> negative) {
  KnowledgeBase base(std::move(catalog), epsilon);
  for (const NegativeEntry& entry : negative) {
    if (entry.score >= entry.threshold_at_insert) {
      throw IoError("negative entry with score >= threshold_at_insert");
    }
  }
  base.negative_ = std::move(negative);
  for (EmpiricalEntry& entry : empirical) {
    if (entry.effect < -1.0 || entry.effect > 1.0) {
      throw IoError("empirical entry with effect outside [-1, 1]");
    }
    if (!pass::validate_sequence(entry.sequence, *base.catalog_).valid) {
      throw IoError("empirical entry with invalid sequence");
    }
    if (base.is_blacklisted(entry.sequence)) {
      throw IoError("sequence present in both empirical and negative stores");
    }
  }
  base.empirical_ = std::move(empirical);
  return base;
}

RetrievalResult KnowledgeBase::retrieve(const ir::FeatureVector& query,
                                        std::size_t k, double alpha) const {
  if (k < 1) throw Error("retrieval requires k >= 1");

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < empirical_.size(); ++i) {
    if (!is_blacklisted(empirical_[i].sequence)) candidates.push_back(i);
  }
  if (candidates.empty()) {
    throw EmptyStoreError("no empirical entries survive negative filtering");
  }

  double min_effect = empirical_[candidates.front()].effect;
  double max_effect = min_effect;
  for (std::size_t i : candidates) {
    min_effect = std::min(min_effect, empirical_[i].effect);
    max_effect = std::max(max_effect, empirical_[i].effect);
  }

  RetrievalResult result;
  result.k = k;
  for (std::size_t i : candidates) {
    const EmpiricalEntry& entry = empirical_[i];
    double sim = similarity(query, entry.features);
    double normalized_effect =
        max_effect > min_effect
            ? (entry.effect - min_effect) / (max_effect - min_effect)
            : 0.5;
    double rank_score = alpha * sim + (1.0 - alpha) * normalized_effect;
    result.ranked.push_back({entry, sim, rank_score});
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const RankedEntry& a, const RankedEntry& b) {
                     return a.rank_score > b.rank_score;
                   });
  if (result.ranked.size() > k) result.ranked.resize(k);
  return result;
}

void persist(const KnowledgeBase& base, const std::filesystem::path& path) {
  ordered_json doc;
  doc["version"] = kSchemaVersion;
  doc["epsilon"] = base.epsilon();
  doc["empirical"] = ordered_json::array();
  for (const EmpiricalEntry& entry : base.empirical()) {
    ordered_json e;
    e["features"] =
        ordered_json::parse(ir::serialize_features(entry.features));
    e["sequence"] = pass::render_flags(entry.sequence, base.catalog());
    e["effect"] = entry.effect;
    e["provenance"] = entry.provenance;
    e["note"] = entry.note;
    doc["empirical"].push_back(std::move(e));
  }
  doc["negative"] = ordered_json::array();
  for (const NegativeEntry& entry : base.negative()) {
    ordered_json e;
    e["sequence"] = pass::render_flags(entry.sequence, base.catalog());
    e["score"] = entry.score;
    e["threshold_at_insert"] = entry.threshold_at_insert;
    doc["negative"].push_back(std::move(e));
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write knowledge base: " + path.string());
  out << doc.dump(2) << "\n";
}

KnowledgeBase load_kb(const std::filesystem::path& path,
                      std::shared_ptr<const pass::PassCatalog> catalog) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open knowledge base: " + path.string());
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("knowledge base is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.contains("version") || !doc["version"].is_string()) {
    throw SchemaVersionMismatchError("knowledge base has no version field");
  }
  if (doc["version"].get<std::string>() != kSchemaVersion) {
    throw SchemaVersionMismatchError(
        "expected version " + std::string(kSchemaVersion) + ", found " +
        doc["version"].get<std::string>());
  }

  double epsilon = doc.value("epsilon", 0.0);
  std::vector<EmpiricalEntry> empirical;
  std::vector<NegativeEntry> negative;
  const pass::PassCatalog& cat = *catalog;
  try {
    for (const auto& e : doc.value("negative", ordered_json::array())) {
      negative.push_back(
          {pass::parse_flags(e.at("sequence").get<std::vector<std::string>>(),
                             cat),
           e.at("score").get<double>(),
           e.value("threshold_at_insert", epsilon)});
    }
    for (const auto& e : doc.value("empirical", ordered_json::array())) {
      EmpiricalEntry entry;
      entry.features = ir::deserialize_features(e.at("features").dump());
      entry.sequence = pass::parse_flags(
          e.at("sequence").get<std::vector<std::string>>(), cat);
      entry.effect = e.at("effect").get<double>();
      entry.provenance = e.value("provenance", std::string());
      entry.note = e.value("note", std::string());
      empirical.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed knowledge base entry: " + std::string(e.what()));
  }
  return KnowledgeBase::restore(std::move(catalog), epsilon,
                                std::move(empirical), std::move(negative));
}

}  // namespace aware::kb
