// Copyright 2026 The aware-opt Authors
//
// Licensed under the Apache License, Version 2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
// aware-opt: feature extraction, pass-sequence validation, knowledge-base
// management, agent episodes, and benchmark evaluation in one binary.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "awareopt/agent.hpp"
#include "awareopt/compiler_env.hpp"
#include "awareopt/dataset.hpp"
#include "awareopt/harness.hpp"
#include "awareopt/ir_features.hpp"
#include "awareopt/knowledge_base.hpp"
#include "awareopt/pass_space.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct GlobalConfig {
  aware::reward::RewardWeights weights;
  double alpha = 0.5;
  double epsilon = 0.0;
  double gamma = 1.0;
  int workers = 1;
  std::size_t retrieval_k = 1;
};

GlobalConfig load_config(const fs::path& path) {
  GlobalConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw aware::IoError("cannot open config: " + path.string());
  json doc;
  in >> doc;
  if (doc.contains("weights")) {
    cfg.weights.format = doc["weights"].value("format", cfg.weights.format);
    cfg.weights.answer = doc["weights"].value("answer", cfg.weights.answer);
    cfg.weights.performance =
        doc["weights"].value("performance", cfg.weights.performance);
  }
  cfg.alpha = doc.value("alpha", cfg.alpha);
  cfg.epsilon = doc.value("epsilon", cfg.epsilon);
  cfg.gamma = doc.value("gamma", cfg.gamma);
  cfg.workers = doc.value("workers", cfg.workers);
  cfg.retrieval_k = doc.value("retrieval_k", cfg.retrieval_k);
  return cfg;
}

// data/ holds the catalog files, prompt template, seed KB, and mini-corpus.
fs::path locate_data_dir(const fs::path& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env_dir = std::getenv("AWARE_DATA_DIR")) return env_dir;
  for (const char* candidate : {"data", "../data", "../../data"}) {
    if (fs::exists(fs::path(candidate) / "prompt_template.txt")) {
      return candidate;
    }
  }
  return "data";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aware::IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

aware::ir::FeatureVector features_of_file(const fs::path& ir_path) {
  return aware::ir::extract_features(
      aware::ir::parse_ir(slurp(ir_path), ir_path.string()));
}

std::shared_ptr<const aware::pass::PassCatalog> pick_catalog(
    const fs::path& catalog_path, bool curated) {
  if (!catalog_path.empty()) {
    return std::make_shared<const aware::pass::PassCatalog>(
        aware::pass::load_catalog(catalog_path));
  }
  return std::make_shared<const aware::pass::PassCatalog>(
      curated ? aware::pass::builtin_curated_catalog()
              : aware::pass::builtin_catalog());
}

aware::kb::KnowledgeBase open_kb(
    const fs::path& kb_path,
    std::shared_ptr<const aware::pass::PassCatalog> catalog, double epsilon) {
  if (!kb_path.empty() && fs::exists(kb_path)) {
    return aware::kb::load_kb(kb_path, std::move(catalog));
  }
  return aware::kb::KnowledgeBase(std::move(catalog), epsilon);
}

aware::agent::PolicyEndpoint endpoint_from_env(const std::string& url_flag,
                                               const std::string& model_flag) {
  aware::agent::PolicyEndpoint endpoint;
  endpoint.kind = aware::agent::PolicyEndpoint::Kind::kRemoteChat;
  const char* env_url = std::getenv("AWARE_LLM_URL");
  const char* env_model = std::getenv("AWARE_LLM_MODEL");
  const char* env_key = std::getenv("AWARE_LLM_KEY");
  endpoint.endpoint_url = !url_flag.empty() ? url_flag
                          : env_url         ? env_url
                                            : "";
  endpoint.model_name = !model_flag.empty() ? model_flag
                        : env_model         ? env_model
                                            : "";
  if (env_key) endpoint.api_key = env_key;
  return endpoint;
}

// Size-reduction recipes used for knowledge-base seeding. -Oz itself is a
// candidate, so every program ends up with at least one non-regressing entry.
const std::vector<std::vector<std::string>>& seed_recipes() {
  static const std::vector<std::vector<std::string>> recipes = {
      {"-Oz"},
      {"--sroa", "--early-cse", "--simplifycfg", "--instcombine"},
      {"--mem2reg", "--simplifycfg", "--gvn", "--dse", "--adce"},
      {"--sroa", "--gvn", "--instcombine", "--simplifycfg", "--dse", "--adce",
       "--globaldce"},
      {"--inferattrs", "--dse", "--mldst-motion", "--mergefunc",
       "--instsimplify"},
      {"--sroa", "--instcombine", "--early-cse-memssa", "--simplifycfg",
       "--reassociate", "--gvn", "--adce", "--strip-dead-prototypes"},
      {"--mem2reg", "--instcombine", "--loop-simplify", "--licm",
       "--simplifycfg"},
      {"--sroa", "--jump-threading", "--correlated-propagation",
       "--simplifycfg", "--instcombine", "--tailcallelim", "--dse", "--adce"},
      {"--sroa", "--instcombine", "--simplifycfg", "--deadargelim",
       "--globalopt", "--globaldce", "--constmerge"},
  };
  return recipes;
}

struct PolicyChoice {
  std::string name = "retrieval";  // retrieval | case-study | remote | script
  fs::path script_path;
  std::string heuristic_text = "--simplifycfg,--instcombine";
  std::string llm_url;
  std::string llm_model;
};

aware::harness::PolicyFactory make_policy_factory(const PolicyChoice& choice) {
  using aware::agent::Policy;
  if (choice.name == "script") {
    auto turns = std::make_shared<std::vector<std::string>>();
    json doc = json::parse(slurp(choice.script_path));
    for (const auto& turn : doc) turns->push_back(turn.get<std::string>());
    return [turns](const aware::harness::ProgramSpec&,
                   const aware::ir::FeatureVector&,
                   const std::string&) -> std::unique_ptr<Policy> {
      return std::make_unique<aware::agent::ScriptedPolicy>(*turns);
    };
  }
  if (choice.name == "remote") {
    aware::agent::PolicyEndpoint endpoint =
        endpoint_from_env(choice.llm_url, choice.llm_model);
    if (endpoint.endpoint_url.empty()) {
      throw aware::Error(
          "remote policy needs --llm-url or AWARE_LLM_URL");
    }
    return [endpoint](const aware::harness::ProgramSpec&,
                      const aware::ir::FeatureVector&,
                      const std::string&) -> std::unique_ptr<Policy> {
      return std::make_unique<aware::agent::RemoteChatPolicy>(endpoint);
    };
  }
  if (choice.name == "case-study") {
    auto heuristic = aware::pass::split_flag_text(choice.heuristic_text);
    return [heuristic](const aware::harness::ProgramSpec& program,
                       const aware::ir::FeatureVector&,
                       const std::string& features_json)
               -> std::unique_ptr<Policy> {
      return std::make_unique<aware::agent::CaseStudyPolicy>(
          program.id, features_json, heuristic);
    };
  }
  return [](const aware::harness::ProgramSpec& program,
            const aware::ir::FeatureVector&,
            const std::string& features_json) -> std::unique_ptr<Policy> {
    return std::make_unique<aware::agent::RetrievalAnswerPolicy>(
        program.id, features_json);
  };
}

int run_eval(const fs::path& manifest_path, const std::string& method_name,
             const fs::path& kb_path, const fs::path& out_path,
             const GlobalConfig& config, const PolicyChoice& policy_choice,
             const fs::path& data_dir, const fs::path& trajectory_log,
             bool geomean) {
  aware::harness::BenchmarkManifest manifest =
      aware::harness::load_manifest(manifest_path);
  auto catalog = pick_catalog({}, false);
  aware::kb::KnowledgeBase base = open_kb(kb_path, catalog, config.epsilon);

  aware::env::CompilerConfig env_cfg = aware::env::make_config();
  aware::env::CompilerEnv environment(env_cfg, manifest.to_registry());
  if (!environment.opt_available()) {
    std::cerr << "warning: no opt binary found (set AWARE_OPT_BIN); "
                 "compilations will fail\n";
  }

  aware::harness::Method method;
  if (auto level = aware::env::baseline_from_name(method_name)) {
    method = aware::harness::Method::baseline(*level);
  } else if (method_name.rfind("flags:", 0) == 0) {
    method = aware::harness::Method::fixed(
        aware::pass::split_flag_text(method_name.substr(6)));
  } else if (method_name == "agent") {
    method = aware::harness::Method::agent();
  } else {
    throw aware::Error("unknown method: " + method_name);
  }

  aware::harness::EvalOptions options;
  options.workers = config.workers;
  options.episode.weights = config.weights;
  options.episode.gamma = config.gamma;
  options.episode.retrieval_k = config.retrieval_k;
  options.episode.retrieval_alpha = config.alpha;
  options.trajectory_log = trajectory_log;
  if (method.kind == aware::harness::Method::Kind::kAgent) {
    options.template_text = slurp(data_dir / "prompt_template.txt");
    options.policy_factory = make_policy_factory(policy_choice);
  }

  auto reports =
      aware::harness::evaluate_method(manifest, method, environment, base,
                                      options);
  std::string report_json = aware::harness::report_to_json(reports);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report_json;
  }
  std::cout << report_json;

  for (const auto& report : reports) {
    std::cerr << "suite " << report.suite << ": avg reduction "
              << aware::dataset::format_percent(report.average_reduction);
    if (geomean) {
      std::cerr << " (geomean "
                << aware::dataset::format_percent(
                       aware::harness::geometric_mean_reduction(
                           report.per_program))
                << ")";
    }
    if (report.success_rate) {
      std::cerr << ", success rate " << *report.success_rate * 100 << "%";
    }
    std::cerr << "\n";
  }
  return 0;
}

int run_agent_once(const std::string& program_id, const fs::path& manifest_path,
                   const fs::path& kb_path, const GlobalConfig& config,
                   const PolicyChoice& policy_choice, const fs::path& data_dir,
                   int max_turns, bool repair, const fs::path& trajectory_log) {
  aware::harness::BenchmarkManifest manifest =
      aware::harness::load_manifest(manifest_path);
  auto program = manifest.find_program(program_id);
  if (!program) throw aware::UnknownProgramError("not in manifest: " + program_id);

  auto catalog = pick_catalog({}, false);
  aware::kb::KnowledgeBase base = open_kb(kb_path, catalog, config.epsilon);
  aware::env::CompilerEnv environment(aware::env::make_config(),
                                      manifest.to_registry());

  aware::ir::FeatureVector features = features_of_file(program->ir_path);
  std::string features_json = aware::ir::serialize_features(features);
  auto factory = make_policy_factory(policy_choice);
  std::unique_ptr<aware::agent::Policy> policy =
      factory(*program, features, features_json);

  aware::agent::EpisodeConfig episode;
  episode.weights = config.weights;
  episode.gamma = config.gamma;
  episode.retrieval_k = config.retrieval_k;
  episode.retrieval_alpha = config.alpha;
  episode.max_turns = max_turns;

  aware::agent::EpisodeInputs inputs{
      program_id, features, slurp(data_dir / "prompt_template.txt")};
  aware::agent::Trajectory trajectory = aware::agent::run_episode(
      inputs, *policy, base, environment, episode);

  std::string record = aware::agent::trajectory_to_json(trajectory);
  if (!trajectory_log.empty()) {
    std::ofstream out(trajectory_log, std::ios::app);
    out << record << "\n";
  }
  std::cout << record << "\n";

  if (repair && trajectory.final_sequence) {
    aware::pass::RepairResult repaired = aware::pass::repair_sequence(
        *trajectory.final_sequence, base.catalog());
    ordered_json r;
    r["repaired_flags"] =
        aware::pass::render_flags(repaired.sequence, base.catalog());
    r["dropped"] = repaired.dropped;
    r["inserted"] = repaired.inserted;
    r["reordered"] = repaired.reordered;
    std::cerr << r.dump() << "\n";
  }

  if (!kb_path.empty()) aware::kb::persist(base, kb_path);
  return 0;
}

int run_kb_seed(const fs::path& manifest_path, const fs::path& kb_path,
                const GlobalConfig& config, int random_candidates,
                unsigned seed, bool append) {
  aware::harness::BenchmarkManifest manifest =
      aware::harness::load_manifest(manifest_path);
  auto catalog = pick_catalog({}, false);
  aware::env::CompilerConfig env_cfg = aware::env::make_config();
  if (!env_cfg.opt_binary) {
    throw aware::Error("kb seed requires an opt binary (set AWARE_OPT_BIN)");
  }
  aware::env::CompilerEnv environment(env_cfg, manifest.to_registry());

  aware::kb::KnowledgeBase base =
      append ? open_kb(kb_path, catalog, config.epsilon)
             : aware::kb::KnowledgeBase(catalog, config.epsilon);

  std::vector<std::vector<std::string>> candidates = seed_recipes();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len_dist(4, 10);
  std::uniform_int_distribution<int> pass_dist(0, 123);  // skip -Oz at random
  for (int i = 0; i < random_candidates; ++i) {
    std::vector<std::string> flags;
    int length = len_dist(rng);
    for (int j = 0; j < length; ++j) {
      flags.push_back(catalog->at(pass_dist(rng)).flag);
    }
    candidates.push_back(std::move(flags));
  }

  std::size_t inserted = 0;
  for (const auto& suite : manifest.suites) {
    for (const auto& program : suite.programs) {
      aware::ir::FeatureVector features = features_of_file(program.ir_path);
      double best = -2.0;
      std::vector<std::string> best_flags;
      for (const auto& flags : candidates) {
        aware::env::InstrCountResult result =
            environment.instrcount(program.id, flags);
        if (result.status != aware::env::EnvStatus::kSuccess) continue;
        double effect = result.improvement_over_oz;
        if (effect > best) {
          best = effect;
          best_flags = flags;
        }
        if (effect >= 0.0 && effect <= 1.0) {
          try {
            base.insert_empirical(
                {features, aware::pass::parse_flags(flags, *catalog), effect,
                 program.id, "seed search"});
            ++inserted;
          } catch (const aware::Error&) {
          }
        }
      }
      std::cerr << program.id << ": best improvement_over_oz "
                << aware::dataset::format_percent(best > -2.0 ? best : 0.0)
                << "\n";
    }
  }
  aware::kb::persist(base, kb_path);
  std::cerr << "inserted " << inserted << " empirical entries into "
            << kb_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knowledge-driven LLVM pass-sequence harness"};
  app.require_subcommand(1);

  fs::path config_path;
  fs::path data_dir_flag;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--data", data_dir_flag, "data directory (catalog, template)");

  // features
  auto* features_cmd =
      app.add_subcommand("features", "print the AutoPhase feature map");
  fs::path features_input;
  features_cmd->add_option("file", features_input, "textual IR file")
      ->required();

  // validate
  auto* validate_cmd =
      app.add_subcommand("validate", "validate a pass sequence");
  std::string validate_flags;
  fs::path validate_catalog;
  bool validate_curated = false;
  validate_cmd->add_option("--flags", validate_flags, "comma-separated flags")
      ->required();
  validate_cmd->add_option("--catalog", validate_catalog, "catalog JSON file");
  validate_cmd->add_flag("--curated", validate_curated,
                         "use the curated constraint table");

  // repair
  auto* repair_cmd = app.add_subcommand("repair", "repair a pass sequence");
  std::string repair_flags;
  fs::path repair_catalog;
  bool repair_curated = false;
  repair_cmd->add_option("--flags", repair_flags, "comma-separated flags")
      ->required();
  repair_cmd->add_option("--catalog", repair_catalog, "catalog JSON file");
  repair_cmd->add_flag("--curated", repair_curated,
                       "use the curated constraint table");

  // catalog dump
  auto* catalog_cmd = app.add_subcommand("catalog", "catalog utilities");
  auto* catalog_dump = catalog_cmd->add_subcommand("dump", "write catalog JSON");
  fs::path catalog_out;
  bool catalog_curated = false;
  catalog_dump->add_option("-o,--out", catalog_out, "output file");
  catalog_dump->add_flag("--curated", catalog_curated,
                         "dump the curated constraint table");
  auto* catalog_features =
      catalog_cmd->add_subcommand("features", "write the feature key list");
  fs::path features_out;
  catalog_features->add_option("-o,--out", features_out, "output file");

  // kb
  auto* kb_cmd = app.add_subcommand("kb", "knowledge base operations");
  fs::path kb_path;
  kb_cmd->add_option("--kb", kb_path, "knowledge base JSON file");

  auto* kb_init = kb_cmd->add_subcommand("init", "create an empty base");
  double kb_epsilon = 0.0;
  kb_init->add_option("--epsilon", kb_epsilon, "negative threshold");

  auto* kb_insert = kb_cmd->add_subcommand("insert", "insert an entry");
  fs::path kb_ir;
  fs::path kb_features_file;
  std::string kb_flags;
  double kb_effect = 0.0;
  std::string kb_provenance = "manual";
  std::string kb_note;
  bool kb_negative = false;
  double kb_score = 0.0;
  kb_insert->add_option("--ir", kb_ir, "IR file to extract features from");
  kb_insert->add_option("--features-file", kb_features_file,
                        "feature JSON file");
  kb_insert->add_option("--flags", kb_flags, "comma-separated flags")
      ->required();
  kb_insert->add_option("--effect", kb_effect, "observed effect in [-1,1]");
  kb_insert->add_option("--provenance", kb_provenance, "entry provenance");
  kb_insert->add_option("--note", kb_note, "free-text note");
  kb_insert->add_flag("--negative", kb_negative,
                      "insert into the negative store instead");
  kb_insert->add_option("--score", kb_score, "evaluation score (negative)");

  auto* kb_query = kb_cmd->add_subcommand("query", "rank-fusion retrieval");
  fs::path query_ir;
  fs::path query_features_file;
  int query_k = 1;
  double query_alpha = -1.0;
  kb_query->add_option("--ir", query_ir, "IR file to extract features from");
  kb_query->add_option("--features-file", query_features_file,
                       "feature JSON file");
  kb_query->add_option("-k", query_k, "number of results");
  kb_query->add_option("--alpha", query_alpha,
                       "similarity weight in the rank fusion");

  auto* kb_stats = kb_cmd->add_subcommand("stats", "store statistics");

  auto* kb_seed = kb_cmd->add_subcommand(
      "seed", "search recipe candidates with opt and store the winners");
  fs::path seed_manifest;
  int seed_random = 0;
  unsigned seed_value = 20260808;
  bool seed_append = false;
  kb_seed->add_option("--manifest", seed_manifest, "benchmark manifest")
      ->required();
  kb_seed->add_option("--random", seed_random, "extra random candidates");
  kb_seed->add_option("--seed", seed_value, "random seed");
  kb_seed->add_flag("--append", seed_append, "extend an existing base");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a method on a manifest");
  fs::path eval_manifest;
  std::string eval_method;
  fs::path eval_kb;
  fs::path eval_out;
  fs::path eval_trajectories;
  bool eval_geomean = false;
  PolicyChoice eval_policy;
  eval_cmd->add_option("--manifest", eval_manifest, "benchmark manifest")
      ->required();
  eval_cmd
      ->add_option("--method", eval_method,
                   "oz|o1|o2|o3|agent|flags:<csv>")
      ->required();
  eval_cmd->add_option("--kb", eval_kb, "knowledge base file");
  eval_cmd->add_option("--out", eval_out, "report JSON output");
  eval_cmd->add_option("--trajectories", eval_trajectories,
                       "append agent trajectories to this JSONL file");
  eval_cmd->add_option("--policy", eval_policy.name,
                       "retrieval|case-study|remote|script");
  eval_cmd->add_option("--script", eval_policy.script_path,
                       "turn script for --policy script");
  eval_cmd->add_option("--heuristic", eval_policy.heuristic_text,
                       "first-attempt flags for --policy case-study");
  eval_cmd->add_option("--llm-url", eval_policy.llm_url, "chat endpoint URL");
  eval_cmd->add_option("--model", eval_policy.llm_model, "model name");
  eval_cmd->add_flag("--geomean", eval_geomean,
                     "also print geometric-mean reductions");
  int eval_workers = 0;
  eval_cmd->add_option("--workers", eval_workers,
                       "concurrent program evaluations (default from config)");

  // agent run
  auto* agent_cmd = app.add_subcommand("agent", "agent episodes");
  auto* agent_run = agent_cmd->add_subcommand("run", "run one episode");
  std::string agent_program;
  fs::path agent_manifest;
  fs::path agent_kb;
  fs::path agent_trajectories;
  int agent_max_turns = 8;
  bool agent_repair = false;
  PolicyChoice agent_policy;
  agent_run->add_option("--program", agent_program, "program id")->required();
  agent_run->add_option("--manifest", agent_manifest, "benchmark manifest")
      ->required();
  agent_run->add_option("--kb", agent_kb, "knowledge base file");
  agent_run->add_option("--trajectories", agent_trajectories,
                        "append the trajectory to this JSONL file");
  agent_run->add_option("--max-turns", agent_max_turns, "turn budget");
  agent_run->add_flag("--repair", agent_repair,
                      "print a repaired sequence for deployment use");
  agent_run->add_option("--policy", agent_policy.name,
                        "retrieval|case-study|remote|script");
  agent_run->add_option("--script", agent_policy.script_path,
                        "turn script for --policy script");
  agent_run->add_option("--heuristic", agent_policy.heuristic_text,
                        "first-attempt flags for --policy case-study");
  agent_run->add_option("--llm-url", agent_policy.llm_url,
                        "chat endpoint URL");
  agent_run->add_option("--model", agent_policy.llm_model, "model name");

  // report compare
  auto* report_cmd = app.add_subcommand("report", "report utilities");
  auto* report_compare = report_cmd->add_subcommand("compare", "diff reports");
  fs::path report_a;
  fs::path report_b;
  fs::path report_csv;
  report_compare->add_option("a", report_a, "first report JSON")->required();
  report_compare->add_option("b", report_b, "second report JSON")->required();
  report_compare->add_option("--csv", report_csv, "also write CSV here");

  // dataset build
  auto* dataset_cmd = app.add_subcommand("dataset", "dataset construction");
  auto* dataset_build = dataset_cmd->add_subcommand("build", "build from logs");
  fs::path dataset_from;
  fs::path dataset_records;
  fs::path dataset_sft;
  double dataset_min_effect = -1.0;
  dataset_build->add_option("--from", dataset_from, "trajectory JSONL")
      ->required();
  dataset_build->add_option("--records", dataset_records,
                            "context-aware record output JSONL");
  dataset_build->add_option("--sft", dataset_sft, "SFT sample output JSONL");
  dataset_build->add_option("--min-effect", dataset_min_effect,
                            "minimum improvement_over_oz for records");

  CLI11_PARSE(app, argc, argv);

  try {
    GlobalConfig config = load_config(config_path);
    fs::path data_dir = locate_data_dir(data_dir_flag);

    if (*features_cmd) {
      std::cout << aware::ir::serialize_features(
                       features_of_file(features_input))
                << "\n";
      return 0;
    }

    if (*validate_cmd) {
      auto catalog = pick_catalog(validate_catalog, validate_curated);
      aware::pass::PassSequence seq;
      aware::pass::ValidationReport report;
      try {
        seq = aware::pass::parse_flags(
            aware::pass::split_flag_text(validate_flags), *catalog);
        report = aware::pass::validate_sequence(seq, *catalog);
      } catch (const aware::UnknownPassError& e) {
        ordered_json out;
        out["valid"] = false;
        out["violations"] = {{{"kind", "UnknownPass"}, {"detail", e.what()}}};
        std::cout << out.dump() << "\n";
        return 0;
      }
      std::cout << aware::pass::report_to_json(report) << "\n";
      return 0;
    }

    if (*repair_cmd) {
      auto catalog = pick_catalog(repair_catalog, repair_curated);
      std::vector<std::string> flags =
          aware::pass::split_flag_text(repair_flags);
      aware::pass::PassSequence seq;
      for (const std::string& flag : flags) {
        auto index = catalog->index_of_flag(flag);
        seq.items.push_back(index ? *index : -1);
      }
      aware::pass::RepairResult repaired =
          aware::pass::repair_sequence(seq, *catalog);
      ordered_json out;
      out["flags"] = aware::pass::render_flags(repaired.sequence, *catalog);
      out["dropped"] = repaired.dropped;
      out["inserted"] = repaired.inserted;
      out["reordered"] = repaired.reordered;
      out["is_subsequence_of_input"] = repaired.is_subsequence_of_input;
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (*catalog_dump) {
      aware::pass::PassCatalog catalog =
          catalog_curated ? aware::pass::builtin_curated_catalog()
                          : aware::pass::builtin_catalog();
      if (catalog_out.empty()) {
        std::cout << aware::pass::catalog_to_json(catalog);
      } else {
        aware::pass::save_catalog(catalog, catalog_out);
      }
      return 0;
    }

    if (*catalog_features) {
      ordered_json doc = ordered_json::array();
      const auto& keys = aware::ir::feature_keys();
      for (std::size_t i = 0; i < keys.size(); ++i) {
        doc.push_back({{"index", i},
                       {"key", std::string(keys[i])},
                       {"description",
                        std::string(aware::ir::feature_description(i))}});
      }
      std::string text = doc.dump(2) + "\n";
      if (features_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(features_out);
        out << text;
      }
      return 0;
    }

    if (*kb_cmd) {
      if (kb_path.empty()) throw aware::Error("kb commands need --kb <file>");
      auto catalog = pick_catalog({}, false);
      if (*kb_init) {
        aware::kb::KnowledgeBase base(catalog, kb_epsilon);
        aware::kb::persist(base, kb_path);
        return 0;
      }
      if (*kb_seed) {
        return run_kb_seed(seed_manifest, kb_path, config, seed_random,
                           seed_value, seed_append);
      }
      aware::kb::KnowledgeBase base = open_kb(kb_path, catalog, config.epsilon);
      if (*kb_insert) {
        std::vector<std::string> flags = aware::pass::split_flag_text(kb_flags);
        aware::pass::PassSequence seq =
            aware::pass::parse_flags(flags, *catalog);
        if (kb_negative) {
          auto outcome = base.insert_negative(seq, kb_score);
          if (outcome == aware::kb::NegativeInsertOutcome::kNotNegative) {
            std::cerr << "score " << kb_score
                      << " is not below epsilon; nothing inserted\n";
          }
        } else {
          aware::ir::FeatureVector features;
          if (!kb_ir.empty()) {
            features = features_of_file(kb_ir);
          } else if (!kb_features_file.empty()) {
            features = aware::ir::deserialize_features(slurp(kb_features_file));
          } else {
            throw aware::Error("kb insert needs --ir or --features-file");
          }
          base.insert_empirical(
              {features, seq, kb_effect, kb_provenance, kb_note});
        }
        aware::kb::persist(base, kb_path);
        return 0;
      }
      if (*kb_query) {
        aware::ir::FeatureVector features;
        if (!query_ir.empty()) {
          features = features_of_file(query_ir);
        } else if (!query_features_file.empty()) {
          features = aware::ir::deserialize_features(slurp(query_features_file));
        } else {
          throw aware::Error("kb query needs --ir or --features-file");
        }
        double alpha = query_alpha >= 0 ? query_alpha : config.alpha;
        aware::kb::RetrievalResult result = base.retrieve(
            features, static_cast<std::size_t>(query_k), alpha);
        ordered_json out = ordered_json::array();
        for (const auto& ranked : result.ranked) {
          out.push_back(
              {{"recommended_pass_sequence",
                aware::pass::render_flags(ranked.entry.sequence, *catalog)},
               {"performance_improvement", ranked.entry.effect},
               {"similarity", ranked.similarity},
               {"rank_score", ranked.rank_score},
               {"provenance", ranked.entry.provenance}});
        }
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      if (*kb_stats) {
        ordered_json out;
        out["epsilon"] = base.epsilon();
        out["empirical_entries"] = base.empirical().size();
        out["negative_entries"] = base.negative().size();
        std::cout << out.dump() << "\n";
        return 0;
      }
      throw aware::Error("missing kb subcommand");
    }

    if (*eval_cmd) {
      if (eval_workers > 0) config.workers = eval_workers;
      return run_eval(eval_manifest, eval_method, eval_kb, eval_out, config,
                      eval_policy, data_dir, eval_trajectories, eval_geomean);
    }

    if (*agent_run) {
      return run_agent_once(agent_program, agent_manifest, agent_kb, config,
                            agent_policy, data_dir, agent_max_turns,
                            agent_repair, agent_trajectories);
    }

    if (*report_compare) {
      auto a = aware::harness::report_from_json(slurp(report_a));
      auto b = aware::harness::report_from_json(slurp(report_b));
      aware::harness::Comparison comparison =
          aware::harness::compare_report(a, b);
      std::cout << comparison.text_table;
      if (!report_csv.empty()) {
        std::ofstream out(report_csv);
        out << comparison.csv;
      }
      return 0;
    }

    if (*dataset_build) {
      std::optional<fs::path> records_out;
      std::optional<fs::path> sft_out;
      if (!dataset_records.empty()) records_out = dataset_records;
      if (!dataset_sft.empty()) sft_out = dataset_sft;
      aware::dataset::BuildOutcome outcome = aware::dataset::build_files(
          dataset_from, records_out, sft_out, dataset_min_effect);
      ordered_json out;
      out["records"] = outcome.records;
      out["sft_samples"] = outcome.sft_samples;
      out["rejected_records"] = outcome.rejected_records;
      out["rejected_sft"] = outcome.rejected_sft;
      std::cout << out.dump() << "\n";
      return 0;
    }
  } catch (const aware::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
