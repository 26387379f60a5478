#pragma once

// End-to-end pipeline pieces shared by the CLI and the acceptance suite:
// embedding a drug set, building scorer features, seeded train/evaluate runs,
// repeated-seed statistics and the dimension/epoch ablation sweeps.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphdr/corpus.hpp"
#include "graphdr/fingerprint.hpp"
#include "graphdr/metrics.hpp"
#include "graphdr/molgraph.hpp"
#include "graphdr/pairscore.hpp"
#include "graphdr/skipgram.hpp"
#include "graphdr/split.hpp"
#include "graphdr/substructure.hpp"

namespace graphdr {

struct EmbedOutcome {
  VocabularyBuild vocab;
  Corpus corpus;
  SkipgramResult training;
  std::vector<std::string> ids;  // graph source ids, row order of training.table.graphs
};

// induce -> vocabulary -> corpus -> skipgram.
EmbedOutcome embed_graphs(std::span<const MolecularGraph> graphs, const Inducer& inducer,
                          const SkipgramConfig& cfg);

// Fingerprints for every graph, plus embedding rows for the ids that also
// have a graph. `embeddings` may be null.
DrugFeatureSet make_drug_features(std::span<const MolecularGraph> graphs,
                                  const EmbeddingFile* embeddings,
                                  int fp_radius = kDefaultFingerprintRadius,
                                  std::size_t fp_bits = kDefaultFingerprintBits);

std::vector<Fingerprint> fingerprints(std::span<const MolecularGraph> graphs,
                                      int radius = kDefaultFingerprintRadius,
                                      std::size_t n_bits = kDefaultFingerprintBits);

// Same records with labels permuted by a seeded shuffle (the random control).
TripleDataset shuffle_labels(const TripleDataset& data, std::uint64_t seed);

struct EvalConfig {
  ScorerConfig scorer;
  PairTrainConfig train;
  SplitSpec split;
};

struct EvalRun {
  std::uint64_t seed = 0;
  SplitPlan plan;
  double train_auroc = 0.0;
  double test_auroc = 0.0;
  std::vector<double> train_loss;
  std::optional<PairScorer> model;
};

// Trains a scorer on plan.train and scores both sides. The model and the
// minibatch order use `seed`.
EvalRun train_eval(const PairFeatures& features, const TripleDataset& data, const SplitPlan& plan,
                   const EvalConfig& cfg, std::uint64_t seed);

// Builds the split from cfg.split (random splits use `seed`), then train_eval.
// `fps` is only read for cold splits.
EvalRun train_eval_seeded(const PairFeatures& features, const TripleDataset& data,
                          std::span<const Fingerprint> fps, const EvalConfig& cfg,
                          std::uint64_t seed);

using Metrics = std::map<std::string, double>;

struct RepeatSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<Metrics> runs;              // same order as seeds
  std::map<std::string, MeanStd> summary; // per metric, over runs
};

// Runs `experiment` once per seed, in order. Needs at least two seeds
// (InvalidArgument otherwise).
RepeatSummary repeat_runs(const std::function<Metrics(std::uint64_t)>& experiment,
                          std::span<const std::uint64_t> seeds);

// "0,1,2" -> {0, 1, 2}.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

enum class AblationKind { Dimension, Epochs };

AblationKind parse_ablation_kind(const std::string& text);  // "dimension" | "epochs"
std::string ablation_kind_name(AblationKind kind);

struct AblationPlan {
  AblationKind kind = AblationKind::Dimension;
  std::vector<std::size_t> settings;
  std::vector<std::uint64_t> seeds;
  // Held-fixed skipgram parameter: epochs for a dimension sweep, dimension
  // for an epoch sweep.
  std::size_t fixed = 1000;
};

// Dimension: 8..1024 in powers of two at 1000 epochs. Epochs: 200..2000 step
// 200 at dimension 64. Seeds 0..4.
AblationPlan default_ablation(AblationKind kind);

struct AblationRow {
  std::size_t setting = 0;
  std::uint64_t seed = 0;
  double test_auroc = 0.0;

  friend bool operator==(const AblationRow&, const AblationRow&) = default;
};

struct AblationInputs {
  std::span<const MolecularGraph> graphs;
  const TripleDataset* triples = nullptr;
  const ContextFeatureSet* contexts = nullptr;
  Inducer inducer;
  SkipgramConfig skipgram;  // dim/epochs/seed are overridden per row
  EvalConfig eval;          // split must be random
};

// One row per (setting, seed), settings outermost. Each row retrains the
// embeddings and the scorer with that seed.
std::vector<AblationRow> ablation_sweep(const AblationPlan& plan, const AblationInputs& inputs,
                                        const std::function<void(const AblationRow&)>& on_row = {});

// CSV `setting,seed,test_auroc` with 17 significant digits.
void write_ablation_csv(const std::filesystem::path& path, std::span<const AblationRow> rows);
std::vector<AblationRow> read_ablation_csv(const std::filesystem::path& path);

struct AblationSummaryRow {
  std::size_t setting = 0;
  std::size_t runs = 0;
  MeanStd auroc;
};

// Mean and sample std of test AUROC per setting, ascending by setting.
std::vector<AblationSummaryRow> summarize_ablation(std::span<const AblationRow> rows);

}  // namespace graphdr
