#include "graphdr/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "graphdr/error.hpp"
#include "graphdr/random.hpp"

namespace graphdr {

EmbedOutcome embed_graphs(std::span<const MolecularGraph> graphs, const Inducer& inducer,
                          const SkipgramConfig& cfg) {
  cfg.validate();
  EmbedOutcome out;
  out.vocab = build_vocabulary(graphs, inducer);
  out.corpus = build_corpus(out.vocab.multisets, out.vocab.vocabulary);
  const UnigramTable table = unigram_distribution(out.corpus, cfg.unigram_exponent);
  out.training = train_skipgram(out.corpus, table, cfg);
  for (const MolecularGraph& g : graphs) out.ids.push_back(g.source_id());
  return out;
}

std::vector<Fingerprint> fingerprints(std::span<const MolecularGraph> graphs, int radius,
                                      std::size_t n_bits) {
  std::vector<Fingerprint> out;
  out.reserve(graphs.size());
  for (const MolecularGraph& g : graphs) out.push_back(morgan_fingerprint(g, radius, n_bits));
  return out;
}

DrugFeatureSet make_drug_features(std::span<const MolecularGraph> graphs,
                                  const EmbeddingFile* embeddings, int fp_radius,
                                  std::size_t fp_bits) {
  DrugFeatureSet set;
  for (const MolecularGraph& g : graphs) {
    set.set_fingerprint(g.source_id(), morgan_fingerprint(g, fp_radius, fp_bits).as_features());
  }
  if (embeddings != nullptr) {
    for (std::size_t r = 0; r < embeddings->ids.size(); ++r) {
      const std::string& id = embeddings->ids[r];
      if (!set.contains(id)) continue;
      const auto row = embeddings->matrix.row(r);
      set.set_embedding(id, std::vector<double>(row.begin(), row.end()));
    }
  }
  return set;
}

TripleDataset shuffle_labels(const TripleDataset& data, std::uint64_t seed) {
  std::vector<int> labels = data.labels();
  Rng rng(seed);
  rng.shuffle(std::span<int>(labels));
  TripleDataset out = data;
  for (std::size_t i = 0; i < labels.size(); ++i) out.records[i].label = labels[i];
  return out;
}

EvalRun train_eval(const PairFeatures& features, const TripleDataset& data, const SplitPlan& plan,
                   const EvalConfig& cfg, std::uint64_t seed) {
  const std::vector<EncodedTriple> all = encode_triples(data, features);
  std::vector<EncodedTriple> train;
  std::vector<EncodedTriple> test;
  for (std::size_t i : plan.train) train.push_back(all.at(i));
  for (std::size_t i : plan.test) test.push_back(all.at(i));
  if (train.empty()) throw Error(Errc::EmptyTrainingSet, "split left no training triples");

  PairTrainConfig tc = cfg.train;
  tc.seed = seed;
  PairTrainResult trained = train_pairscore(features, train, {}, cfg.scorer, tc);

  const auto labels_of = [](std::span<const EncodedTriple> rows) {
    std::vector<int> y;
    y.reserve(rows.size());
    for (const EncodedTriple& t : rows) y.push_back(t.label > 0.5 ? 1 : 0);
    return y;
  };

  EvalRun run;
  run.seed = seed;
  run.plan = plan;
  run.train_loss = std::move(trained.train_loss);
  run.train_auroc = auroc(predict(trained.model, features, train), labels_of(train));
  run.test_auroc = auroc(predict(trained.model, features, test), labels_of(test));
  run.model = std::move(trained.model);
  return run;
}

EvalRun train_eval_seeded(const PairFeatures& features, const TripleDataset& data,
                          std::span<const Fingerprint> fps, const EvalConfig& cfg,
                          std::uint64_t seed) {
  const SplitPlan plan = cfg.split.kind == SplitKind::Cold
                             ? cold_split(fps, data)
                             : random_split(data, cfg.split.ratio, seed);
  return train_eval(features, data, plan, cfg, seed);
}

RepeatSummary repeat_runs(const std::function<Metrics(std::uint64_t)>& experiment,
                          std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 2) {
    throw Error(Errc::InvalidArgument, "repeated runs need at least 2 seeds");
  }
  RepeatSummary out;
  out.seeds.assign(seeds.begin(), seeds.end());
  std::map<std::string, std::vector<double>> values;
  for (std::uint64_t seed : seeds) {
    Metrics m = experiment(seed);
    for (const auto& [name, v] : m) values[name].push_back(v);
    out.runs.push_back(std::move(m));
  }
  for (const auto& [name, v] : values) out.summary[name] = mean_std(v);
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0' || item[0] == '-') {
      throw Error(Errc::InvalidArgument, "invalid seed '" + item + "' in '" + text + "'");
    }
    seeds.push_back(v);
  }
  if (seeds.empty() || text.back() == ',') {
    throw Error(Errc::InvalidArgument, "invalid seed list '" + text + "'");
  }
  return seeds;
}

AblationKind parse_ablation_kind(const std::string& text) {
  if (text == "dimension") return AblationKind::Dimension;
  if (text == "epochs") return AblationKind::Epochs;
  throw Error(Errc::InvalidArgument,
              "unknown ablation '" + text + "' (expected dimension or epochs)");
}

std::string ablation_kind_name(AblationKind kind) {
  return kind == AblationKind::Dimension ? "dimension" : "epochs";
}

AblationPlan default_ablation(AblationKind kind) {
  AblationPlan plan;
  plan.kind = kind;
  plan.seeds = {0, 1, 2, 3, 4};
  if (kind == AblationKind::Dimension) {
    for (std::size_t z = 8; z <= 1024; z *= 2) plan.settings.push_back(z);
    plan.fixed = 1000;
  } else {
    for (std::size_t e = 200; e <= 2000; e += 200) plan.settings.push_back(e);
    plan.fixed = 64;
  }
  return plan;
}

std::vector<AblationRow> ablation_sweep(const AblationPlan& plan, const AblationInputs& inputs,
                                        const std::function<void(const AblationRow&)>& on_row) {
  if (inputs.triples == nullptr || inputs.contexts == nullptr) {
    throw Error(Errc::InvalidArgument, "ablation needs triples and context features");
  }
  if (inputs.eval.split.kind != SplitKind::Random) {
    throw Error(Errc::InvalidArgument, "ablation sweeps use random splits");
  }
  std::vector<AblationRow> rows;
  for (std::size_t setting : plan.settings) {
    for (std::uint64_t seed : plan.seeds) {
      SkipgramConfig sg = inputs.skipgram;
      sg.seed = seed;
      if (plan.kind == AblationKind::Dimension) {
        sg.dim = setting;
        sg.epochs = plan.fixed;
      } else {
        sg.dim = plan.fixed;
        sg.epochs = setting;
      }
      const EmbedOutcome embedded = embed_graphs(inputs.graphs, inputs.inducer, sg);
      const EmbeddingFile file{embedded.ids, embedded.training.table.graphs, inputs.inducer.tag()};
      const DrugFeatureSet drugs = make_drug_features(inputs.graphs, &file);
      const PairFeatures features =
          assemble_features(drugs, *inputs.contexts, inputs.eval.scorer.mode);
      const EvalRun run = train_eval_seeded(features, *inputs.triples, {}, inputs.eval, seed);
      rows.push_back(AblationRow{setting, seed, run.test_auroc});
      if (on_row) on_row(rows.back());
    }
  }
  return rows;
}

void write_ablation_csv(const std::filesystem::path& path, std::span<const AblationRow> rows) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Io, "cannot write '" + path.string() + "'");
  out << "setting,seed,test_auroc\n";
  char buf[64];
  for (const AblationRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.test_auroc);
    out << r.setting << ',' << r.seed << ',' << buf << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing '" + path.string() + "'");
}

std::vector<AblationRow> read_ablation_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting,seed,test_auroc") {
    throw Error(Errc::MalformedInput, path.string() + ": expected header setting,seed,test_auroc", 1);
  }
  std::vector<AblationRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    AblationRow r;
    unsigned long long setting = 0;
    unsigned long long seed = 0;
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%llu,%llu,%lg%n", &setting, &seed, &r.test_auroc, &consumed) != 3 ||
        static_cast<std::size_t>(consumed) != line.size()) {
      throw Error(Errc::MalformedInput,
                  path.string() + ":" + std::to_string(lineno) + ": malformed row", lineno);
    }
    r.setting = setting;
    r.seed = seed;
    rows.push_back(r);
  }
  return rows;
}

std::vector<AblationSummaryRow> summarize_ablation(std::span<const AblationRow> rows) {
  std::map<std::size_t, std::vector<double>> by_setting;
  for (const AblationRow& r : rows) by_setting[r.setting].push_back(r.test_auroc);
  std::vector<AblationSummaryRow> out;
  for (const auto& [setting, values] : by_setting) {
    out.push_back(AblationSummaryRow{setting, values.size(), mean_std(values)});
  }
  return out;
}

}  // namespace graphdr
