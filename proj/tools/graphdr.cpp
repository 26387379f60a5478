// graphdr: command-line driver for the embedding and pair-scoring pipeline.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "graphdr/error.hpp"
#include "graphdr/experiment.hpp"
#include "graphdr/fingerprint.hpp"
#include "graphdr/molgraph.hpp"
#include "graphdr/pairscore.hpp"
#include "graphdr/simd.hpp"
#include "graphdr/skipgram.hpp"
#include "graphdr/split.hpp"
#include "graphdr/substructure.hpp"
#include "graphdr/synth.hpp"

namespace fs = std::filesystem;
using namespace graphdr;

namespace {

struct StageError {
  std::string stage;
  std::string message;
};

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError{stage, std::string(errc_name(e.code())) + ": " + e.what()};
  } catch (const std::exception& e) {
    throw StageError{stage, e.what()};
  }
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

fs::path prepare_out(const std::string& dir) {
  return staged("output", [&] {
    fs::create_directories(dir);
    return fs::path(dir);
  });
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw StageError{"output", "cannot write '" + path.string() + "'"};
  return out;
}

std::vector<MolecularGraph> load_graphs(const std::string& path) {
  const auto records = staged("read-drugs", [&] { return read_drug_file(path); });
  return staged("parse", [&] { return parse_drugs(records); });
}

ContextFeatureSet load_contexts(const std::string& path, const TripleDataset& triples) {
  return staged("read-contexts", [&] {
    if (!path.empty()) return ContextFeatureSet::read_csv(path);
    const auto ids = triples.context_ids();
    return ContextFeatureSet::one_hot(ids);
  });
}

struct SkipgramFlags {
  std::string inducer = "wl:3";
  SkipgramConfig cfg;
  std::string decay = "linear";

  void attach(CLI::App* app) {
    app->add_option("--inducer", inducer, "Substructure inducer: wl:K or sp")->capture_default_str();
    app->add_option("--dim", cfg.dim, "Embedding dimension z")->capture_default_str();
    app->add_option("--sg-epochs", cfg.epochs, "Skipgram epochs")->capture_default_str();
    app->add_option("--negatives", cfg.negatives, "Negative samples per occurrence")->capture_default_str();
    app->add_option("--sg-lr", cfg.learning_rate, "Skipgram initial learning rate")->capture_default_str();
    app->add_option("--lr-decay", decay, "Skipgram learning-rate schedule: linear or none")
        ->check(CLI::IsMember({"linear", "none"}))
        ->capture_default_str();
    app->add_option("--unigram-exponent", cfg.unigram_exponent,
                    "Exponent applied to pattern counts for negative sampling")
        ->capture_default_str();
  }

  Inducer parsed_inducer() const {
    return staged("flags", [&] { return Inducer::parse(inducer); });
  }

  SkipgramConfig parsed(std::uint64_t seed) const {
    SkipgramConfig out = cfg;
    out.seed = seed;
    out.decay = decay == "none" ? LrDecay::None : LrDecay::Linear;
    staged("flags", [&] { out.validate(); });
    return out;
  }
};

struct ScorerFlags {
  std::string mode = "fp+dr";
  std::string split = "random:0.5";
  bool no_context = false;
  bool both_orders = false;
  PairTrainConfig train;
  ScorerConfig scorer;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "Drug features: fp, dr or fp+dr")
        ->check(CLI::IsMember({"fp", "dr", "fp+dr"}))
        ->capture_default_str();
    app->add_option("--split", split, "Split: random:RATIO or cold")->capture_default_str();
    app->add_flag("--no-context", no_context, "Drop the context encoder");
    app->add_flag("--both-orders", both_orders, "Also train on (b, a, c) for every (a, b, c)");
    app->add_option("--epochs", train.epochs, "Scorer training epochs")->capture_default_str();
    app->add_option("--batch-size", train.batch_size, "Scorer minibatch size")->capture_default_str();
    app->add_option("--lr", train.adam.learning_rate, "Adam learning rate")->capture_default_str();
    app->add_option("--weight-decay", train.adam.weight_decay, "Adam L2 weight decay")
        ->capture_default_str();
    app->add_option("--dropout", scorer.dropout, "Dropout rate after hidden activations")
        ->capture_default_str();
  }

  EvalConfig parsed() const {
    return staged("flags", [&] {
      EvalConfig cfg;
      cfg.scorer = scorer;
      cfg.scorer.mode = parse_feature_mode(mode);
      cfg.scorer.use_context = !no_context;
      cfg.train = train;
      cfg.train.both_orders = both_orders;
      cfg.split = SplitSpec::parse(split);
      if (cfg.train.epochs == 0 || cfg.train.batch_size == 0) {
        throw Error(Errc::InvalidArgument, "--epochs and --batch-size must be positive");
      }
      if (!(cfg.scorer.dropout >= 0.0 && cfg.scorer.dropout < 1.0)) {
        throw Error(Errc::InvalidArgument, "--dropout must be in [0, 1)");
      }
      return cfg;
    });
  }
};

// ---------------------------------------------------------------- subcommands

int cmd_synth(const SynthConfig& cfg, const std::string& out_dir) {
  const SynthDataset data = staged("synth", [&] { return generate_synthetic(cfg); });
  const fs::path dir = prepare_out(out_dir);
  staged("output", [&] {
    write_drug_file(dir / "drugs.tsv", data.drugs);
    write_triples(dir / "triples.csv", data.triples);
  });
  std::size_t positives = 0;
  for (const Triple& t : data.triples.records) positives += t.label;
  std::cout << "drugs      " << data.drugs.size() << "  -> " << (dir / "drugs.tsv").string() << "\n"
            << "triples    " << data.triples.size() << "  -> " << (dir / "triples.csv").string() << "\n"
            << "contexts   " << data.context_ids.size() << "\n"
            << "positives  "
            << fmt("%.4f", static_cast<double>(positives) / static_cast<double>(data.triples.size()))
            << "\n";
  return 0;
}

int cmd_vocab(const std::string& drugs_path, const std::string& inducer_text,
              const std::string& dump_path) {
  const Inducer inducer = staged("flags", [&] { return Inducer::parse(inducer_text); });
  const auto graphs = load_graphs(drugs_path);
  const VocabularyBuild vb = staged("induce", [&] { return build_vocabulary(graphs, inducer); });

  std::size_t min_total = SIZE_MAX, max_total = 0, sum_total = 0;
  for (const PatternMultiset& ms : vb.multisets) {
    std::size_t total = 0;
    for (const auto& [id, c] : ms.counts) total += c;
    min_total = std::min(min_total, total);
    max_total = std::max(max_total, total);
    sum_total += total;
  }
  std::cout << "inducer              " << inducer.tag() << "\n"
            << "drugs |D|            " << graphs.size() << "\n"
            << "vocabulary |V|       " << vb.vocabulary.size() << "\n"
            << "patterns per graph   min " << min_total << "  mean "
            << fmt("%.2f", static_cast<double>(sum_total) / static_cast<double>(graphs.size()))
            << "  max " << max_total << "\n";

  if (!dump_path.empty()) {
    std::ofstream out = open_out(dump_path);
    out << "drug_id";
    for (std::size_t p = 0; p < vb.vocabulary.size(); ++p) out << "\tp" << p;
    out << "\n";
    for (const PatternMultiset& ms : vb.multisets) {
      out << ms.graph_id;
      for (std::int64_t c : frequency_vector(ms, vb.vocabulary)) out << '\t' << c;
      out << "\n";
    }
    std::cout << "frequency vectors -> " << dump_path << "\n";
  }
  return 0;
}

int cmd_embed(const std::string& drugs_path, const SkipgramFlags& flags, std::uint64_t seed,
              const std::string& out_dir) {
  const Inducer inducer = flags.parsed_inducer();
  const SkipgramConfig cfg = flags.parsed(seed);
  const auto graphs = load_graphs(drugs_path);
  const EmbedOutcome result = staged("embed", [&] { return embed_graphs(graphs, inducer, cfg); });
  const fs::path dir = prepare_out(out_dir);
  staged("output", [&] {
    export_embeddings(result.training.table.graphs, result.ids, inducer.tag(), dir / "embeddings.txt");
  });
  {
    std::ofstream out = open_out(dir / "embed_loss.csv");
    out << "epoch,mean_loss\n";
    for (std::size_t e = 0; e < result.training.epoch_loss.size(); ++e) {
      out << e + 1 << ',' << fmt("%.17g", result.training.epoch_loss[e]) << "\n";
    }
  }
  std::cout << "inducer         " << inducer.tag() << "\n"
            << "drugs           " << graphs.size() << "\n"
            << "vocabulary      " << result.vocab.vocabulary.size() << "\n"
            << "occurrences     " << result.corpus.total_occurrences() << " per epoch\n"
            << "sgd steps       " << result.training.events << "\n"
            << "final loss      "
            << fmt("%.6f", result.training.epoch_loss.empty() ? 0.0 : result.training.epoch_loss.back())
            << "\n"
            << "embeddings   -> " << (dir / "embeddings.txt").string() << "\n";
  return 0;
}

int cmd_fp(const std::string& drugs_path, int radius, std::size_t bits, const std::string& out_dir) {
  const auto graphs = load_graphs(drugs_path);
  const auto fps = staged("fingerprint", [&] { return fingerprints(graphs, radius, bits); });
  const fs::path dir = prepare_out(out_dir);
  std::ofstream out = open_out(dir / "fingerprints.tsv");
  out << "# drug_id\tbits (radius " << radius << ", " << bits << " bits)\n";
  for (const Fingerprint& fp : fps) {
    out << fp.drug_id << '\t';
    for (std::size_t b = 0; b < fp.n_bits; ++b) out << (fp.test(b) ? '1' : '0');
    out << "\n";
  }
  std::cout << "fingerprints " << fps.size() << " -> " << (dir / "fingerprints.tsv").string() << "\n";
  return 0;
}

void print_split(const SplitPlan& plan) {
  if (plan.kind == SplitKind::Cold) {
    std::cout << "|A| " << plan.set_a.size() << "  |B| " << plan.set_b.size() << "  ";
  }
  std::cout << "|Y_train| " << plan.train.size() << "  |Y_test| " << plan.test.size() << "\n";
}

int cmd_split(const std::string& triples_path, const std::string& drugs_path,
              const std::string& split_text, std::uint64_t seed, const std::string& out_dir) {
  const SplitSpec spec = staged("flags", [&] { return SplitSpec::parse(split_text); });
  const TripleDataset data = staged("read-triples", [&] { return read_triples(triples_path); });
  SplitPlan plan;
  if (spec.kind == SplitKind::Cold) {
    if (drugs_path.empty()) throw StageError{"flags", "cold split needs --drugs"};
    const auto graphs = load_graphs(drugs_path);
    const auto fps = staged("fingerprint", [&] { return fingerprints(graphs); });
    plan = staged("split", [&] { return cold_split(fps, data); });
  } else {
    plan = staged("split", [&] { return random_split(data, spec.ratio, seed); });
  }
  const fs::path dir = prepare_out(out_dir);
  std::vector<const char*> side(data.size(), "test");
  for (std::size_t i : plan.train) side[i] = "train";
  std::ofstream out = open_out(dir / "split.csv");
  out << "index,set\n";
  for (std::size_t i = 0; i < side.size(); ++i) out << i << ',' << side[i] << "\n";
  if (plan.kind == SplitKind::Cold) {
    std::ofstream sets = open_out(dir / "cold_sets.tsv");
    sets << "drug_id\tset\n";
    for (const auto& id : plan.set_a) sets << id << "\tA\n";
    for (const auto& id : plan.set_b) sets << id << "\tB\n";
  }
  std::cout << "split " << spec.tag() << "  ";
  print_split(plan);
  std::cout << "assignments -> " << (dir / "split.csv").string() << "\n";
  return 0;
}

int cmd_train_eval(const std::string& triples_path, const std::string& drugs_path,
                   const std::string& embeddings_path, const std::string& contexts_path,
                   const ScorerFlags& flags, const std::string& seeds_text, bool save_models,
                   const std::string& out_dir) {
  const EvalConfig cfg = flags.parsed();
  const auto seeds = staged("flags", [&] { return parse_seed_list(seeds_text); });
  if (cfg.scorer.mode != FeatureMode::FP && embeddings_path.empty()) {
    throw StageError{"flags", "--mode " + flags.mode + " needs --embeddings"};
  }
  const TripleDataset data = staged("read-triples", [&] { return read_triples(triples_path); });
  const auto graphs = load_graphs(drugs_path);
  std::optional<EmbeddingFile> embeddings;
  if (!embeddings_path.empty()) {
    embeddings = staged("read-embeddings", [&] { return import_embeddings(embeddings_path); });
  }
  const ContextFeatureSet contexts = load_contexts(contexts_path, data);
  const PairFeatures features = staged("features", [&] {
    const DrugFeatureSet drugs = make_drug_features(graphs, embeddings ? &*embeddings : nullptr);
    return assemble_features(drugs, contexts, cfg.scorer.mode);
  });
  const auto fps = staged("fingerprint", [&] { return fingerprints(graphs); });
  const fs::path dir = prepare_out(out_dir);

  std::vector<EvalRun> runs;
  const auto one = [&](std::uint64_t seed) {
    EvalRun run = staged("train-eval", [&] { return train_eval_seeded(features, data, fps, cfg, seed); });
    std::cout << "seed " << seed << "  ";
    print_split(run.plan);
    std::cout << "  train AUROC " << fmt("%.4f", run.train_auroc) << "  test AUROC "
              << fmt("%.4f", run.test_auroc) << "\n";
    if (save_models) {
      const fs::path path = dir / ("model_seed" + std::to_string(seed) + ".txt");
      staged("output", [&] { save_checkpoint(*run.model, path); });
    }
    Metrics m{{"train_auroc", run.train_auroc}, {"test_auroc", run.test_auroc}};
    runs.push_back(std::move(run));
    return m;
  };

  RepeatSummary summary;
  if (seeds.size() >= 2) {
    summary = repeat_runs(one, seeds);
  } else {
    summary.seeds = seeds;
    summary.runs.push_back(one(seeds.front()));
    for (const auto& [k, v] : summary.runs.front()) summary.summary[k] = MeanStd{v, 0.0};
  }

  std::ofstream out = open_out(dir / "metrics.csv");
  out << "seed,n_train,n_test,train_auroc,test_auroc\n";
  for (const EvalRun& r : runs) {
    out << r.seed << ',' << r.plan.train.size() << ',' << r.plan.test.size() << ','
        << fmt("%.17g", r.train_auroc) << ',' << fmt("%.17g", r.test_auroc) << "\n";
  }
  std::ofstream table = open_out(dir / "summary.txt");
  for (std::ostream* os : {static_cast<std::ostream*>(&std::cout), static_cast<std::ostream*>(&table)}) {
    *os << "mode " << feature_mode_name(cfg.scorer.mode) << "  split " << cfg.split.tag()
        << "  runs " << runs.size() << "\n";
    for (const auto& [name, ms] : summary.summary) {
      *os << "  " << name << "  " << fmt("%.4f", ms.mean) << " +- " << fmt("%.4f", ms.std) << "\n";
    }
  }
  std::cout << "metrics -> " << (dir / "metrics.csv").string() << "\n";
  return 0;
}

int cmd_ablate(const std::string& kind_text, const std::string& triples_path,
               const std::string& drugs_path, const std::string& contexts_path,
               const SkipgramFlags& sg_flags, const ScorerFlags& sc_flags,
               const std::string& seeds_text, const std::string& out_dir) {
  const AblationKind kind = staged("flags", [&] { return parse_ablation_kind(kind_text); });
  AblationPlan plan = default_ablation(kind);
  if (!seeds_text.empty()) plan.seeds = staged("flags", [&] { return parse_seed_list(seeds_text); });

  AblationInputs inputs;
  inputs.inducer = sg_flags.parsed_inducer();
  inputs.skipgram = sg_flags.parsed(0);
  inputs.eval = sc_flags.parsed();
  if (inputs.eval.split.kind != SplitKind::Random) {
    throw StageError{"flags", "ablation sweeps use random splits"};
  }
  if (inputs.eval.scorer.mode == FeatureMode::FP) {
    throw StageError{"flags", "ablation sweeps vary the embeddings; use --mode dr or fp+dr"};
  }
  const TripleDataset data = staged("read-triples", [&] { return read_triples(triples_path); });
  const auto graphs = load_graphs(drugs_path);
  const ContextFeatureSet contexts = load_contexts(contexts_path, data);
  inputs.graphs = graphs;
  inputs.triples = &data;
  inputs.contexts = &contexts;

  const fs::path dir = prepare_out(out_dir);
  const auto rows = staged("ablate", [&] {
    return ablation_sweep(plan, inputs, [&](const AblationRow& r) {
      std::cout << ablation_kind_name(kind) << ' ' << r.setting << "  seed " << r.seed
                << "  test AUROC " << fmt("%.4f", r.test_auroc) << std::endl;
    });
  });
  const fs::path csv = dir / ("ablation_" + ablation_kind_name(kind) + ".csv");
  staged("output", [&] { write_ablation_csv(csv, rows); });
  std::cout << "rows " << rows.size() << " -> " << csv.string() << "\n";
  return 0;
}

int cmd_summarize(const std::string& in_path, const std::string& out_path) {
  const auto rows = staged("read-ablation", [&] { return read_ablation_csv(in_path); });
  const auto summary = summarize_ablation(rows);
  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  if (file.is_open()) file << "setting,runs,mean_test_auroc,std_test_auroc\n";
  std::cout << "setting  runs  mean     std\n";
  for (const AblationSummaryRow& s : summary) {
    std::printf("%7zu  %4zu  %.4f  %.4f\n", s.setting, s.runs, s.auroc.mean, s.auroc.std);
    if (file.is_open()) {
      file << s.setting << ',' << s.runs << ',' << fmt("%.17g", s.auroc.mean) << ','
           << fmt("%.17g", s.auroc.std) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphdr: skipgram representations of molecular graphs and drug pair scoring"};
  app.require_subcommand(1);
  std::string backend;
  app.add_option("--simd", backend, "Kernel backend override: scalar, avx2 or neon");

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::string drugs_path, triples_path, embeddings_path, contexts_path;

  // synth
  SynthConfig synth_cfg;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic drug set and labeled triples");
  synth->add_option("--n-drugs", synth_cfg.n_drugs, "Number of drugs (>= 10)")->capture_default_str();
  synth->add_option("--n-contexts", synth_cfg.n_contexts, "Number of contexts")->capture_default_str();
  synth->add_option("--n-triples", synth_cfg.n_triples, "Number of triples")->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "Random seed")->capture_default_str();
  synth->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // vocab
  std::string vocab_inducer = "wl:3";
  std::string dump_path;
  auto* vocab = app.add_subcommand("vocab", "Report the substructure vocabulary of a drug file");
  vocab->add_option("--drugs", drugs_path, "Drug file (<id>\\t<smiles>)")->required();
  vocab->add_option("--inducer", vocab_inducer, "Substructure inducer: wl:K or sp")->capture_default_str();
  vocab->add_option("--dump", dump_path, "Write frequency vectors as TSV");

  // embed
  SkipgramFlags embed_flags;
  auto* embed = app.add_subcommand("embed", "Learn skipgram drug embeddings");
  embed->add_option("--drugs", drugs_path, "Drug file (<id>\\t<smiles>)")->required();
  embed_flags.attach(embed);
  embed->add_option("--seed", seed, "Random seed")->capture_default_str();
  embed->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // fp
  int fp_radius = kDefaultFingerprintRadius;
  std::size_t fp_bits = kDefaultFingerprintBits;
  auto* fp = app.add_subcommand("fp", "Compute folded circular fingerprints");
  fp->add_option("--drugs", drugs_path, "Drug file (<id>\\t<smiles>)")->required();
  fp->add_option("--radius", fp_radius, "Fingerprint radius")->capture_default_str();
  fp->add_option("--bits", fp_bits, "Fingerprint length (power of two)")->capture_default_str();
  fp->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // split
  std::string split_text = "random:0.5";
  auto* split = app.add_subcommand("split", "Partition a triple file into train and test");
  split->add_option("--triples", triples_path, "Triple CSV")->required();
  split->add_option("--drugs", drugs_path, "Drug file (needed for cold splits)");
  split->add_option("--split", split_text, "Split: random:RATIO or cold")->capture_default_str();
  split->add_option("--seed", seed, "Random seed")->capture_default_str();
  split->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // train-eval
  ScorerFlags te_flags;
  std::string seeds_text = "0,1,2,3,4";
  bool save_models = false;
  auto* te = app.add_subcommand("train-eval", "Train and evaluate the pair scorer over seeds");
  te->add_option("--triples", triples_path, "Triple CSV")->required();
  te->add_option("--drugs", drugs_path, "Drug file (<id>\\t<smiles>)")->required();
  te->add_option("--embeddings", embeddings_path, "Embedding file from `embed` (dr and fp+dr modes)");
  te->add_option("--contexts", contexts_path, "Context feature CSV (default: one-hot)");
  te_flags.attach(te);
  te->add_option("--seeds", seeds_text, "Comma-separated seeds")->capture_default_str();
  te->add_option("--out", out_dir, "Output directory")->capture_default_str();
  te->add_flag("--save-models", save_models, "Write one scorer checkpoint per seed");

  // ablate
  std::string ablate_kind = "dimension";
  std::string ablate_seeds;
  SkipgramFlags ab_sg;
  ScorerFlags ab_sc;
  auto* ablate = app.add_subcommand("ablate", "Embedding dimension or epoch sweep");
  ablate->add_option("--kind", ablate_kind, "dimension or epochs")->capture_default_str();
  ablate->add_option("--triples", triples_path, "Triple CSV")->required();
  ablate->add_option("--drugs", drugs_path, "Drug file (<id>\\t<smiles>)")->required();
  ablate->add_option("--contexts", contexts_path, "Context feature CSV (default: one-hot)");
  ab_sg.attach(ablate);
  ab_sc.attach(ablate);
  ablate->add_option("--seeds", ablate_seeds, "Comma-separated seeds (default 0,1,2,3,4)");
  ablate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  // summarize
  std::string summary_in, summary_out;
  auto* summarize = app.add_subcommand("summarize", "Mean and std of an ablation CSV per setting");
  summarize->add_option("--in", summary_in, "Ablation CSV")->required();
  summarize->add_option("--out", summary_out, "Write the summary as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!backend.empty()) {
      staged("flags", [&] {
        if (backend == "scalar") simd::set_backend(simd::Backend::Scalar);
        else if (backend == "avx2") simd::set_backend(simd::Backend::Avx2);
        else if (backend == "neon") simd::set_backend(simd::Backend::Neon);
        else throw Error(Errc::InvalidArgument, "unknown --simd backend '" + backend + "'");
      });
    }
    if (*synth) return cmd_synth(synth_cfg, out_dir);
    if (*vocab) return cmd_vocab(drugs_path, vocab_inducer, dump_path);
    if (*embed) return cmd_embed(drugs_path, embed_flags, seed, out_dir);
    if (*fp) return cmd_fp(drugs_path, fp_radius, fp_bits, out_dir);
    if (*split) return cmd_split(triples_path, drugs_path, split_text, seed, out_dir);
    if (*te) {
      return cmd_train_eval(triples_path, drugs_path, embeddings_path, contexts_path, te_flags,
                            seeds_text, save_models, out_dir);
    }
    if (*ablate) {
      return cmd_ablate(ablate_kind, triples_path, drugs_path, contexts_path, ab_sg, ab_sc,
                        ablate_seeds, out_dir);
    }
    if (*summarize) return cmd_summarize(summary_in, summary_out);
  } catch (const StageError& e) {
    std::cerr << "graphdr: error [" << e.stage << "] " << e.message << "\n";
    return 1;
  }
  return 1;
}
