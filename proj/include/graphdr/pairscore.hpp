#pragma once

// Encoder-decoder drug pair scoring: a shared drug encoder, a context
// encoder and an MLP head over [h_a, h_b, h_c], trained with binary cross
// entropy and Adam.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "graphdr/matrix.hpp"
#include "graphdr/random.hpp"

namespace graphdr {

enum class FeatureMode { FP, DR, FPDR };

FeatureMode parse_feature_mode(std::string_view text);  // "fp" | "dr" | "fp+dr"
std::string_view feature_mode_name(FeatureMode mode) noexcept;

struct DrugFeatures {
  std::vector<double> fingerprint;
  std::vector<double> embedding;  // empty when no embedding is known
};

class DrugFeatureSet {
 public:
  void set_fingerprint(const std::string& drug_id, std::vector<double> x);
  // All embeddings must share one dimension (DimensionMismatch otherwise).
  void set_embedding(const std::string& drug_id, std::vector<double> phi);

  bool contains(const std::string& drug_id) const { return drugs_.count(drug_id) != 0; }
  const DrugFeatures& at(const std::string& drug_id) const;  // UnknownDrug
  std::size_t size() const noexcept { return drugs_.size(); }
  std::size_t embedding_dim() const noexcept { return embedding_dim_; }
  std::size_t fingerprint_dim() const noexcept { return fingerprint_dim_; }
  std::vector<std::string> ids() const;  // sorted

 private:
  std::map<std::string, DrugFeatures> drugs_;
  std::size_t embedding_dim_ = 0;
  std::size_t fingerprint_dim_ = 0;
};

class ContextFeatureSet {
 public:
  // One-hot over the given ids, in the given order.
  static ContextFeatureSet one_hot(std::span<const std::string> context_ids);
  // CSV `context,<f1>,...,<fm>` with a header row.
  static ContextFeatureSet read_csv(const std::filesystem::path& path);

  void set(const std::string& context_id, std::vector<double> x);
  const std::vector<double>& at(const std::string& context_id) const;  // UnknownContext
  bool contains(const std::string& context_id) const { return contexts_.count(context_id) != 0; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return contexts_.size(); }
  std::vector<std::string> ids() const;  // sorted

 private:
  std::map<std::string, std::vector<double>> contexts_;
  std::size_t dim_ = 0;
};

struct Triple {
  std::string drug_a;
  std::string drug_b;
  std::string context;
  int label = 0;
};

struct TripleDataset {
  std::vector<Triple> records;

  std::size_t size() const noexcept { return records.size(); }
  std::vector<std::string> context_ids() const;  // sorted unique
  std::vector<std::string> drug_ids() const;      // sorted unique
  std::vector<int> labels() const;
  TripleDataset subset(std::span<const std::size_t> indices) const;
};

// CSV with header `drug_a,drug_b,context,label`.
TripleDataset read_triples(const std::filesystem::path& path);
void write_triples(const std::filesystem::path& path, const TripleDataset& data);

struct PairInput {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

// FP -> x, DR -> phi, FP+DR -> x || phi for each drug; context vector as is.
PairInput assemble_input(const Triple& t, const DrugFeatureSet& drugs,
                         const ContextFeatureSet& contexts, FeatureMode mode);

// Dense, index-based view of assembled features: one row per drug and per
// context, so each input vector is materialized once.
struct PairFeatures {
  Matrix drugs;
  Matrix contexts;
  std::vector<std::string> drug_ids;
  std::vector<std::string> context_ids;
  std::unordered_map<std::string, std::uint32_t> drug_index;
  std::unordered_map<std::string, std::uint32_t> context_index;
  // Drugs left out because the mode needs an embedding they lack (sorted).
  std::vector<std::string> missing_embedding;
};

PairFeatures assemble_features(const DrugFeatureSet& drugs, const ContextFeatureSet& contexts,
                               FeatureMode mode);

struct EncodedTriple {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t c = 0;
  double label = 0.0;
};

// Throws UnknownDrug / UnknownContext naming the offending record.
std::vector<EncodedTriple> encode_triples(const TripleDataset& data, const PairFeatures& features);

struct ScorerConfig {
  FeatureMode mode = FeatureMode::FPDR;
  std::size_t drug_hidden = 128;
  std::size_t context_hidden = 128;
  std::vector<std::size_t> head_hidden = {32, 32, 32};
  double dropout = 0.5;
  bool use_context = true;

  friend bool operator==(const ScorerConfig&, const ScorerConfig&) = default;
};

struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t weight_offset = 0;  // out x in, row-major
  std::size_t bias_offset = 0;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

class PairScorer {
 public:
  // Weights uniform in +-1/sqrt(fan_in), biases zero.
  PairScorer(ScorerConfig cfg, std::size_t drug_input_dim, std::size_t context_input_dim,
             std::uint64_t seed);

  const ScorerConfig& config() const noexcept { return cfg_; }
  std::size_t drug_input_dim() const noexcept { return drug_encoder_.in; }
  std::size_t context_input_dim() const noexcept { return context_encoder_.in; }

  const DenseLayer& drug_encoder() const noexcept { return drug_encoder_; }
  const DenseLayer& context_encoder() const noexcept { return context_encoder_; }
  const std::vector<DenseLayer>& head() const noexcept { return head_; }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }
  std::size_t parameter_count() const noexcept { return params_.size(); }

  std::span<const double> weights(const DenseLayer& l) const {
    return std::span<const double>(params_).subspan(l.weight_offset, l.in * l.out);
  }
  std::span<const double> bias(const DenseLayer& l) const {
    return std::span<const double>(params_).subspan(l.bias_offset, l.out);
  }

  friend bool operator==(const PairScorer&, const PairScorer&) = default;

 private:
  DenseLayer add_layer(std::size_t in, std::size_t out);

  ScorerConfig cfg_;
  DenseLayer drug_encoder_;
  DenseLayer context_encoder_;
  std::vector<DenseLayer> head_;
  std::vector<double> params_;
};

// Numerically stable BCE from a logit.
double bce_with_logit(double logit, double label) noexcept;
// BCE from a probability in (0, 1); the probability is clamped away from 0 and 1.
double bce_loss(double prob, double label) noexcept;

// Single-example score in (0, 1). Dropout masks are drawn from `rng` only when
// `train` is set.
double forward(const PairScorer& model, std::span<const double> xa, std::span<const double> xb,
               std::span<const double> xc, bool train, Rng* rng);

// Mean BCE over `batch`. When `grad` is non-empty (size parameter_count())
// the exact gradient of that mean is added to it.
double batch_loss_grad(const PairScorer& model, const PairFeatures& features,
                       std::span<const EncodedTriple> batch, bool train, Rng* rng,
                       std::span<double> grad);

// Inference-mode logits, order preserving.
std::vector<double> batch_logits(const PairScorer& model, const PairFeatures& features,
                                 std::span<const EncodedTriple> batch);

struct AdamConfig {
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double epsilon = 1e-7;
  double weight_decay = 1e-5;
};

// Adam with bias correction; weight decay is coupled L2 (g += lambda * theta)
// applied before the moment updates.
class AdamState {
 public:
  AdamState(std::size_t n_params, AdamConfig cfg);

  void step(std::span<double> params, std::span<const double> grads);

  const AdamConfig& config() const noexcept { return cfg_; }
  std::size_t steps() const noexcept { return t_; }
  std::span<const double> first_moment() const noexcept { return m_; }
  std::span<const double> second_moment() const noexcept { return v_; }

 private:
  AdamConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::size_t t_ = 0;
};

struct PairTrainConfig {
  std::size_t epochs = 250;
  std::size_t batch_size = 8192;
  AdamConfig adam;
  std::uint64_t seed = 0;
  // Also train on (b, a, c) for every (a, b, c).
  bool both_orders = false;
};

struct PairTrainResult {
  PairScorer model;
  std::vector<double> train_loss;      // per-epoch mean of batch losses
  std::vector<double> validation_auroc;  // empty without a validation set
};

PairTrainResult train_pairscore(const PairFeatures& features, std::span<const EncodedTriple> train,
                                std::span<const EncodedTriple> validation, const ScorerConfig& cfg,
                                const PairTrainConfig& train_cfg);

// Scores in (0, 1) for each triple, order preserving.
std::vector<double> predict(const PairScorer& model, const PairFeatures& features,
                            std::span<const EncodedTriple> triples);

void save_checkpoint(const PairScorer& model, const std::filesystem::path& path);
PairScorer load_checkpoint(const std::filesystem::path& path);

}  // namespace graphdr
