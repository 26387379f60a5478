#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "graphdr/corpus.hpp"
#include "graphdr/matrix.hpp"

namespace graphdr {

enum class LrDecay { None, Linear };

inline constexpr double kMinSkipgramLearningRate = 1e-4;

struct SkipgramConfig {
  std::size_t dim = 64;
  std::size_t epochs = 1000;
  std::size_t negatives = kDefaultNegatives;
  double learning_rate = 0.025;
  LrDecay decay = LrDecay::Linear;
  std::uint64_t seed = 0;
  double unigram_exponent = 1.0;

  // Throws InvalidArgument on the first violated bound.
  void validate() const;
};

// Graph embeddings (one row per corpus graph) and pattern context vectors
// (one row per vocabulary id). Only the graph rows are ever exported.
struct EmbeddingTable {
  Matrix graphs;
  Matrix patterns;

  std::size_t dim() const noexcept { return graphs.cols(); }
};

// Graph rows i.i.d. uniform on (-0.5/z, 0.5/z); pattern rows zero.
EmbeddingTable init_embeddings(std::size_t n_graphs, std::size_t vocab_size, std::size_t dim,
                               std::uint64_t seed);

double sigmoid(double x) noexcept;
// ln(sigmoid(x)) without overflow for large |x|.
double log_sigmoid(double x) noexcept;

struct PairLossGrad {
  double loss = 0.0;
  std::vector<double> graph;                  // d loss / d graph row
  std::vector<double> positive;               // d loss / d positive pattern row
  std::vector<std::vector<double>> negatives; // d loss / d each negative row
};

// loss = -ln s(g.s+) - sum_j ln s(-g.s-_j) for one positive occurrence and its
// negative draws. Minimizing it maximizes the negative-sampling objective.
PairLossGrad pair_loss_grad(std::span<const double> graph, std::span<const double> positive,
                            std::span<const std::span<const double>> negatives);

struct SkipgramResult {
  EmbeddingTable table;
  std::vector<double> epoch_loss;  // mean per-event loss of each epoch
  std::size_t events = 0;          // SGD steps taken
  double first_event_loss = 0.0;
};

// Plain SGD over occurrence events. Each corpus entry is replicated
// `multiplicity` times per epoch, events are shuffled with the seeded stream
// and each event draws its own negatives. Single-threaded and bit-exact
// deterministic for a fixed (corpus, config).
SkipgramResult train_skipgram(const Corpus& corpus, const UnigramTable& table,
                              const SkipgramConfig& cfg);

struct EmbeddingFile {
  std::vector<std::string> ids;
  Matrix matrix;
  std::string inducer_tag;
};

// Text format: header `graphdr-embeddings v1 <n> <z> <inducer-tag>`, then one
// `<drug_id>\t<v1> ... <vz>` line per row with 17 significant digits.
void export_embeddings(const Matrix& graphs, std::span<const std::string> ids,
                       const std::string& inducer_tag, const std::filesystem::path& path);
EmbeddingFile import_embeddings(const std::filesystem::path& path);

}  // namespace graphdr
