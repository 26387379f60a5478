#include "graphdr/skipgram.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphdr/error.hpp"
#include "graphdr/random.hpp"
#include "graphdr/simd.hpp"

namespace graphdr {

void SkipgramConfig::validate() const {
  if (dim < 1) throw Error(Errc::InvalidArgument, "embedding dimension must be >= 1");
  if (epochs < 1) throw Error(Errc::InvalidArgument, "skipgram epochs must be >= 1");
  if (negatives < 1) throw Error(Errc::InvalidArgument, "negative samples must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(Errc::InvalidArgument, "learning rate must be > 0");
  if (!(unigram_exponent > 0.0)) throw Error(Errc::InvalidArgument, "unigram exponent must be > 0");
}

EmbeddingTable init_embeddings(std::size_t n_graphs, std::size_t vocab_size, std::size_t dim,
                               std::uint64_t seed) {
  if (n_graphs < 1 || vocab_size < 1 || dim < 1) {
    throw Error(Errc::InvalidArgument, "embedding table sizes must be >= 1");
  }
  EmbeddingTable t{Matrix(n_graphs, dim), Matrix(vocab_size, dim)};
  Rng rng(seed);
  const double half_width = 0.5 / static_cast<double>(dim);
  for (double& v : t.graphs.data()) {
    // Open interval: redraw the (measure-zero) lower endpoint.
    double u;
    do {
      u = rng.uniform();
    } while (u == 0.0);
    v = (2.0 * u - 1.0) * half_width;
  }
  return t;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) noexcept {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

namespace {

// sigmoid(x), ln sigmoid(x) and ln sigmoid(-x) from one exp and one log1p.
// Bit-identical to the standalone functions.
struct SigmoidTerms {
  double sig;
  double log_sig;
  double log_sig_neg;
};

SigmoidTerms sigmoid_terms(double x) noexcept {
  const bool nonneg = x >= 0.0;
  const double e = std::exp(nonneg ? -x : x);
  const double l = std::log1p(e);
  SigmoidTerms t;
  t.sig = nonneg ? 1.0 / (1.0 + e) : e / (1.0 + e);
  t.log_sig = nonneg ? -l : x - l;
  t.log_sig_neg = -x >= 0.0 ? -l : -x - l;
  return t;
}

}  // namespace

PairLossGrad pair_loss_grad(std::span<const double> graph, std::span<const double> positive,
                            std::span<const std::span<const double>> negatives) {
  const std::size_t z = graph.size();
  if (positive.size() != z) throw Error(Errc::ShapeMismatch, "positive row has wrong dimension");
  PairLossGrad out;
  out.graph.assign(z, 0.0);
  out.positive.assign(z, 0.0);

  const double pos_dot = simd::dot(graph, positive);
  const double pos_coef = sigmoid(pos_dot) - 1.0;
  out.loss = -log_sigmoid(pos_dot);
  simd::axpy(pos_coef, positive, out.graph);
  simd::axpy(pos_coef, graph, out.positive);

  out.negatives.reserve(negatives.size());
  for (const auto& neg : negatives) {
    if (neg.size() != z) throw Error(Errc::ShapeMismatch, "negative row has wrong dimension");
    const double d = simd::dot(graph, neg);
    const double coef = sigmoid(d);
    out.loss -= log_sigmoid(-d);
    simd::axpy(coef, neg, out.graph);
    std::vector<double> g(z, 0.0);
    simd::axpy(coef, graph, g);
    out.negatives.push_back(std::move(g));
  }
  return out;
}

SkipgramResult train_skipgram(const Corpus& corpus, const UnigramTable& table,
                              const SkipgramConfig& cfg) {
  cfg.validate();
  if (corpus.entries.empty()) {
    throw Error(Errc::EmptyCorpus, "cannot train on an empty corpus");
  }
  if (table.probs.size() != corpus.vocab_size) {
    throw Error(Errc::ShapeMismatch, "unigram table does not match corpus vocabulary");
  }

  SkipgramResult result;
  result.table = init_embeddings(corpus.n_graphs, corpus.vocab_size, cfg.dim, cfg.seed);
  Matrix& graphs = result.table.graphs;
  Matrix& patterns = result.table.patterns;

  struct Event {
    std::uint32_t graph;
    PatternId pattern;
  };
  std::vector<Event> events;
  events.reserve(corpus.total_occurrences());
  for (const CorpusEntry& e : corpus.entries) {
    for (std::size_t k = 0; k < e.multiplicity; ++k) {
      events.push_back(Event{static_cast<std::uint32_t>(e.graph), e.pattern});
    }
  }

  // A stream distinct from the one used for initialization.
  Rng rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::size_t m = cfg.negatives;
  const double total_steps = static_cast<double>(events.size() * cfg.epochs);
  std::vector<PatternId> negs(m);
  std::vector<double> neg_coef(m);
  std::vector<double> grad_graph(cfg.dim);
  std::size_t step = 0;

  result.epoch_loss.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(std::span<Event>(events));
    double epoch_loss = 0.0;
    for (const Event& ev : events) {
      double lr = cfg.learning_rate;
      if (cfg.decay == LrDecay::Linear) {
        lr = cfg.learning_rate -
             (cfg.learning_rate - kMinSkipgramLearningRate) * (static_cast<double>(step) / total_steps);
        lr = std::max(lr, kMinSkipgramLearningRate);
      }
      for (auto& id : negs) id = table.sample(rng);

      std::span<double> g = graphs.row(ev.graph);
      std::span<double> pos = patterns.row(ev.pattern);
      std::fill(grad_graph.begin(), grad_graph.end(), 0.0);

      // All dot products and the graph-row gradient use pre-update values.
      const double pos_dot = simd::dot(g, pos);
      const SigmoidTerms pt = sigmoid_terms(pos_dot);
      double loss = -pt.log_sig;
      const double pos_coef = pt.sig - 1.0;
      simd::axpy(pos_coef, pos, grad_graph);
      for (std::size_t j = 0; j < m; ++j) {
        const std::span<const double> neg = patterns.row(negs[j]);
        const double d = simd::dot(g, neg);
        const SigmoidTerms nt = sigmoid_terms(d);
        loss -= nt.log_sig_neg;
        neg_coef[j] = nt.sig;
        simd::axpy(neg_coef[j], neg, grad_graph);
      }

      simd::axpy(-lr * pos_coef, g, pos);
      for (std::size_t j = 0; j < m; ++j) {
        simd::axpy(-lr * neg_coef[j], g, patterns.row(negs[j]));
      }
      simd::axpy(-lr, grad_graph, g);

      if (step == 0) result.first_event_loss = loss;
      epoch_loss += loss;
      ++step;
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(events.size()));
  }
  result.events = step;
  return result;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void export_embeddings(const Matrix& graphs, std::span<const std::string> ids,
                       const std::string& inducer_tag, const std::filesystem::path& path) {
  if (ids.size() != graphs.rows()) {
    throw Error(Errc::DimensionMismatch, "embedding export: " + std::to_string(ids.size()) +
                                             " ids for " + std::to_string(graphs.rows()) + " rows");
  }
  if (ids.empty()) {
    throw Error(Errc::MalformedEmbeddingFile, "embedding export: no rows");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write embedding file '" + path.string() + "'");
  out << "graphdr-embeddings v1 " << graphs.rows() << ' ' << graphs.cols() << ' '
      << (inducer_tag.empty() ? "none" : inducer_tag) << '\n';
  for (std::size_t r = 0; r < graphs.rows(); ++r) {
    out << ids[r] << '\t';
    const auto row = graphs.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(row[c]);
    }
    out << '\n';
  }
  if (!out) throw Error(Errc::Io, "failed writing embedding file '" + path.string() + "'");
}

EmbeddingFile import_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open embedding file '" + path.string() + "'");
  const auto malformed = [&](std::size_t line, const std::string& what) {
    return Error(Errc::MalformedEmbeddingFile,
                 path.string() + ":" + std::to_string(line) + ": " + what, line);
  };

  std::string line;
  if (!std::getline(in, line)) throw malformed(1, "missing header");
  std::istringstream header(line);
  std::string magic, version, tag;
  long long n = -1, z = -1;
  header >> magic >> version >> n >> z >> tag;
  if (magic != "graphdr-embeddings" || version != "v1" || !header || tag.empty()) {
    throw malformed(1, "bad header (expected 'graphdr-embeddings v1 <n> <z> <inducer>')");
  }
  if (n < 1) throw malformed(1, "embedding file declares no drug ids");
  if (z < 1) throw malformed(1, "embedding dimension must be >= 1");

  EmbeddingFile file;
  file.inducer_tag = tag;
  file.matrix = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(z));
  std::size_t line_no = 1;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (row >= file.matrix.rows()) throw malformed(line_no, "more rows than declared");
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw malformed(line_no, "expected '<id>\\t<values>'");
    file.ids.push_back(line.substr(0, tab));

    const char* p = line.c_str() + tab + 1;
    const char* end = line.c_str() + line.size();
    std::size_t col = 0;
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      char* next = nullptr;
      const double v = std::strtod(p, &next);
      if (next == p) throw malformed(line_no, "non-numeric value");
      if (col >= file.matrix.cols()) {
        throw Error(Errc::DimensionMismatch,
                    path.string() + ":" + std::to_string(line_no) + ": row wider than z=" +
                        std::to_string(z),
                    line_no);
      }
      file.matrix(row, col++) = v;
      p = next;
    }
    if (col != file.matrix.cols()) {
      throw Error(Errc::DimensionMismatch,
                  path.string() + ":" + std::to_string(line_no) + ": row has " +
                      std::to_string(col) + " values, expected " + std::to_string(z),
                  line_no);
    }
    ++row;
  }
  if (row != file.matrix.rows()) throw malformed(line_no, "fewer rows than declared");
  return file;
}

}  // namespace graphdr
