#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "graphdr/corpus.hpp"
#include "graphdr/error.hpp"
#include "graphdr/random.hpp"
#include "graphdr/skipgram.hpp"
#include "support.hpp"

namespace graphdr {
namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double scale) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-scale, scale);
  return v;
}

double loss_of(const std::vector<double>& g, const std::vector<double>& pos,
               const std::vector<std::vector<double>>& negs) {
  std::vector<std::span<const double>> views(negs.begin(), negs.end());
  return pair_loss_grad(g, pos, views).loss;
}

// Largest relative error between the analytic gradient and central finite
// differences over every coordinate of every argument.
double max_gradient_error(Rng& rng, std::size_t z, std::size_t m, double scale, double h) {
  std::vector<double> g = random_vector(rng, z, scale);
  std::vector<double> pos = random_vector(rng, z, scale);
  std::vector<std::vector<double>> negs;
  for (std::size_t j = 0; j < m; ++j) negs.push_back(random_vector(rng, z, scale));
  std::vector<std::span<const double>> views(negs.begin(), negs.end());
  const PairLossGrad analytic = pair_loss_grad(g, pos, views);

  double worst = 0.0;
  const auto check = [&](std::vector<double>& x, const std::vector<double>& grad) {
    for (std::size_t i = 0; i < z; ++i) {
      const double keep = x[i];
      x[i] = keep + h;
      const double up = loss_of(g, pos, negs);
      x[i] = keep - h;
      const double down = loss_of(g, pos, negs);
      x[i] = keep;
      worst = std::max(worst, testing::relative_error(grad[i], (up - down) / (2.0 * h)));
    }
  };
  check(g, analytic.graph);
  check(pos, analytic.positive);
  for (std::size_t j = 0; j < m; ++j) check(negs[j], analytic.negatives[j]);
  return worst;
}

Corpus planted_corpus() {
  // Graphs 0 and 1 share patterns 0..4; graph 2 owns patterns 5..9.
  Corpus c;
  c.n_graphs = 3;
  c.vocab_size = 10;
  for (std::size_t g = 0; g < 2; ++g) {
    for (PatternId p = 0; p < 5; ++p) c.entries.push_back(CorpusEntry{g, p, 1});
  }
  for (PatternId p = 5; p < 10; ++p) c.entries.push_back(CorpusEntry{2, p, 1});
  return c;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

TEST(SkipgramConfig, Validation) {
  SkipgramConfig ok;
  EXPECT_NO_THROW(ok.validate());
  for (auto mutate : std::vector<void (*)(SkipgramConfig&)>{
           [](SkipgramConfig& c) { c.dim = 0; }, [](SkipgramConfig& c) { c.epochs = 0; },
           [](SkipgramConfig& c) { c.negatives = 0; },
           [](SkipgramConfig& c) { c.learning_rate = 0.0; },
           [](SkipgramConfig& c) { c.unigram_exponent = -1.0; }}) {
    SkipgramConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), Error);
  }
}

TEST(InitEmbeddings, ShapesRangeAndDeterminism) {
  const EmbeddingTable t = init_embeddings(5, 7, 64, 3);
  EXPECT_EQ(t.graphs.rows(), 5u);
  EXPECT_EQ(t.patterns.rows(), 7u);
  EXPECT_EQ(t.dim(), 64u);
  for (double v : t.patterns.data()) EXPECT_EQ(v, 0.0);
  for (double v : t.graphs.data()) EXPECT_LT(std::abs(v), 0.5 / 64.0);
  const EmbeddingTable u = init_embeddings(5, 7, 64, 3);
  EXPECT_EQ(t.graphs, u.graphs);
  EXPECT_NE(t.graphs, init_embeddings(5, 7, 64, 4).graphs);
  EXPECT_THROW(init_embeddings(0, 1, 1, 0), Error);
}

TEST(Sigmoid, StableAtExtremes) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_NEAR(log_sigmoid(-1000.0), -1000.0, 1e-9);
  EXPECT_NEAR(log_sigmoid(1000.0), 0.0, 1e-300);
  EXPECT_NEAR(log_sigmoid(0.0), -std::log(2.0), 1e-15);
  for (double x : {-30.0, -2.5, -1e-3, 0.7, 12.0}) {
    EXPECT_NEAR(sigmoid(x), 1.0 / (1.0 + std::exp(-x)), 1e-15);
    EXPECT_NEAR(log_sigmoid(x), std::log(1.0 / (1.0 + std::exp(-x))), 1e-12);
  }
}

TEST(PairLossGrad, ZeroVectors) {
  const std::vector<double> zero(6, 0.0);
  std::vector<std::span<const double>> negs(10, std::span<const double>(zero));
  const PairLossGrad r = pair_loss_grad(zero, zero, negs);
  EXPECT_NEAR(r.loss, 11.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(r.loss, 7.62462, 1e-5);
  for (double v : r.graph) EXPECT_EQ(v, 0.0);
}

TEST(PairLossGrad, ZeroGraphRowGradientFormula) {
  // With g = 0 every sigmoid is 0.5: dL/dg = -0.5 s+ + 0.5 sum s-.
  Rng rng(1);
  const std::vector<double> zero(3, 0.0);
  const std::vector<double> pos = random_vector(rng, 3, 1.0);
  const std::vector<double> n1 = random_vector(rng, 3, 1.0);
  const std::vector<double> n2 = random_vector(rng, 3, 1.0);
  const std::vector<std::span<const double>> negs{n1, n2};
  const PairLossGrad r = pair_loss_grad(zero, pos, negs);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.graph[i], -0.5 * pos[i] + 0.5 * (n1[i] + n2[i]), 1e-15);
    EXPECT_EQ(r.positive[i], 0.0);
  }
}

TEST(PairLossGrad, ShapeMismatch) {
  const std::vector<double> a(3, 0.0);
  const std::vector<double> b(4, 0.0);
  EXPECT_THROW(pair_loss_grad(a, b, {}), Error);
  const std::vector<std::span<const double>> negs{b};
  EXPECT_THROW(pair_loss_grad(a, a, negs), Error);
}

TEST(PairLossGrad, FiniteDifferencesZ4) {
  Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LT(max_gradient_error(rng, 4, 10, 1.0, 1e-5), 1e-6) << "trial " << trial;
  }
}

TEST(PairLossGradProperty, FiniteDifferencesAcrossDimensions) {
  Rng rng(42);
  for (std::size_t z : {2, 8, 64}) {
    // Entries scale as 1/sqrt(z) so inner products stay O(1) at every z.
    const double scale = 3.0 / std::sqrt(static_cast<double>(z));
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = 1 + rng.below(10);
      EXPECT_LT(max_gradient_error(rng, z, m, scale, 1e-5), 1e-4) << "z=" << z;
    }
  }
}

TEST(TrainSkipgram, SingleEventCounting) {
  Corpus c;
  c.n_graphs = 1;
  c.vocab_size = 1;
  c.entries.push_back(CorpusEntry{0, 0, 1});
  SkipgramConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 1;
  const SkipgramResult r = train_skipgram(c, unigram_distribution(c), cfg);
  EXPECT_EQ(r.events, 1u);
  ASSERT_EQ(r.epoch_loss.size(), 1u);
  EXPECT_NEAR(r.first_event_loss, 11.0 * std::log(2.0), 1e-12);
}

TEST(TrainSkipgram, FirstStepMatchesHandComputedUpdate) {
  // One graph, one pattern: every negative is the positive pattern. With the
  // pattern row at zero the graph row's gradient vanishes and the pattern row
  // moves by -lr * (sigma(0) - 1 + m * sigma(0)) * g0.
  Corpus c;
  c.n_graphs = 1;
  c.vocab_size = 1;
  c.entries.push_back(CorpusEntry{0, 0, 1});
  SkipgramConfig cfg;
  cfg.dim = 5;
  cfg.epochs = 1;
  cfg.decay = LrDecay::None;
  cfg.learning_rate = 0.1;
  cfg.seed = 9;
  const SkipgramResult r = train_skipgram(c, unigram_distribution(c), cfg);
  const EmbeddingTable init = init_embeddings(1, 1, 5, 9);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(r.table.graphs(0, i), init.graphs(0, i));
    EXPECT_NEAR(r.table.patterns(0, i), -0.1 * 4.5 * init.graphs(0, i), 1e-15);
  }
}

TEST(TrainSkipgram, EventsReplicateMultiplicity) {
  Corpus c;
  c.n_graphs = 2;
  c.vocab_size = 2;
  c.entries = {{0, 0, 3}, {1, 1, 2}, {1, 0, 1}};
  SkipgramConfig cfg;
  cfg.dim = 4;
  cfg.epochs = 7;
  EXPECT_EQ(train_skipgram(c, unigram_distribution(c), cfg).events, 42u);
}

TEST(TrainSkipgram, ZeroInitLossForAnyNegativeCount) {
  const Corpus c = planted_corpus();
  for (std::size_t m : {1, 5, 10, 20}) {
    SkipgramConfig cfg;
    cfg.dim = 16;
    cfg.epochs = 1;
    cfg.negatives = m;
    const SkipgramResult r = train_skipgram(c, unigram_distribution(c), cfg);
    EXPECT_NEAR(r.first_event_loss, static_cast<double>(1 + m) * std::log(2.0), 1e-12);
  }
}

TEST(TrainSkipgram, Errors) {
  Corpus empty;
  empty.n_graphs = 1;
  empty.vocab_size = 1;
  UnigramTable t;
  t.probs = {1.0};
  t.cumulative = {1.0};
  try {
    train_skipgram(empty, t, SkipgramConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyCorpus);
  }
  const Corpus c = planted_corpus();
  EXPECT_THROW(train_skipgram(c, t, SkipgramConfig{}), Error);
}

TEST(TrainSkipgram, BitIdenticalPerSeed) {
  const Corpus c = planted_corpus();
  const UnigramTable t = unigram_distribution(c);
  SkipgramConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 50;
  cfg.seed = 5;
  const SkipgramResult a = train_skipgram(c, t, cfg);
  const SkipgramResult b = train_skipgram(c, t, cfg);
  EXPECT_EQ(a.table.graphs, b.table.graphs);
  EXPECT_EQ(a.table.patterns, b.table.patterns);
  EXPECT_EQ(a.epoch_loss, b.epoch_loss);
  cfg.seed = 6;
  EXPECT_NE(train_skipgram(c, t, cfg).table.graphs, a.table.graphs);
}

TEST(TrainSkipgram, LearningRateScheduleMatters) {
  const Corpus c = planted_corpus();
  const UnigramTable t = unigram_distribution(c);
  SkipgramConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 20;
  const SkipgramResult linear = train_skipgram(c, t, cfg);
  cfg.decay = LrDecay::None;
  const SkipgramResult flat = train_skipgram(c, t, cfg);
  EXPECT_NE(linear.table.graphs, flat.table.graphs);
  // The first epoch runs at nearly the same rate either way.
  EXPECT_NEAR(linear.epoch_loss[0], flat.epoch_loss[0], 0.05);
}

TEST(TrainSkipgram, PlantedCorpusSeparatesGraphs) {
  const Corpus c = planted_corpus();
  const UnigramTable t = unigram_distribution(c);
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SkipgramConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 500;
    cfg.seed = seed;
    const SkipgramResult r = train_skipgram(c, t, cfg);
    const Matrix& phi = r.table.graphs;
    if (cosine(phi.row(0), phi.row(1)) > cosine(phi.row(0), phi.row(2))) ++wins;
    for (double v : phi.data()) EXPECT_LT(std::abs(v), 1e3);
    for (double v : r.table.patterns.data()) EXPECT_LT(std::abs(v), 1e3);
  }
  EXPECT_GE(wins, 9);
}

TEST(TrainSkipgram, SmoothedEarlyLossIsNonIncreasing) {
  const Corpus c = planted_corpus();
  SkipgramConfig cfg;
  cfg.dim = 8;
  cfg.epochs = 500;
  cfg.seed = 1;
  const SkipgramResult r = train_skipgram(c, unigram_distribution(c), cfg);
  std::vector<double> smooth;
  for (std::size_t i = 0; i + 10 <= 50; ++i) {
    double s = 0.0;
    for (std::size_t k = i; k < i + 10; ++k) s += r.epoch_loss[k];
    smooth.push_back(s / 10.0);
  }
  for (std::size_t i = 1; i < smooth.size(); ++i) {
    EXPECT_LE(smooth[i], smooth[i - 1]) << "window " << i;
  }
}

class EmbeddingFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           (std::string("graphdr_emb_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& text) {
    const auto path = dir_ / "e.txt";
    std::ofstream(path) << text;
    return path;
  }

  Errc import_error(const std::string& text) {
    try {
      import_embeddings(write(text));
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "import succeeded";
    return Errc::Io;
  }

  std::filesystem::path dir_;
};

TEST_F(EmbeddingFileTest, RoundTrip) {
  Rng rng(43);
  Matrix m(3, 4);
  for (double& v : m.data()) v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-8, 3));
  const std::vector<std::string> ids{"D1", "D2", "drug three"};
  const auto path = dir_ / "rt.txt";
  export_embeddings(m, ids, "wl:3", path);
  const EmbeddingFile f = import_embeddings(path);
  EXPECT_EQ(f.ids, ids);
  EXPECT_EQ(f.inducer_tag, "wl:3");
  ASSERT_EQ(f.matrix.rows(), 3u);
  ASSERT_EQ(f.matrix.cols(), 4u);
  double worst = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    worst = std::max(worst, std::abs(f.matrix.data()[i] - m.data()[i]));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_EQ(f.matrix, m);  // 17 significant digits round-trip exactly
}

TEST_F(EmbeddingFileTest, HeaderLine) {
  const auto path = dir_ / "h.txt";
  export_embeddings(Matrix(2, 3, 0.25), std::vector<std::string>{"a", "b"}, "sp", path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "graphdr-embeddings v1 2 3 sp");
  std::getline(in, line);
  EXPECT_EQ(line, "a\t0.25 0.25 0.25");
}

TEST_F(EmbeddingFileTest, ImportErrors) {
  EXPECT_EQ(import_error("graphdr-embeddings v1 2 2 wl:3\na\t1 2\nb\t1 2 3\n"),
            Errc::DimensionMismatch);
  EXPECT_EQ(import_error("graphdr-embeddings v1 1 3 wl:3\na\t1 2\n"), Errc::DimensionMismatch);
  EXPECT_EQ(import_error("graphdr-embeddings v1 0 4 wl:3\n"), Errc::MalformedEmbeddingFile);
  EXPECT_EQ(import_error(""), Errc::MalformedEmbeddingFile);
  EXPECT_EQ(import_error("embeddings v1 1 1 sp\na\t1\n"), Errc::MalformedEmbeddingFile);
  EXPECT_EQ(import_error("graphdr-embeddings v1 2 1 sp\na\t1\n"), Errc::MalformedEmbeddingFile);
  EXPECT_EQ(import_error("graphdr-embeddings v1 1 1 sp\na\tx\n"), Errc::MalformedEmbeddingFile);
  EXPECT_EQ(import_error("graphdr-embeddings v1 1 1 sp\na 1\n"), Errc::MalformedEmbeddingFile);
}

TEST_F(EmbeddingFileTest, ExportErrors) {
  const std::vector<std::string> one{"a"};
  try {
    export_embeddings(Matrix(2, 2), one, "sp", dir_ / "x.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

}  // namespace
}  // namespace graphdr
