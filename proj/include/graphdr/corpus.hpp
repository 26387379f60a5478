#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graphdr/random.hpp"
#include "graphdr/substructure.hpp"

namespace graphdr {

struct CorpusEntry {
  std::size_t graph = 0;
  PatternId pattern = 0;
  std::size_t multiplicity = 0;  // occurrences of `pattern` in `graph`
};

// Target-context pairs (graph, pattern) with occurrence counts. Each
// (graph, pattern) pair appears once.
struct Corpus {
  std::vector<CorpusEntry> entries;
  std::size_t n_graphs = 0;
  std::size_t vocab_size = 0;

  // |R|: the sum of multiplicities.
  std::size_t total_occurrences() const;
  // Occurrences of each pattern summed over graphs.
  std::vector<std::size_t> pattern_counts() const;
};

Corpus build_corpus(std::span<const PatternMultiset> multisets, const PatternVocabulary& vocab);

// Empirical unigram distribution over patterns, optionally flattened by an
// exponent (1.0 = raw occurrence frequencies).
struct UnigramTable {
  std::vector<double> probs;
  std::vector<double> cumulative;  // inclusive prefix sums of probs
  double exponent = 1.0;
  // guide[k]: first index whose cumulative value exceeds k / guide.size() of
  // the total. Only narrows the search; draws are the same without it.
  std::vector<std::uint32_t> guide;

  // Inverse-CDF draw.
  PatternId sample(Rng& rng) const;
  void build_guide();
};

UnigramTable unigram_distribution(const Corpus& corpus, double exponent = 1.0);

inline constexpr std::size_t kDefaultNegatives = 10;

// m i.i.d. draws; repeats allowed, no filtering against the target graph.
std::vector<PatternId> sample_negatives(const UnigramTable& table, Rng& rng,
                                        std::size_t m = kDefaultNegatives);

}  // namespace graphdr
