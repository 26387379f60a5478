#include "graphdr/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphdr/error.hpp"

namespace graphdr {

std::size_t Corpus::total_occurrences() const {
  std::size_t sum = 0;
  for (const CorpusEntry& e : entries) sum += e.multiplicity;
  return sum;
}

std::vector<std::size_t> Corpus::pattern_counts() const {
  std::vector<std::size_t> counts(vocab_size, 0);
  for (const CorpusEntry& e : entries) counts[e.pattern] += e.multiplicity;
  return counts;
}

Corpus build_corpus(std::span<const PatternMultiset> multisets, const PatternVocabulary& vocab) {
  if (multisets.empty()) {
    throw Error(Errc::EmptyCorpus, "no graphs supplied to the corpus");
  }
  Corpus corpus;
  corpus.n_graphs = multisets.size();
  corpus.vocab_size = vocab.size();
  for (std::size_t g = 0; g < multisets.size(); ++g) {
    for (const auto& [id, n] : multisets[g].counts) {
      if (id >= vocab.size()) {
        throw Error(Errc::UnknownPatternId,
                    "graph '" + multisets[g].graph_id + "' references pattern id " +
                        std::to_string(id) + " outside the vocabulary");
      }
      if (n == 0) continue;
      corpus.entries.push_back(CorpusEntry{g, id, n});
    }
  }
  if (corpus.entries.empty()) {
    throw Error(Errc::EmptyCorpus, "no graph produced any substructure pattern");
  }
  return corpus;
}

PatternId UnigramTable::sample(Rng& rng) const {
  const double total = cumulative.back();
  const double u = rng.uniform() * total;
  std::size_t idx;
  if (guide.empty()) {
    idx = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                   cumulative.begin());
  } else {
    // Start from the bucket's guide entry, then settle on the exact upper
    // bound of u whatever rounding put us in that bucket.
    const auto k = std::min(guide.size() - 1,
                            static_cast<std::size_t>(u / total * static_cast<double>(guide.size())));
    idx = guide[k];
    while (idx > 0 && cumulative[idx - 1] > u) --idx;
    while (idx < cumulative.size() && cumulative[idx] <= u) ++idx;
  }
  if (idx == cumulative.size()) --idx;
  // Skip zero-probability slots that share a prefix sum with their predecessor.
  while (probs[idx] == 0.0 && idx + 1 < probs.size()) ++idx;
  return static_cast<PatternId>(idx);
}

UnigramTable unigram_distribution(const Corpus& corpus, double exponent) {
  if (corpus.entries.empty()) {
    throw Error(Errc::EmptyCorpus, "unigram distribution over an empty corpus");
  }
  if (!(exponent > 0.0)) {
    throw Error(Errc::InvalidArgument, "unigram exponent must be positive");
  }
  const std::vector<std::size_t> counts = corpus.pattern_counts();
  UnigramTable table;
  table.exponent = exponent;
  table.probs.resize(counts.size());
  double norm = 0.0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    const double c = static_cast<double>(counts[p]);
    table.probs[p] = exponent == 1.0 ? c : std::pow(c, exponent);
    norm += table.probs[p];
  }
  table.cumulative.resize(counts.size());
  double running = 0.0;
  for (std::size_t p = 0; p < counts.size(); ++p) {
    table.probs[p] /= norm;
    running += table.probs[p];
    table.cumulative[p] = running;
  }
  table.build_guide();
  return table;
}

void UnigramTable::build_guide() {
  guide.assign(cumulative.size(), 0);
  if (cumulative.empty()) return;
  const double total = cumulative.back();
  std::size_t idx = 0;
  for (std::size_t k = 0; k < guide.size(); ++k) {
    const double threshold = total * static_cast<double>(k) / static_cast<double>(guide.size());
    while (idx < cumulative.size() && cumulative[idx] <= threshold) ++idx;
    guide[k] = static_cast<std::uint32_t>(std::min(idx, cumulative.size() - 1));
  }
}

std::vector<PatternId> sample_negatives(const UnigramTable& table, Rng& rng, std::size_t m) {
  if (m == 0) {
    throw Error(Errc::InvalidArgument, "negative sample count must be at least 1");
  }
  std::vector<PatternId> out(m);
  for (auto& id : out) id = table.sample(rng);
  return out;
}

}  // namespace graphdr
