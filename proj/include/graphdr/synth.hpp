#pragma once

// Synthetic drug-pair datasets with a planted structural label rule, used as
// the desk-scale substitute for real interaction data.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "graphdr/molgraph.hpp"
#include "graphdr/pairscore.hpp"

namespace graphdr {

struct SynthConfig {
  std::size_t n_drugs = 200;
  std::size_t n_contexts = 5;
  std::size_t n_triples = 20000;
  std::uint64_t seed = 0;
  double slope = 6.0;          // a in sigmoid(a * J + b_c)
  double offset_min = -3.0;    // b_c ~ U[offset_min, offset_max]
  double offset_max = 0.0;
  int jaccard_depth = 2;       // WL depth of the pattern sets compared by J
  std::size_t n_families = 0;  // scaffold families; 0 picks max(2, n_drugs / 50)

  void validate() const;       // InvalidArgument
};

struct SynthDataset {
  std::vector<DrugRecord> drugs;
  TripleDataset triples;
  std::vector<std::string> context_ids;
  std::vector<double> context_offsets;  // b_c, same order as context_ids
};

// Jaccard overlap of the two graphs' WL pattern sets (distinct patterns up to
// `depth`). 1.0 when both are empty.
double wl_jaccard(const MolecularGraph& a, const MolecularGraph& b, int depth);

// Drugs are drawn from a handful of scaffold families built from ring and
// chain fragments over C, N, O and S, then decorated. Pairs are distinct
// drugs drawn uniformly; each triple's label is Bernoulli(sigmoid(a * J + b_c)).
// Deterministic per seed.
SynthDataset generate_synthetic(const SynthConfig& cfg);

}  // namespace graphdr
