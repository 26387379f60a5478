#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graphdr/fingerprint.hpp"
#include "graphdr/matrix.hpp"
#include "graphdr/pairscore.hpp"

namespace graphdr {

enum class SplitKind { Random, Cold };

// Train/test partition of a TripleDataset by record index.
struct SplitPlan {
  SplitKind kind = SplitKind::Random;
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
  std::uint64_t seed = 0;          // random splits
  std::vector<std::string> set_a;  // cold splits: training drugs (the larger cluster)
  std::vector<std::string> set_b;  // cold splits: held-out drugs
};

// "random:RATIO" or "cold".
struct SplitSpec {
  SplitKind kind = SplitKind::Random;
  double ratio = 0.5;

  static SplitSpec parse(std::string_view text);
  std::string tag() const;
};

// Seeded shuffle; the first ceil(ratio * n) records train, clamped so both
// sides are non-empty. Throws DatasetTooSmall for n < 2.
SplitPlan random_split(const TripleDataset& data, double ratio, std::uint64_t seed);

struct LinkageMerge {
  std::vector<std::size_t> first;   // members (indices into ids), ascending
  std::vector<std::size_t> second;  // the cluster with the larger minimum id
  double distance = 0.0;            // complete-linkage distance at merge time
};

struct LinkageResult {
  std::vector<LinkageMerge> merges;
  std::vector<std::vector<std::size_t>> clusters;  // ordered by smallest member
};

// Naive agglomerative clustering with complete linkage, merging until
// `n_clusters` remain. `ids` must be sorted ascending and distinct; ties
// between equal-distance candidates go to the pair whose smallest members are
// lexicographically smallest.
LinkageResult complete_linkage(const Matrix& distances, std::span<const std::string> ids,
                               std::size_t n_clusters = 2);

// 1 - Tanimoto over every pair of fingerprints, in the given order.
Matrix tanimoto_distances(std::span<const Fingerprint> fps);

// Clusters all fingerprinted drugs into two sets with complete linkage; the
// larger set A trains, and a triple trains only when both of its drugs are in
// A. Throws DegenerateClustering for fewer than two drugs and UnknownDrug for
// triples naming unfingerprinted drugs.
SplitPlan cold_split(std::span<const Fingerprint> fps, const TripleDataset& data);

}  // namespace graphdr
