#include "graphdr/split.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

#include "graphdr/error.hpp"
#include "graphdr/random.hpp"

namespace graphdr {

SplitSpec SplitSpec::parse(std::string_view text) {
  if (text == "cold") return SplitSpec{SplitKind::Cold, 0.0};
  if (text.starts_with("random:")) {
    const std::string number(text.substr(7));
    char* end = nullptr;
    const double ratio = std::strtod(number.c_str(), &end);
    if (!number.empty() && *end == '\0' && ratio > 0.0 && ratio < 1.0) {
      return SplitSpec{SplitKind::Random, ratio};
    }
  }
  throw Error(Errc::InvalidArgument,
              "invalid split '" + std::string(text) + "' (expected random:RATIO with 0<RATIO<1, or cold)");
}

std::string SplitSpec::tag() const {
  if (kind == SplitKind::Cold) return "cold";
  char buf[32];
  std::snprintf(buf, sizeof buf, "random:%g", ratio);
  return buf;
}

SplitPlan random_split(const TripleDataset& data, double ratio, std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n < 2) throw Error(Errc::DatasetTooSmall, "random split needs at least 2 triples");
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(Errc::InvalidArgument, "split ratio must be in (0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  auto n_train = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n)));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

  SplitPlan plan;
  plan.kind = SplitKind::Random;
  plan.seed = seed;
  plan.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  plan.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(plan.train.begin(), plan.train.end());
  std::sort(plan.test.begin(), plan.test.end());
  return plan;
}

LinkageResult complete_linkage(const Matrix& distances, std::span<const std::string> ids,
                               std::size_t n_clusters) {
  const std::size_t n = ids.size();
  if (distances.rows() != n || distances.cols() != n) {
    throw Error(Errc::ShapeMismatch, "distance matrix does not match id count");
  }
  if (!std::is_sorted(ids.begin(), ids.end()) ||
      std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(Errc::InvalidArgument, "linkage ids must be sorted and distinct");
  }
  if (n_clusters == 0 || n < n_clusters) {
    throw Error(Errc::DegenerateClustering, "cannot form " + std::to_string(n_clusters) +
                                                " clusters from " + std::to_string(n) + " items");
  }

  // Clusters are keyed by their smallest member; since ids are sorted that is
  // also the lexicographically smallest drug id.
  Matrix d = distances;
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), 0);

  LinkageResult result;
  while (active.size() > n_clusters) {
    std::size_t best_i = 0;
    std::size_t best_j = 1;
    double best = d(active[0], active[1]);
    // Ascending scan with strict comparison keeps the smallest key on ties.
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double dij = d(active[i], active[j]);
        if (dij < best) {
          best = dij;
          best_i = i;
          best_j = j;
        }
      }
    }
    const std::size_t x = active[best_i];
    const std::size_t y = active[best_j];
    result.merges.push_back(LinkageMerge{members[x], members[y], best});
    for (std::size_t z : active) {
      if (z == x || z == y) continue;
      const double merged = std::max(d(x, z), d(y, z));
      d(x, z) = merged;
      d(z, x) = merged;
    }
    members[x].insert(members[x].end(), members[y].begin(), members[y].end());
    std::sort(members[x].begin(), members[x].end());
    members[y].clear();
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
  }
  for (std::size_t rep : active) result.clusters.push_back(members[rep]);
  return result;
}

Matrix tanimoto_distances(std::span<const Fingerprint> fps) {
  Matrix d(fps.size(), fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      const double dist = 1.0 - tanimoto(fps[i], fps[j]);
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return d;
}

SplitPlan cold_split(std::span<const Fingerprint> fps, const TripleDataset& data) {
  if (fps.size() < 2) {
    throw Error(Errc::DegenerateClustering, "cold split needs at least 2 fingerprinted drugs");
  }
  std::vector<const Fingerprint*> sorted;
  for (const Fingerprint& fp : fps) sorted.push_back(&fp);
  std::sort(sorted.begin(), sorted.end(),
            [](const Fingerprint* a, const Fingerprint* b) { return a->drug_id < b->drug_id; });
  std::vector<std::string> ids;
  std::vector<Fingerprint> ordered;
  for (const Fingerprint* fp : sorted) {
    if (!ids.empty() && ids.back() == fp->drug_id) {
      throw Error(Errc::DuplicateDrug, "drug '" + fp->drug_id + "' fingerprinted twice");
    }
    ids.push_back(fp->drug_id);
    ordered.push_back(*fp);
  }

  const LinkageResult linkage = complete_linkage(tanimoto_distances(ordered), ids, 2);
  const auto& c0 = linkage.clusters[0];  // contains ids[0]
  const auto& c1 = linkage.clusters[1];
  if (c0.empty() || c1.empty()) {
    throw Error(Errc::DegenerateClustering, "complete linkage produced an empty cluster");
  }
  const bool first_is_a = c0.size() >= c1.size();
  const auto& a = first_is_a ? c0 : c1;
  const auto& b = first_is_a ? c1 : c0;

  SplitPlan plan;
  plan.kind = SplitKind::Cold;
  for (std::size_t i : a) plan.set_a.push_back(ids[i]);
  for (std::size_t i : b) plan.set_b.push_back(ids[i]);

  const std::unordered_set<std::string> in_a(plan.set_a.begin(), plan.set_a.end());
  const std::unordered_set<std::string> known(ids.begin(), ids.end());
  for (std::size_t r = 0; r < data.size(); ++r) {
    const Triple& t = data.records[r];
    for (const std::string* id : {&t.drug_a, &t.drug_b}) {
      if (!known.count(*id)) {
        throw Error(Errc::UnknownDrug,
                    "triple " + std::to_string(r + 1) + ": drug '" + *id + "' has no fingerprint",
                    r + 1);
      }
    }
    if (in_a.count(t.drug_a) && in_a.count(t.drug_b)) {
      plan.train.push_back(r);
    } else {
      plan.test.push_back(r);
    }
  }
  return plan;
}

}  // namespace graphdr
