#pragma once

// Random instance generators and brute-force oracles shared by the unit and
// acceptance tests. Oracles deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "graphdr/molgraph.hpp"
#include "graphdr/random.hpp"
#include "graphdr/simd.hpp"

namespace graphdr::testing {

// Random simple graph with n in [1, max_nodes], labels from `elements`, a
// random spanning forest plus extra edges with probability `extra_p`.
inline MolecularGraph random_graph(Rng& rng, std::size_t max_nodes,
                                   const std::vector<std::string>& elements = {"C", "N", "O"},
                                   double extra_p = 0.15, double detach_p = 0.1) {
  const std::size_t n = 1 + rng.below(max_nodes);
  std::vector<AtomLabel> atoms(n);
  for (auto& a : atoms) a.element = elements[rng.below(elements.size())];
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    if (rng.bernoulli(detach_p)) continue;  // leaves a separate component
    const std::size_t u = rng.below(v);
    edges.emplace(u, v);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(extra_p)) edges.emplace(i, j);
    }
  }
  std::vector<Bond> bonds;
  for (const auto& [a, b] : edges) bonds.push_back(Bond{a, b, BondOrder::Single});
  return MolecularGraph("g", std::move(atoms), std::move(bonds));
}

// WL label of node v after `depth` rounds, by direct recursion over the
// neighborhood tree (no per-round tables).
inline std::string wl_label_oracle(const MolecularGraph& g, std::size_t v, int depth) {
  if (depth == 0) return g.atom(v).canonical();
  std::vector<std::string> around;
  for (std::size_t u : g.neighbors(v)) around.push_back(wl_label_oracle(g, u, depth - 1));
  std::sort(around.begin(), around.end());
  std::string out = wl_label_oracle(g, v, depth - 1) + "|[";
  for (std::size_t i = 0; i < around.size(); ++i) {
    if (i) out += ",";
    out += around[i];
  }
  return out + "]";
}

inline std::map<std::string, std::size_t> wl_oracle(const MolecularGraph& g, int k) {
  std::map<std::string, std::size_t> out;
  for (int d = 0; d <= k; ++d) {
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      ++out[std::to_string(d) + "|" + wl_label_oracle(g, v, d)];
    }
  }
  return out;
}

// Hop distances from one source by breadth-first search; -1 = unreachable.
inline std::vector<int> bfs_distances(const MolecularGraph& g, std::size_t source) {
  std::vector<int> dist(g.node_count(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : g.neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

inline std::map<std::string, std::size_t> sp_oracle(const MolecularGraph& g) {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const std::vector<int> dist = bfs_distances(g, i);
    for (std::size_t j = i + 1; j < g.node_count(); ++j) {
      if (dist[j] < 1) continue;
      std::string a = g.atom(i).canonical();
      std::string b = g.atom(j).canonical();
      if (b < a) std::swap(a, b);
      ++out["(" + a + "," + b + "," + std::to_string(dist[j]) + ")"];
    }
  }
  return out;
}

// O(n^2) pairwise AUROC with half credit for ties.
inline double auroc_oracle(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

struct OracleMerge {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  double distance;
};

// Complete linkage recomputing every cluster-pair distance from scratch at
// each step as the max over member pairs. Ties go to the pair with the
// smallest (min member, other cluster's min member).
inline std::vector<OracleMerge> linkage_oracle(const std::vector<std::vector<double>>& d,
                                               std::size_t target) {
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < d.size(); ++i) clusters.push_back({i});
  std::vector<OracleMerge> merges;
  while (clusters.size() > target) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{SIZE_MAX, SIZE_MAX};
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (i == j) continue;
        double link = 0.0;
        for (std::size_t a : clusters[i]) {
          for (std::size_t b : clusters[j]) link = std::max(link, d[a][b]);
        }
        const std::size_t mi = clusters[i].front();
        const std::size_t mj = clusters[j].front();
        if (mi > mj) continue;  // consider each unordered pair once
        const std::pair<std::size_t, std::size_t> key{mi, mj};
        if (link < best || (link == best && key < best_key)) {
          best = link;
          best_key = key;
          bi = i;
          bj = j;
        }
      }
    }
    merges.push_back(OracleMerge{clusters[bi], clusters[bj], best});
    std::vector<std::size_t> merged = clusters[bi];
    merged.insert(merged.end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(merged.begin(), merged.end());
    clusters[bi] = merged;
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return merges;
}

// Runs `fn` once per available SIMD backend, restoring the original after.
template <class F>
void for_each_backend(F&& fn) {
  const simd::Backend original = simd::active_backend();
  for (simd::Backend b : {simd::Backend::Scalar, simd::Backend::Avx2, simd::Backend::Neon}) {
    if (!simd::backend_supported(b)) continue;
    simd::set_backend(b);
    fn(b);
  }
  simd::set_backend(original);
}

inline double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / scale;
}

}  // namespace graphdr::testing
