#include "graphdr/substructure.hpp"

#include <algorithm>

#include "graphdr/error.hpp"
#include "graphdr/simd.hpp"

namespace graphdr {

namespace {

class BagBuilder {
 public:
  BagBuilder(std::string graph_id, PatternKind kind) : kind_(kind) { bag_.graph_id = std::move(graph_id); }

  void add(std::string canonical) {
    auto [it, inserted] = slot_.try_emplace(canonical, bag_.entries.size());
    if (inserted) {
      bag_.entries.emplace_back(Pattern{kind_, std::move(canonical)}, 1);
    } else {
      ++bag_.entries[it->second].second;
    }
  }

  PatternBag take() { return std::move(bag_); }

 private:
  PatternKind kind_;
  PatternBag bag_;
  std::unordered_map<std::string, std::size_t> slot_;
};

}  // namespace

std::size_t PatternBag::count(std::string_view canonical) const {
  for (const auto& [pattern, n] : entries) {
    if (pattern.canonical == canonical) return n;
  }
  return 0;
}

std::size_t PatternBag::total() const {
  std::size_t sum = 0;
  for (const auto& entry : entries) sum += entry.second;
  return sum;
}

std::map<std::string, std::size_t> PatternBag::as_map() const {
  std::map<std::string, std::size_t> out;
  for (const auto& [pattern, n] : entries) out.emplace(pattern.canonical, n);
  return out;
}

std::string PatternVocabulary::key(const Pattern& p) {
  return (p.kind == PatternKind::WL ? "W" : "S") + p.canonical;
}

PatternId PatternVocabulary::add(const Pattern& p) {
  auto [it, inserted] = index_.try_emplace(key(p), static_cast<PatternId>(patterns_.size()));
  if (inserted) patterns_.push_back(p);
  return it->second;
}

PatternId PatternVocabulary::find(const Pattern& p) const {
  auto it = index_.find(key(p));
  return it == index_.end() ? static_cast<PatternId>(patterns_.size()) : it->second;
}

Inducer Inducer::parse(std::string_view text) {
  if (text == "sp") return Inducer{PatternKind::SP, 0};
  if (text.starts_with("wl:") && text.size() > 3) {
    int depth = 0;
    for (char c : text.substr(3)) {
      if (c < '0' || c > '9' || depth > 1000000) {
        throw Error(Errc::InvalidArgument, "invalid inducer '" + std::string(text) + "'");
      }
      depth = depth * 10 + (c - '0');
    }
    if (depth > kMaxWlDepth) {
      throw Error(Errc::DepthTooLarge, "WL depth " + std::to_string(depth) + " exceeds " +
                                           std::to_string(kMaxWlDepth));
    }
    return Inducer{PatternKind::WL, depth};
  }
  throw Error(Errc::InvalidArgument,
              "invalid inducer '" + std::string(text) + "' (expected wl:K or sp)");
}

std::string Inducer::tag() const {
  return kind == PatternKind::SP ? "sp" : "wl:" + std::to_string(depth);
}

PatternBag wl_patterns(const MolecularGraph& g, int k) {
  if (k < 0 || k > kMaxWlDepth) {
    throw Error(Errc::DepthTooLarge, "WL depth " + std::to_string(k) + " outside [0, " +
                                         std::to_string(kMaxWlDepth) + "]");
  }
  const std::size_t n = g.node_count();
  BagBuilder bag(g.source_id(), PatternKind::WL);

  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    labels[v] = g.atom(v).canonical();
    bag.add("0|" + labels[v]);
  }

  std::vector<std::string> next(n);
  std::vector<const std::string*> around;
  for (int depth = 1; depth <= k; ++depth) {
    const std::string prefix = std::to_string(depth) + "|";
    for (std::size_t v = 0; v < n; ++v) {
      around.clear();
      for (std::size_t u : g.neighbors(v)) around.push_back(&labels[u]);
      std::sort(around.begin(), around.end(),
                [](const std::string* a, const std::string* b) { return *a < *b; });
      std::string label = labels[v];
      label += "|[";
      for (std::size_t i = 0; i < around.size(); ++i) {
        if (i > 0) label += ',';
        label += *around[i];
      }
      label += ']';
      bag.add(prefix + label);
      next[v] = std::move(label);
    }
    labels.swap(next);
  }
  return bag.take();
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), d_(n * n, simd::kUnreachable) {
  for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0;
}

bool DistanceMatrix::reachable(std::size_t i, std::size_t j) const {
  return at(i, j) < simd::kUnreachable;
}

DistanceMatrix floyd_warshall(const MolecularGraph& g) {
  const std::size_t n = g.node_count();
  DistanceMatrix d(n);
  for (const Bond& bond : g.bonds()) {
    d.row(bond.a)[bond.b] = 1;
    d.row(bond.b)[bond.a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto via = std::as_const(d).row(k);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t cost = d.at(i, k);
      if (i == k || cost >= simd::kUnreachable) continue;
      simd::relax_min_plus(d.row(i), via, cost);
    }
  }
  return d;
}

PatternBag sp_patterns(const MolecularGraph& g) {
  const std::size_t n = g.node_count();
  const DistanceMatrix d = floyd_warshall(g);
  std::vector<std::string> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = g.atom(v).canonical();

  BagBuilder bag(g.source_id(), PatternKind::SP);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!d.reachable(i, j)) continue;
      const auto& [lo, hi] = std::minmax(labels[i], labels[j]);
      bag.add("(" + lo + "," + hi + "," + std::to_string(d.at(i, j)) + ")");
    }
  }
  return bag.take();
}

PatternBag induce(const MolecularGraph& g, const Inducer& inducer) {
  return inducer.kind == PatternKind::SP ? sp_patterns(g) : wl_patterns(g, inducer.depth);
}

std::vector<PatternMultiset> extend_vocabulary(PatternVocabulary& vocab,
                                               std::span<const MolecularGraph> graphs,
                                               const Inducer& inducer) {
  std::vector<PatternMultiset> out;
  out.reserve(graphs.size());
  for (const MolecularGraph& g : graphs) {
    const PatternBag bag = induce(g, inducer);
    PatternMultiset ms{bag.graph_id, {}};
    for (const auto& [pattern, n] : bag.entries) {
      ms.counts[vocab.add(pattern)] += n;
    }
    out.push_back(std::move(ms));
  }
  return out;
}

VocabularyBuild build_vocabulary(std::span<const MolecularGraph> graphs, const Inducer& inducer) {
  if (graphs.empty()) {
    throw Error(Errc::EmptyGraphSet, "cannot build a vocabulary over zero graphs");
  }
  VocabularyBuild out;
  out.multisets = extend_vocabulary(out.vocabulary, graphs, inducer);
  return out;
}

std::vector<std::int64_t> frequency_vector(const PatternMultiset& ms,
                                           const PatternVocabulary& vocab) {
  std::vector<std::int64_t> x(vocab.size(), 0);
  for (const auto& [id, n] : ms.counts) {
    if (id >= vocab.size()) {
      throw Error(Errc::UnknownPatternId, "pattern id " + std::to_string(id) +
                                              " outside vocabulary of size " +
                                              std::to_string(vocab.size()));
    }
    x[id] = static_cast<std::int64_t>(n);
  }
  return x;
}

}  // namespace graphdr
