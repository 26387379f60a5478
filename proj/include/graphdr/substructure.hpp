#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphdr/molgraph.hpp"

namespace graphdr {

enum class PatternKind { WL, SP };

// A discrete substructure pattern. `canonical` is an injective text encoding;
// no hashing is involved, so distinct substructures never collide.
struct Pattern {
  PatternKind kind = PatternKind::WL;
  std::string canonical;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

// Patterns induced from one graph, before vocabulary ids exist. Entries keep
// first-emission order and are unique by canonical string.
struct PatternBag {
  std::string graph_id;
  std::vector<std::pair<Pattern, std::size_t>> entries;

  std::size_t count(std::string_view canonical) const;
  std::size_t total() const;
  std::size_t unique() const { return entries.size(); }
  // canonical -> count, for order-insensitive comparison.
  std::map<std::string, std::size_t> as_map() const;
};

using PatternId = std::uint32_t;

// Per-graph occurrence counts over vocabulary ids. All counts are >= 1.
struct PatternMultiset {
  std::string graph_id;
  std::map<PatternId, std::size_t> counts;
};

class PatternVocabulary {
 public:
  // Returns the existing id or appends a new one.
  PatternId add(const Pattern& p);
  // Returns size() when absent.
  PatternId find(const Pattern& p) const;

  std::size_t size() const noexcept { return patterns_.size(); }
  const Pattern& at(PatternId id) const { return patterns_.at(id); }
  const std::vector<Pattern>& patterns() const noexcept { return patterns_; }

 private:
  static std::string key(const Pattern& p);

  std::vector<Pattern> patterns_;
  std::unordered_map<std::string, PatternId> index_;
};

// Which substructure family to induce: WL rooted subtrees up to `depth`, or
// shortest-path triples.
struct Inducer {
  PatternKind kind = PatternKind::WL;
  int depth = 3;

  // "wl:K" or "sp".
  static Inducer parse(std::string_view text);
  std::string tag() const;
};

inline constexpr int kMaxWlDepth = 8;

// WL relabeling: depth-0 label is the atom's canonical label; depth-i label is
// `own|[sorted neighbor labels]` over full depth-(i-1) strings. Every node
// contributes one pattern `i|label` at every depth 0..k.
PatternBag wl_patterns(const MolecularGraph& g, int k);

// All-pairs hop distances. Unreachable pairs hold simd::kUnreachable.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::int32_t at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  bool reachable(std::size_t i, std::size_t j) const;
  std::span<std::int32_t> row(std::size_t i) { return {d_.data() + i * n_, n_}; }
  std::span<const std::int32_t> row(std::size_t i) const { return {d_.data() + i * n_, n_}; }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::int32_t> d_;
};

// Unit edge weights; bond order does not affect distance.
DistanceMatrix floyd_warshall(const MolecularGraph& g);

// One pattern `(min label, max label, distance)` per connected pair i<j.
PatternBag sp_patterns(const MolecularGraph& g);

PatternBag induce(const MolecularGraph& g, const Inducer& inducer);

struct VocabularyBuild {
  PatternVocabulary vocabulary;
  std::vector<PatternMultiset> multisets;  // one per input graph, same order
};

VocabularyBuild build_vocabulary(std::span<const MolecularGraph> graphs, const Inducer& inducer);

// Appends the patterns of more graphs to an existing vocabulary; existing ids
// never change.
std::vector<PatternMultiset> extend_vocabulary(PatternVocabulary& vocab,
                                               std::span<const MolecularGraph> graphs,
                                               const Inducer& inducer);

std::vector<std::int64_t> frequency_vector(const PatternMultiset& ms,
                                           const PatternVocabulary& vocab);

}  // namespace graphdr
