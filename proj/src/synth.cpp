#include "graphdr/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <string_view>

#include "graphdr/error.hpp"
#include "graphdr/random.hpp"
#include "graphdr/skipgram.hpp"
#include "graphdr/substructure.hpp"

namespace graphdr {
namespace {

// Fragments attach at their first atom and continue from their last one.
// Ring closures use digit 1 and are closed inside the fragment, so any
// concatenation stays well formed.
constexpr std::array<std::string_view, 9> kRings = {
    "c1ccccc1", "c1ccncc1", "c1ccsc1", "c1ccoc1",  "C1CCCCC1",
    "C1CCNCC1", "C1CCOCC1", "C1CC1",   "c1cncnc1",
};
constexpr std::array<std::string_view, 14> kChains = {
    "C", "CC", "CCC", "N", "O", "S", "CN", "CO", "C(C)", "C(=O)", "C(O)", "C(=O)N", "CS", "NC(=O)",
};
constexpr std::array<std::string_view, 8> kBranches = {
    "C", "O", "N", "CC", "=O", "C(=O)O", "S(=O)(=O)C", "C#N",
};

std::string_view pick(Rng& rng, std::span<const std::string_view> items) {
  return items[rng.below(items.size())];
}

std::string random_fragment(Rng& rng) {
  return std::string(rng.bernoulli(0.4) ? pick(rng, kRings) : pick(rng, kChains));
}

std::vector<std::string> random_scaffold(Rng& rng) {
  std::vector<std::string> frags;
  frags.emplace_back(pick(rng, kRings));
  const std::size_t extra = 2 + rng.below(2);
  for (std::size_t i = 0; i < extra; ++i) frags.push_back(random_fragment(rng));
  // Keep a ring in front for some families and a chain for others.
  if (rng.bernoulli(0.5)) std::rotate(frags.begin(), frags.begin() + 1, frags.end());
  return frags;
}

std::string decorate(const std::vector<std::string>& scaffold, Rng& rng) {
  std::vector<std::string> frags = scaffold;
  if (rng.bernoulli(0.3)) frags[rng.below(frags.size())] = random_fragment(rng);
  const std::size_t n_decorations = 1 + rng.below(3);
  for (std::size_t d = 0; d < n_decorations; ++d) {
    const std::size_t at = rng.below(frags.size());
    if (rng.bernoulli(0.5)) {
      frags[at] += "(" + std::string(pick(rng, kBranches)) + ")";
    } else {
      frags.insert(frags.begin() + static_cast<std::ptrdiff_t>(at + 1), random_fragment(rng));
    }
  }
  std::string smiles;
  for (const std::string& f : frags) smiles += f;
  return smiles;
}

std::string padded(std::string_view prefix, std::size_t i, std::size_t n) {
  int width = 3;
  for (std::size_t m = n; m >= 1000; m /= 10) ++width;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*s%0*zu", static_cast<int>(prefix.size()), prefix.data(), width, i);
  return buf;
}

std::set<std::string> pattern_set(const MolecularGraph& g, int depth) {
  std::set<std::string> out;
  for (const auto& [p, count] : wl_patterns(g, depth).entries) out.insert(p.canonical);
  return out;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const std::string& s : a) inter += b.count(s);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

}  // namespace

void SynthConfig::validate() const {
  if (n_drugs < 10) throw Error(Errc::InvalidArgument, "synthetic data needs at least 10 drugs");
  if (n_contexts < 1) throw Error(Errc::InvalidArgument, "synthetic data needs at least 1 context");
  if (n_triples < 1) throw Error(Errc::InvalidArgument, "synthetic data needs at least 1 triple");
  if (!(offset_min <= offset_max)) {
    throw Error(Errc::InvalidArgument, "context offset range is empty");
  }
  if (jaccard_depth < 0 || jaccard_depth > kMaxWlDepth) {
    throw Error(Errc::InvalidArgument, "jaccard depth out of range");
  }
}

double wl_jaccard(const MolecularGraph& a, const MolecularGraph& b, int depth) {
  return jaccard(pattern_set(a, depth), pattern_set(b, depth));
}

SynthDataset generate_synthetic(const SynthConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  SynthDataset out;

  const std::size_t n_families =
      cfg.n_families > 0 ? cfg.n_families : std::max<std::size_t>(2, cfg.n_drugs / 50);
  std::vector<std::vector<std::string>> families;
  for (std::size_t f = 0; f < n_families; ++f) families.push_back(random_scaffold(rng));

  std::vector<std::set<std::string>> patterns;
  for (std::size_t i = 0; i < cfg.n_drugs; ++i) {
    const auto& family = families[rng.below(families.size())];
    DrugRecord rec{padded("D", i, cfg.n_drugs), decorate(family, rng), 0};
    patterns.push_back(pattern_set(parse_smiles(rec.id, rec.smiles), cfg.jaccard_depth));
    out.drugs.push_back(std::move(rec));
  }

  for (std::size_t c = 0; c < cfg.n_contexts; ++c) {
    out.context_ids.push_back(padded("ctx", c, cfg.n_contexts));
    out.context_offsets.push_back(rng.uniform(cfg.offset_min, cfg.offset_max));
  }

  out.triples.records.reserve(cfg.n_triples);
  for (std::size_t t = 0; t < cfg.n_triples; ++t) {
    const std::size_t a = rng.below(cfg.n_drugs);
    std::size_t b = rng.below(cfg.n_drugs - 1);
    if (b >= a) ++b;
    const std::size_t c = rng.below(cfg.n_contexts);
    const double j = jaccard(patterns[a], patterns[b]);
    const double p = sigmoid(cfg.slope * j + out.context_offsets[c]);
    const int label = rng.bernoulli(p) ? 1 : 0;
    out.triples.records.push_back(
        Triple{out.drugs[a].id, out.drugs[b].id, out.context_ids[c], label});
  }
  return out;
}

}  // namespace graphdr
