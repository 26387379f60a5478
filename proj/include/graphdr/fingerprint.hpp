#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "graphdr/molgraph.hpp"

namespace graphdr {

inline constexpr std::size_t kDefaultFingerprintBits = 256;
inline constexpr int kDefaultFingerprintRadius = 2;

// Folded circular fingerprint. Bit i lives in words[i / 64], bit i % 64.
struct Fingerprint {
  std::string drug_id;
  std::size_t n_bits = kDefaultFingerprintBits;
  int radius = kDefaultFingerprintRadius;
  std::vector<std::uint64_t> words;

  bool test(std::size_t bit) const { return (words[bit / 64] >> (bit % 64)) & 1U; }
  void set(std::size_t bit) { words[bit / 64] |= std::uint64_t{1} << (bit % 64); }
  std::size_t popcount() const;
  // Bits as 0.0 / 1.0, the fingerprint feature vector fed to the scorer.
  std::vector<double> as_features() const;
};

std::uint64_t fnv1a64(std::string_view text) noexcept;

// Every WL pattern up to `radius` sets bit fnv1a64(pattern) % n_bits.
// n_bits must be a power of two.
Fingerprint morgan_fingerprint(const MolecularGraph& g, int radius = kDefaultFingerprintRadius,
                               std::size_t n_bits = kDefaultFingerprintBits);

// |a & b| / |a | b|; 1.0 when both are empty. Throws LengthMismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

}  // namespace graphdr
