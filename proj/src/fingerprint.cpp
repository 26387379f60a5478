#include "graphdr/fingerprint.hpp"

#include <bit>

#include "graphdr/error.hpp"
#include "graphdr/substructure.hpp"

namespace graphdr {

std::size_t Fingerprint::popcount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<double> Fingerprint::as_features() const {
  std::vector<double> out(n_bits, 0.0);
  for (std::size_t i = 0; i < n_bits; ++i) out[i] = test(i) ? 1.0 : 0.0;
  return out;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Fingerprint morgan_fingerprint(const MolecularGraph& g, int radius, std::size_t n_bits) {
  if (n_bits == 0 || !std::has_single_bit(n_bits)) {
    throw Error(Errc::InvalidArgument, "fingerprint length must be a power of two");
  }
  Fingerprint fp;
  fp.drug_id = g.source_id();
  fp.n_bits = n_bits;
  fp.radius = radius;
  fp.words.assign((n_bits + 63) / 64, 0);
  for (const auto& [pattern, count] : wl_patterns(g, radius).entries) {
    fp.set(fnv1a64(pattern.canonical) % n_bits);
  }
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.n_bits != b.n_bits || a.words.size() != b.words.size()) {
    throw Error(Errc::LengthMismatch, "tanimoto over fingerprints of " + std::to_string(a.n_bits) +
                                          " and " + std::to_string(b.n_bits) + " bits");
  }
  std::size_t both = 0;
  std::size_t either = 0;
  for (std::size_t i = 0; i < a.words.size(); ++i) {
    both += static_cast<std::size_t>(std::popcount(a.words[i] & b.words[i]));
    either += static_cast<std::size_t>(std::popcount(a.words[i] | b.words[i]));
  }
  if (either == 0) return 1.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace graphdr
