#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graphdr {

struct AtomLabel {
  std::string element;  // "C", "Cl", "Se", ...
  bool aromatic = false;
  int formal_charge = 0;

  // Canonical label text: lowercase symbol when aromatic, signed charge
  // suffix when nonzero ("c", "N+1", "O-1"). Never contains | , [ ] ( ).
  std::string canonical() const;

  friend bool operator==(const AtomLabel&, const AtomLabel&) = default;
};

enum class BondOrder { Single, Double, Triple, Aromatic };

struct Bond {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  BondOrder order = BondOrder::Single;

  friend bool operator==(const Bond&, const Bond&) = default;
};

// Undirected heavy-atom graph. Construction validates indices and rejects
// self-loops and duplicate edges.
class MolecularGraph {
 public:
  MolecularGraph(std::string source_id, std::vector<AtomLabel> atoms, std::vector<Bond> bonds);

  const std::string& source_id() const noexcept { return source_id_; }
  std::size_t node_count() const noexcept { return atoms_.size(); }
  std::size_t edge_count() const noexcept { return bonds_.size(); }

  const std::vector<AtomLabel>& atoms() const noexcept { return atoms_; }
  const AtomLabel& atom(std::size_t i) const { return atoms_.at(i); }
  const std::vector<Bond>& bonds() const noexcept { return bonds_; }
  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_.at(i); }

  // Same graph with node i moved to position perm[i].
  MolecularGraph permuted(std::span<const std::size_t> perm) const;

 private:
  std::string source_id_;
  std::vector<AtomLabel> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Parses the supported SMILES subset: organic-subset and aromatic atoms,
// bracket atoms, explicit and directional bonds, branches, ring closures
// (digits and %nn) and '.'-separated components. Hydrogens never become
// nodes; isotope, chirality and H-count are parsed and dropped.
// Throws graphdr::Error with the offending character offset.
MolecularGraph parse_smiles(std::string_view drug_id, std::string_view smiles);

struct DrugRecord {
  std::string id;
  std::string smiles;
  std::size_t line = 0;  // 1-based source line, 0 when built in memory
};

// Reads `<drug_id>\t<smiles>` lines; '#' lines and blank lines are skipped.
std::vector<DrugRecord> read_drug_file(const std::filesystem::path& path);

// Parses every record, tagging failures with the record's position.
std::vector<MolecularGraph> parse_drugs(std::span<const DrugRecord> records);

void write_drug_file(const std::filesystem::path& path, std::span<const DrugRecord> records);

}  // namespace graphdr
