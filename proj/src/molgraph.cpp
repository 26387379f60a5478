#include "graphdr/molgraph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <utility>

#include "graphdr/error.hpp"

namespace graphdr {

namespace {

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",
    "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re",
    "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db",
    "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

bool is_element(std::string_view symbol) {
  return std::find(kElements.begin(), kElements.end(), symbol) != kElements.end();
}

bool is_aromatic_capable(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O" || symbol == "P" ||
         symbol == "S";
}

BondOrder bond_order_for(char symbol) {
  switch (symbol) {
    case '=':
      return BondOrder::Double;
    case '#':
      return BondOrder::Triple;
    case ':':
      return BondOrder::Aromatic;
    default:
      return BondOrder::Single;  // '-', '/', '\'
  }
}

bool is_bond_symbol(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

struct PendingBond {
  char symbol;
  std::size_t pos;
};

struct OpenRing {
  std::size_t atom;
  std::optional<PendingBond> bond;
  std::size_t pos;
};

class SmilesParser {
 public:
  SmilesParser(std::string_view id, std::string_view text) : id_(id), text_(text) {}

  MolecularGraph run() {
    if (text_.empty()) {
      fail(Errc::EmptyInput, 0, "empty SMILES");
    }
    while (pos_ < text_.size()) {
      step();
    }
    if (pending_) {
      fail(Errc::DanglingBond, pending_->pos, "bond symbol not followed by an atom");
    }
    if (!branches_.empty()) {
      fail(Errc::UnbalancedBranch, branches_.back().second, "unclosed branch '('");
    }
    if (!rings_.empty()) {
      const auto& [label, ring] = *rings_.begin();
      fail(Errc::UnmatchedRingClosure, ring.pos,
           "ring bond " + std::to_string(label) + " opened but never closed");
    }
    if (atoms_.empty()) {
      fail(Errc::EmptyInput, 0, "SMILES contains no heavy atoms");
    }
    return MolecularGraph(std::string(id_), std::move(atoms_), std::move(bonds_));
  }

 private:
  [[noreturn]] void fail(Errc code, std::size_t pos, const std::string& what) const {
    throw Error(code,
                "drug '" + std::string(id_) + "': " + what + " at position " + std::to_string(pos),
                pos);
  }

  void step() {
    const char c = text_[pos_];
    if (static_cast<unsigned char>(c) > 0x7f) {
      fail(Errc::UnknownElement, pos_, "non-ASCII character");
    }
    if (c == '(') {
      if (!prev_) fail(Errc::UnbalancedBranch, pos_, "branch without a preceding atom");
      if (pending_) fail(Errc::DanglingBond, pending_->pos, "bond symbol before '('");
      branches_.emplace_back(*prev_, pos_);
      ++pos_;
    } else if (c == ')') {
      if (branches_.empty()) fail(Errc::UnbalancedBranch, pos_, "')' without matching '('");
      if (pending_) fail(Errc::DanglingBond, pending_->pos, "bond symbol before ')'");
      if (pos_ > 0 && text_[pos_ - 1] == '(') fail(Errc::UnbalancedBranch, pos_, "empty branch");
      prev_ = branches_.back().first;
      branches_.pop_back();
      ++pos_;
    } else if (c == '.') {
      if (pending_) fail(Errc::DanglingBond, pending_->pos, "bond symbol before '.'");
      prev_.reset();
      ++pos_;
    } else if (is_bond_symbol(c)) {
      if (pending_) fail(Errc::DanglingBond, pos_, "two consecutive bond symbols");
      if (!prev_) fail(Errc::DanglingBond, pos_, "bond symbol without a preceding atom");
      pending_ = PendingBond{c, pos_};
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      ring_bond(c - '0', pos_);
      ++pos_;
    } else if (c == '%') {
      if (pos_ + 2 >= text_.size()) {
        fail(Errc::InvalidRingBond, pos_, "'%' must be followed by two digits");
      }
      const char d1 = text_[pos_ + 1];
      const char d2 = text_[pos_ + 2];
      if (!std::isdigit(static_cast<unsigned char>(d1)) ||
          !std::isdigit(static_cast<unsigned char>(d2))) {
        fail(Errc::InvalidRingBond, pos_, "'%' must be followed by two digits");
      }
      ring_bond((d1 - '0') * 10 + (d2 - '0'), pos_);
      pos_ += 3;
    } else if (c == '[') {
      bracket_atom();
    } else {
      organic_atom();
    }
  }

  void ring_bond(int label, std::size_t at) {
    if (!prev_) fail(Errc::UnmatchedRingClosure, at, "ring bond without a preceding atom");
    auto it = rings_.find(label);
    if (it == rings_.end()) {
      rings_.emplace(label, OpenRing{*prev_, pending_, at});
      pending_.reset();
      return;
    }
    const OpenRing open = it->second;
    rings_.erase(it);
    if (open.atom == *prev_) fail(Errc::InvalidRingBond, at, "ring bond closes on its own atom");
    std::optional<PendingBond> symbol = pending_ ? pending_ : open.bond;
    if (pending_ && open.bond && bond_order_for(pending_->symbol) != bond_order_for(open.bond->symbol)) {
      fail(Errc::InvalidRingBond, at, "conflicting ring bond symbols");
    }
    pending_.reset();
    connect(open.atom, *prev_, symbol, at);
  }

  void connect(std::size_t a, std::size_t b, std::optional<PendingBond> symbol, std::size_t at) {
    BondOrder order;
    if (symbol) {
      order = bond_order_for(symbol->symbol);
    } else {
      order = (atoms_[a].aromatic && atoms_[b].aromatic) ? BondOrder::Aromatic : BondOrder::Single;
    }
    const auto key = std::minmax(a, b);
    if (!edge_keys_.insert(key).second) {
      fail(Errc::InvalidRingBond, at, "duplicate bond between the same two atoms");
    }
    bonds_.push_back(Bond{key.first, key.second, order});
  }

  void add_atom(AtomLabel label, std::size_t at) {
    const std::size_t idx = atoms_.size();
    atoms_.push_back(std::move(label));
    if (prev_) {
      connect(*prev_, idx, pending_, at);
    }
    pending_.reset();
    prev_ = idx;
  }

  void organic_atom() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (pos_ + 1 < text_.size()) {
      const std::string_view two = text_.substr(pos_, 2);
      if (two == "Cl" || two == "Br") {
        pos_ += 2;
        add_atom(AtomLabel{std::string(two), false, 0}, start);
        return;
      }
    }
    switch (c) {
      case 'B':
      case 'C':
      case 'N':
      case 'O':
      case 'P':
      case 'S':
      case 'F':
      case 'I':
        ++pos_;
        add_atom(AtomLabel{std::string(1, c), false, 0}, start);
        return;
      case 'b':
      case 'c':
      case 'n':
      case 'o':
      case 'p':
      case 's':
        ++pos_;
        add_atom(AtomLabel{std::string(1, static_cast<char>(std::toupper(c))), true, 0}, start);
        return;
      default:
        fail(Errc::UnknownElement, start, std::string("unknown atom symbol '") + c + "'");
    }
  }

  // [<isotope?><element><chiral?><H-count?><charge?><:class?>]
  void bracket_atom() {
    const std::size_t start = pos_;
    const std::size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos) {
      fail(Errc::MalformedBracketAtom, start, "unterminated bracket atom");
    }
    const std::string_view body = text_.substr(pos_ + 1, close - pos_ - 1);
    std::size_t i = 0;
    auto at = [&](std::size_t k) { return k < body.size() ? body[k] : '\0'; };
    auto digit = [&](std::size_t k) { return std::isdigit(static_cast<unsigned char>(at(k))) != 0; };

    while (digit(i)) ++i;  // isotope

    AtomLabel label;
    const char first = at(i);
    if (std::isupper(static_cast<unsigned char>(first))) {
      const char second = at(i + 1);
      if (std::islower(static_cast<unsigned char>(second)) &&
          is_element(std::string{first, second})) {
        label.element = std::string{first, second};
        i += 2;
      } else if (is_element(std::string(1, first))) {
        label.element = std::string(1, first);
        i += 1;
      } else {
        fail(Errc::UnknownElement, start + 1 + i, "unknown element in bracket atom");
      }
    } else if (std::islower(static_cast<unsigned char>(first))) {
      const std::string upper(1, static_cast<char>(std::toupper(first)));
      if (!is_aromatic_capable(upper)) {
        fail(Errc::UnknownElement, start + 1 + i, "unsupported aromatic element in bracket atom");
      }
      label.element = upper;
      label.aromatic = true;
      i += 1;
    } else {
      fail(Errc::MalformedBracketAtom, start + 1 + i, "bracket atom without element symbol");
    }

    if (at(i) == '@') {
      ++i;
      if (at(i) == '@') ++i;
    }
    if (at(i) == 'H') {
      ++i;
      while (digit(i)) ++i;
    }
    if (at(i) == '+' || at(i) == '-') {
      const char sign_char = at(i);
      const int sign = sign_char == '+' ? 1 : -1;
      ++i;
      int magnitude = 1;
      if (digit(i)) {
        magnitude = 0;
        while (digit(i)) {
          magnitude = magnitude * 10 + (at(i) - '0');
          ++i;
        }
      } else {
        while (at(i) == sign_char) {
          ++magnitude;
          ++i;
        }
      }
      label.formal_charge = sign * magnitude;
    }
    if (at(i) == ':') {
      ++i;
      if (!digit(i)) fail(Errc::MalformedBracketAtom, start + 1 + i, "atom class without digits");
      while (digit(i)) ++i;
    }
    if (i != body.size()) {
      fail(Errc::MalformedBracketAtom, start + 1 + i, "unexpected character in bracket atom");
    }
    pos_ = close + 1;

    if (label.element == "H") {
      // Explicit hydrogen: consumed but never a node.
      pending_.reset();
      return;
    }
    add_atom(std::move(label), start);
  }

  std::string_view id_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<AtomLabel> atoms_;
  std::vector<Bond> bonds_;
  std::set<std::pair<std::size_t, std::size_t>> edge_keys_;
  std::optional<std::size_t> prev_;
  std::optional<PendingBond> pending_;
  std::vector<std::pair<std::size_t, std::size_t>> branches_;  // (atom, '(' position)
  std::map<int, OpenRing> rings_;
};

}  // namespace

std::string AtomLabel::canonical() const {
  std::string out = element;
  if (aromatic) {
    for (char& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (formal_charge > 0) {
    out += '+' + std::to_string(formal_charge);
  } else if (formal_charge < 0) {
    out += std::to_string(formal_charge);
  }
  return out;
}

MolecularGraph::MolecularGraph(std::string source_id, std::vector<AtomLabel> atoms,
                               std::vector<Bond> bonds)
    : source_id_(std::move(source_id)), atoms_(std::move(atoms)), bonds_(std::move(bonds)) {
  if (atoms_.empty()) {
    throw Error(Errc::EmptyInput, "molecular graph '" + source_id_ + "' has no nodes");
  }
  adjacency_.resize(atoms_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (Bond& bond : bonds_) {
    if (bond.a >= atoms_.size() || bond.b >= atoms_.size() || bond.a == bond.b) {
      throw Error(Errc::InvalidArgument, "invalid bond in graph '" + source_id_ + "'");
    }
    if (bond.a > bond.b) std::swap(bond.a, bond.b);
    if (!seen.emplace(bond.a, bond.b).second) {
      throw Error(Errc::InvalidArgument, "duplicate bond in graph '" + source_id_ + "'");
    }
    adjacency_[bond.a].push_back(bond.b);
    adjacency_[bond.b].push_back(bond.a);
  }
}

MolecularGraph MolecularGraph::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != atoms_.size()) {
    throw Error(Errc::ShapeMismatch, "permutation size does not match node count");
  }
  std::vector<AtomLabel> atoms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    atoms.at(perm[i]) = atoms_[i];
  }
  std::vector<Bond> bonds;
  bonds.reserve(bonds_.size());
  for (const Bond& bond : bonds_) {
    bonds.push_back(Bond{perm[bond.a], perm[bond.b], bond.order});
  }
  return MolecularGraph(source_id_, std::move(atoms), std::move(bonds));
}

MolecularGraph parse_smiles(std::string_view drug_id, std::string_view smiles) {
  return SmilesParser(drug_id, smiles).run();
}

std::vector<DrugRecord> read_drug_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::Io, "cannot open drug file '" + path.string() + "'");
  }
  std::vector<DrugRecord> records;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(Errc::MalformedInput,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected '<drug_id>\\t<smiles>'",
                  line_no);
    }
    DrugRecord rec{line.substr(0, tab), line.substr(tab + 1), line_no};
    if (!ids.insert(rec.id).second) {
      throw Error(Errc::DuplicateDrug,
                  path.string() + ":" + std::to_string(line_no) + ": duplicate drug id '" +
                      rec.id + "'",
                  line_no);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<MolecularGraph> parse_drugs(std::span<const DrugRecord> records) {
  std::vector<MolecularGraph> graphs;
  graphs.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const DrugRecord& rec = records[i];
    try {
      graphs.push_back(parse_smiles(rec.id, rec.smiles));
    } catch (const Error& e) {
      const std::size_t where = rec.line != 0 ? rec.line : i + 1;
      throw Error(e.code(), "line " + std::to_string(where) + ": " + e.what(), where);
    }
  }
  return graphs;
}

void write_drug_file(const std::filesystem::path& path, std::span<const DrugRecord> records) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::Io, "cannot write drug file '" + path.string() + "'");
  }
  out << "# drug_id\tsmiles\n";
  for (const DrugRecord& rec : records) {
    out << rec.id << '\t' << rec.smiles << '\n';
  }
}

}  // namespace graphdr
