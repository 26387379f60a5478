#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphdr {

enum class Errc {
  // SMILES parsing
  EmptyInput,
  UnmatchedRingClosure,
  UnbalancedBranch,
  UnknownElement,
  MalformedBracketAtom,
  DanglingBond,
  InvalidRingBond,
  // substructure / corpus
  DepthTooLarge,
  EmptyGraphSet,
  UnknownPatternId,
  EmptyCorpus,
  // embedding files
  MalformedEmbeddingFile,
  DimensionMismatch,
  // fingerprints
  LengthMismatch,
  // pair scoring
  UnknownDrug,
  UnknownContext,
  MissingEmbedding,
  ShapeMismatch,
  EmptyTrainingSet,
  MalformedCheckpoint,
  // evaluation
  SingleClass,
  DatasetTooSmall,
  DegenerateClustering,
  // input files / flags
  DuplicateDrug,
  MalformedInput,
  InvalidArgument,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Error carrying a machine-checkable code. `position` is a character offset
/// for parse errors and a 1-based line number for file readers.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(what), code_(code), position_(position) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  Errc code_;
  std::optional<std::size_t> position_;
};

}  // namespace graphdr
