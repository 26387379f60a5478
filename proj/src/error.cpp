#include "graphdr/error.hpp"

namespace graphdr {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnmatchedRingClosure: return "UnmatchedRingClosure";
    case Errc::UnbalancedBranch: return "UnbalancedBranch";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::MalformedBracketAtom: return "MalformedBracketAtom";
    case Errc::DanglingBond: return "DanglingBond";
    case Errc::InvalidRingBond: return "InvalidRingBond";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::EmptyGraphSet: return "EmptyGraphSet";
    case Errc::UnknownPatternId: return "UnknownPatternId";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::MalformedEmbeddingFile: return "MalformedEmbeddingFile";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::UnknownDrug: return "UnknownDrug";
    case Errc::UnknownContext: return "UnknownContext";
    case Errc::MissingEmbedding: return "MissingEmbedding";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::MalformedCheckpoint: return "MalformedCheckpoint";
    case Errc::SingleClass: return "SingleClass";
    case Errc::DatasetTooSmall: return "DatasetTooSmall";
    case Errc::DegenerateClustering: return "DegenerateClustering";
    case Errc::DuplicateDrug: return "DuplicateDrug";
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace graphdr
