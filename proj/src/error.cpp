#include "mutascan/error.hpp"

namespace mutascan {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::IllegalResidue: return "IllegalResidue";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::RemoteError: return "RemoteError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InvalidScheme: return "InvalidScheme";
    case ErrorCode::NotDNA: return "NotDNA";
    case ErrorCode::EmptyFrame: return "EmptyFrame";
    case ErrorCode::NoORF: return "NoORF";
    case ErrorCode::DuplicateEntry: return "DuplicateEntry";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnknownGene: return "UnknownGene";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::RefAlleleMismatch: return "RefAlleleMismatch";
    case ErrorCode::InsufficientSpace: return "InsufficientSpace";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptModel: return "CorruptModel";
    case ErrorCode::ModelShapeMismatch: return "ModelShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace mutascan
