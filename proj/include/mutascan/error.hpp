#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mutascan {

enum class ErrorCode {
  // seqio
  EmptyInput,
  MalformedHeader,
  IllegalResidue,
  EmptyRecord,
  TransportError,
  RemoteError,
  ParseError,
  // align
  AlphabetMismatch,
  KTooLarge,
  InvalidScheme,
  // translate
  NotDNA,
  EmptyFrame,
  NoORF,
  // catalog
  DuplicateEntry,
  MalformedLine,
  UnknownGene,
  PositionOutOfRange,
  RefAlleleMismatch,
  InsufficientSpace,
  // neuralnet
  BadShape,
  ShapeMismatch,
  NonFiniteLoss,
  VersionMismatch,
  CorruptModel,
  // pipeline
  ModelShapeMismatch,
  InvalidArgument,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error raised by every module. The CLI maps it to exit status 1 and
/// prints `error: <Code>: <message>` on a single line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mutascan
