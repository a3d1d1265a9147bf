#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rstctg {

enum class ErrorCode {
  // taxonomy
  UnknownRelation,
  MalformedName,
  InvalidTaxonomy,
  // configuration
  InvalidP,
  InvalidK,
  InvalidTau,
  InvalidAlpha,
  InvalidMaxTokens,
  // language model
  EmptyCorpus,
  EmptyContinuation,
  InvalidModel,
  // discourse backend
  EmptySegment,
  EmptyInput,
  InvalidLexicon,
  // remote backends
  BackendUnavailable,
  ProtocolMismatch,
  MalformedResponse,
  // decoding
  EmptyPrompt,
  NoProperPrefix,
  // evaluation and analysis
  EmptyText,
  InconsistentBatch,
  // files
  IoFailure,
  MalformedRecord,
};

std::string_view error_code_name(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rstctg
