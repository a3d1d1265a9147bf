#include "rstctg/error.hpp"

namespace rstctg {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::MalformedName: return "MalformedName";
    case ErrorCode::InvalidTaxonomy: return "InvalidTaxonomy";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::InvalidMaxTokens: return "InvalidMaxTokens";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyContinuation: return "EmptyContinuation";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::EmptySegment: return "EmptySegment";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidLexicon: return "InvalidLexicon";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::ProtocolMismatch: return "ProtocolMismatch";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::EmptyPrompt: return "EmptyPrompt";
    case ErrorCode::NoProperPrefix: return "NoProperPrefix";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::InconsistentBatch: return "InconsistentBatch";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
  }
  return "Unknown";
}

}  // namespace rstctg
