#include "normforge/error.hpp"

namespace normforge {

const char* to_string(ErrorCode c)
{
    switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotSquarefreeAtP: return "NotSquarefreeAtP";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::NonMonogenicAtP: return "NonMonogenicAtP";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::MissingRootOfUnity: return "MissingRootOfUnity";
    case ErrorCode::DegenerateRadicand: return "DegenerateRadicand";
    case ErrorCode::HypothesisFail: return "HypothesisFail";
    case ErrorCode::ConclusionViolation: return "ConclusionViolation";
    case ErrorCode::MissingTrace: return "MissingTrace";
    case ErrorCode::RamifiedCase: return "RamifiedCase";
    case ErrorCode::IndeterminateLayer: return "IndeterminateLayer";
    case ErrorCode::DegenerateLayer: return "DegenerateLayer";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::NoRealConjugates: return "NoRealConjugates";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace normforge
