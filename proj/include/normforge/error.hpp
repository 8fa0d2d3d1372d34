#ifndef NORMFORGE_ERROR_HPP
#define NORMFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace normforge {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    NotSquarefreeAtP,
    ZeroResidue,
    NonMonogenicAtP,
    PrecisionExhausted,
    NotAUnit,
    SearchExhausted,
    MissingRootOfUnity,
    DegenerateRadicand,
    HypothesisFail,
    ConclusionViolation,
    MissingTrace,
    RamifiedCase,
    IndeterminateLayer,
    DegenerateLayer,
    IncompleteAssignment,
    NoRealConjugates,
    ParseError,
};

const char* to_string(ErrorCode c);

// Domain error. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::vector<std::string> detail = {})
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code), detail_(std::move(detail)) {}
    ErrorCode code() const noexcept { return code_; }
    const std::vector<std::string>& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::vector<std::string> detail_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& what) { throw Error(c, what); }

}  // namespace normforge

#endif
