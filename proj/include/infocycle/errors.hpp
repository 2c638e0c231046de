#ifndef INFOCYCLE_ERRORS_HPP
#define INFOCYCLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace infocycle {

enum class ErrorCode {
    NegativeProbability,
    NotNormalized,
    LengthMismatch,
    EmptyVariableName,
    DuplicateVariableName,
    BadCardinality,
    SizeCapExceeded,
    EmptySubset,
    IndexOutOfRange,
    OverlappingSets,
    ShapeMismatch,
    ArityMismatch,
    TooManyVariables,
    NTooSmall,
    AdjacentPair,
    InvalidMarginal,
    NonfiniteIterate,
    DimensionMismatch,
    IoError,
    BadDocument,
};

const char* error_code_name(ErrorCode code);

// One exception type for all domain errors; the code keeps callers able to
// dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace infocycle

#endif
