#pragma once
// Error taxonomy shared across the library. Each code maps to a distinct
// CLI exit code (see tools/).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace grasp {

enum class ErrorCode : std::uint8_t {
    NegativeWeight,
    WeightAboveOne,
    NonSquareMatrix,
    DuplicateArgumentId,
    DimensionMismatch,
    NonFiniteInput,
    UnknownArgument,
    ScoreOutOfRange,
    DuplicatePair,
    MalformedRecord,
    MismatchedItems,
    KTooLarge,
    TooLarge,
    SingularSystem,
    NonConvergence,
    InvalidConfig,
    IoError,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    Error(ErrorCode code, std::string message, std::size_t line)
        : std::runtime_error(std::move(message)), code_(code), line_(line) {}

    ErrorCode code() const noexcept { return code_; }

    // Line number in the offending input file, when known.
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> line_;
};

} // namespace grasp
