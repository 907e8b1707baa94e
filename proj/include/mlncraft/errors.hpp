#pragma once

#include <stdexcept>
#include <string>

namespace mlncraft {

// Every data-level failure in the library maps to one of these codes.
// CLI maps MlnError -> exit code 2, usage problems -> exit code 1.
enum class ErrorCode {
    DuplicateLayerName,
    DanglingEndpoint,
    SelfLoop,
    UnknownVertex,
    UnknownLayer,
    UnknownCommunity,
    NoCouplingBetweenLayers,
    MissingVertexAssignment,
    KExceedsVertexCount,
    HeterogeneousNetwork,
    ComplementTooLarge,
    VertexUniverseMismatch,
    UnweightedCBG,
    InstanceTooLarge,
    UncoupledConsecutiveLayers,
    IllegalRepeat,
    ParseError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class MlnError : public std::runtime_error {
public:
    MlnError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace mlncraft
