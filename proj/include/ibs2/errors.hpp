#pragma once

#include <stdexcept>
#include <string>

namespace ibs2 {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller-supplied argument violates a precondition.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// An input object is singular / degenerate where regularity is required.
struct SingularInput : Error {
    explicit SingularInput(const std::string& msg) : Error(msg) {}
};

// A discretized operator could not be assembled to the requested accuracy.
struct AssemblyFailure : Error {
    explicit AssemblyFailure(const std::string& msg) : Error(msg) {}
};

// A numeric routine failed to converge or produced non-finite values.
struct NumericFailure : Error {
    explicit NumericFailure(const std::string& msg) : Error(msg) {}
};

// A computed eigenpair failed its residual validation gate.
struct EigenpairRejected : Error {
    explicit EigenpairRejected(const std::string& msg) : Error(msg) {}
};

// Basis construction hit a configured cap before the retention rule was satisfied.
struct CapTooSmall : Error {
    explicit CapTooSmall(const std::string& msg) : Error(msg) {}
};

// A series iteration was detected to diverge.
struct DivergenceDetected : Error {
    explicit DivergenceDetected(const std::string& msg) : Error(msg) {}
};

// A requested measure/functional is undefined for the given input.
struct MeasureUndefined : Error {
    explicit MeasureUndefined(const std::string& msg) : Error(msg) {}
};

// File or stream contents do not match the expected format.
struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(msg) {}
};

}  // namespace ibs2
