#ifndef VSEQ_ERRORS_HPP
#define VSEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vseq {

/// Base class for all engine failures that carry a diagnostic message.
struct EngineError : std::runtime_error {
    explicit EngineError(const std::string& msg) : std::runtime_error(msg) {}
};

// symexpr
struct KernelDepthExceeded : EngineError {
    explicit KernelDepthExceeded(const std::string& msg = "sin/cos/exp argument must be polynomial")
        : EngineError(msg) {}
};
struct MaxOrderExceeded : EngineError {
    explicit MaxOrderExceeded(const std::string& msg) : EngineError(msg) {}
};
struct NonIntegrableKernel : EngineError {
    explicit NonIntegrableKernel(const std::string& msg) : EngineError(msg) {}
};
struct ExpressionDomainError : EngineError {
    explicit ExpressionDomainError(const std::string& msg) : EngineError(msg) {}
};

// jetforms
struct DimensionMismatch : EngineError {
    explicit DimensionMismatch(const std::string& msg) : EngineError(msg) {}
};
struct DegreeZero : EngineError {
    explicit DegreeZero(const std::string& msg = "cannot contract a 0-form") : EngineError(msg) {}
};

// varseq
struct OrderTooHigh : EngineError {
    explicit OrderTooHigh(const std::string& msg) : EngineError(msg) {}
};
struct NotLocallyVariational : EngineError {
    explicit NotLocallyVariational(const std::string& msg) : EngineError(msg) {}
};
struct NotClosed : EngineError {
    explicit NotClosed(const std::string& msg) : EngineError(msg) {}
};

// noether
struct InconsistentPair : EngineError {
    explicit InconsistentPair(const std::string& msg) : EngineError(msg) {}
};
struct MissingCertificate : EngineError {
    explicit MissingCertificate(const std::string& msg) : EngineError(msg) {}
};
struct NotSolvableForLeading : EngineError {
    explicit NotSolvableForLeading(const std::string& msg) : EngineError(msg) {}
};

struct NoSolution : EngineError {
    explicit NoSolution(const std::string& msg) : EngineError(msg) {}
};

// cech
struct TransitionMissing : EngineError {
    explicit TransitionMissing(const std::string& msg) : EngineError(msg) {}
};
struct FieldNotGlobal : EngineError {
    explicit FieldNotGlobal(const std::string& msg) : EngineError(msg) {}
};
struct ChartMismatch : EngineError {
    explicit ChartMismatch(const std::string& msg) : EngineError(msg) {}
};

} // namespace vseq

#endif
