#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbary {

enum class ErrorKind {
    InvalidInput,
    DegenerateInput,
    UnboundedInput,
    PreconditionViolation,
    InternalInconsistency,
    NotBoundedAtInfinity,
    Unsupported,
    InsufficientSamples,
    InvalidPolarization,
    AmplenessShiftFailure,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::UnboundedInput: return "UnboundedInput";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotBoundedAtInfinity: return "NotBoundedAtInfinity";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::InvalidPolarization: return "InvalidPolarization";
    case ErrorKind::AmplenessShiftFailure: return "AmplenessShiftFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition)
        fail(kind, what);
}

} // namespace qbary
