#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blowup {

enum class ErrorCode {
    InvalidSpec,
    InvalidControl,
    NoCompatibleRoot,
    NonFiniteInput,
    Overflow,
    Underflow,
    NonpositiveTime,
    DomainError,
    InsufficientSnapshots,
    InsufficientSamples,
    NonmonotoneTrace,
    NotApplicable,
    Cond14Violated,
    ConfigError,
    UnknownSuite,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidControl: return "InvalidControl";
    case ErrorCode::NoCompatibleRoot: return "NoCompatibleRoot";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::NonpositiveTime: return "NonpositiveTime";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InsufficientSnapshots: return "InsufficientSnapshots";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonmonotoneTrace: return "NonmonotoneTrace";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::Cond14Violated: return "Cond14Violated";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    }
    return "Unknown";
}

/// Exception carrying a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace blowup
