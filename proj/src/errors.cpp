#include "levywave/errors.hpp"

namespace levywave {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InsufficientSchedule: return "InsufficientSchedule";
        case ErrorCode::FloorAboveTruncation: return "FloorAboveTruncation";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::JumpOutsideLattice: return "JumpOutsideLattice";
        case ErrorCode::DriftUnsupported: return "DriftUnsupported";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::OutOfDomain: return "OutOfDomain";
        case ErrorCode::WindowTooSmall: return "WindowTooSmall";
        case ErrorCode::SupportViolation: return "SupportViolation";
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace levywave
