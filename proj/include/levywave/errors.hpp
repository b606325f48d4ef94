#pragma once

#include <stdexcept>
#include <string>

namespace levywave {

enum class ErrorCode {
    NonFinite,
    InsufficientSchedule,
    FloorAboveTruncation,
    EmptySupport,
    BudgetExceeded,
    JumpOutsideLattice,
    DriftUnsupported,
    ShapeMismatch,
    OutOfDomain,
    WindowTooSmall,
    SupportViolation,
    EmptySample,
    LengthMismatch,
    QuadratureFailure,
    ConfigError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace levywave
