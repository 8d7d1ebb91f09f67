#pragma once

#include <stdexcept>
#include <string>

namespace einlab {

enum class ErrorCode {
    Domain = 1,
    InconsistentCoefficients,
    DegenerateFiber,
    Precondition,
    Solver,
    NotCce,
    Unsupported,
    OutOfModel,
    Schema,
    Io,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace einlab
