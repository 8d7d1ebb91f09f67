#include "error.hpp"

namespace einlab {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::InconsistentCoefficients: return "inconsistent-coefficients";
        case ErrorCode::DegenerateFiber: return "degenerate-fiber";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::Solver: return "solver";
        case ErrorCode::NotCce: return "not-cce";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::OutOfModel: return "out-of-model";
        case ErrorCode::Schema: return "schema";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace einlab
