#include "nearopt/error.hpp"

namespace nearopt {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kInvalidArgument: return "invalid argument";
        case ErrorCode::kInfeasible: return "infeasible";
        case ErrorCode::kUnbounded: return "unbounded";
        case ErrorCode::kIterationLimit: return "iteration limit";
        case ErrorCode::kNumerical: return "numerical failure";
        case ErrorCode::kIo: return "i/o error";
        case ErrorCode::kParse: return "parse error";
    }
    return "unknown error";
}

} // namespace nearopt
