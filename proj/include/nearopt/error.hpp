#pragma once

#include <stdexcept>
#include <string>

namespace nearopt {

enum class ErrorCode {
    kInvalidArgument = 1,
    kInfeasible,
    kUnbounded,
    kIterationLimit,
    kNumerical,
    kIo,
    kParse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorCode::kInvalidArgument, what);
}

} // namespace nearopt
