#pragma once

#include <stdexcept>
#include <string>

namespace loopmod {

enum class ErrorKind {
    Config,            // inconsistent root-of-unity orders
    Input,             // malformed or incomplete input
    TrivialModule,
    NoPeriodWithinBound,
    InfiniteIndex,
    SupportNotSubgroup,
    StructureViolation,
    ImageMismatch,
    Unsupported,
    CapExceeded,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace loopmod
