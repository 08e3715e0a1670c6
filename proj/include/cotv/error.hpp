#pragma once

#include <stdexcept>
#include <string>

namespace cotv {

enum class ErrorCode {
    UnknownInstance,
    CapExceeded,
    ParseError,
    SchemaError,
    EmptyVersionSpace,
    InvalidCosts,
    FailTokenRequired,
    FailTokenInvalid,
    ClassMismatch,
    TreeNotShattered,
    MalformedTree,
    NoWitness,
    LearnerNotSound,
    NoHypothesisQualified,
    OracleUnavailable,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
    ErrorCode _code;

public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), _code{ code } {}

    [[nodiscard]] ErrorCode code() const { return _code; }
};

} // namespace cotv
