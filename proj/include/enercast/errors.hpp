#pragma once

#include <stdexcept>
#include <string>

namespace enercast {

/// Machine-parsable error categories. The CLI prints the code's E_* name as
/// the first token on stderr so callers can dispatch without parsing prose.
enum class ErrorCode {
    Argument,
    InsufficientData,
    DegenerateSeries,
    NoOverlap,
    ConstraintViolation,
    Convergence,
    Collinearity,
    ScenarioIncomplete,
    Format,
    Gap,
    Parse,
    UnknownMsn,
    MissingSeries,
    Coverage,
    EmptyGrid,
    Selection,
    Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace enercast
