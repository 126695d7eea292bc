#include "enercast/errors.hpp"

namespace enercast {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::Argument: return "E_ARGUMENT";
    case ErrorCode::InsufficientData: return "E_INSUFFICIENT_DATA";
    case ErrorCode::DegenerateSeries: return "E_DEGENERATE_SERIES";
    case ErrorCode::NoOverlap: return "E_NO_OVERLAP";
    case ErrorCode::ConstraintViolation: return "E_CONSTRAINT";
    case ErrorCode::Convergence: return "E_CONVERGENCE";
    case ErrorCode::Collinearity: return "E_COLLINEARITY";
    case ErrorCode::ScenarioIncomplete: return "E_SCENARIO_INCOMPLETE";
    case ErrorCode::Format: return "E_FORMAT";
    case ErrorCode::Gap: return "E_GAP";
    case ErrorCode::Parse: return "E_PARSE";
    case ErrorCode::UnknownMsn: return "E_UNKNOWN_MSN";
    case ErrorCode::MissingSeries: return "E_MISSING_SERIES";
    case ErrorCode::Coverage: return "E_COVERAGE";
    case ErrorCode::EmptyGrid: return "E_EMPTY_GRID";
    case ErrorCode::Selection: return "E_SELECTION";
    case ErrorCode::Io: return "E_IO";
    }
    return "E_UNKNOWN";
}

} // namespace enercast
