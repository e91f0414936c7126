#pragma once

#include <stdexcept>
#include <string>

namespace chiplink {

/// An argument fell outside its mathematical or structural domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A data file could not be parsed; the message carries file/line/field context.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No admissible configuration exists (code family exhausted, empty budget, ...).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required synthesis record is absent from the loaded cost table.
struct MissingRecordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The requested quantity is undefined at this operating point (e.g. p_det = 1).
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace chiplink
