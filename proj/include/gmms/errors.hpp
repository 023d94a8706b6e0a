#pragma once

#include <stdexcept>
#include <string>

namespace gmms {

// Input that is syntactically or semantically invalid (bad spec text, bad field value).
struct SpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operands with incompatible Fock cutoffs.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Violated operation precondition (e.g. non-diagonal input where diagonal is required).
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Cutoff too small for the requested state; carries the n_max that would suffice.
struct TruncationError : std::runtime_error {
    int required_n_max;
    TruncationError(const std::string& msg, int required)
        : std::runtime_error(msg), required_n_max(required) {}
};

// Numerical-integrity violation (PSD failure, overflow guard, non-Hermitian data).
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit-code contract shared by the CLI: 0 success, 2 input error, 3 integrity error.
inline int cli_exit_code(const std::exception& e) {
    if (dynamic_cast<const IntegrityError*>(&e)) return 3;
    return 2;
}

} // namespace gmms
