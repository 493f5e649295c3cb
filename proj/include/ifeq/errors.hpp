#pragma once

#include <stdexcept>
#include <string>

namespace ifeq {

// Failure conditions that callers are expected to handle or report.
enum class ErrorCode {
    domain_error,          // argument outside [0,1] or malformed input
    budget_exceeded,       // exact branch enumeration would exceed the node budget
    not_periodic,          // operation requires a declared periodic system
    out_of_range,          // index beyond a precomputed table
    boundary_violation,    // g(0) != 0 or g(1) != 0
    insufficient_length,   // sequence shorter than the window layout needs
    not_solvable,          // family of partial sums proven unbounded
    validation,            // equation spec failed load-time validation
    too_many_unresolved,   // unresolved trajectory fraction above threshold
    no_uniform_convergence, // no geometric tail certificate found
    not_uniform_weights,   // closed form needs equal weights
    hypothesis_not_met     // precondition check failed, see message
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::domain_error: return "domain_error";
        case ErrorCode::budget_exceeded: return "budget_exceeded";
        case ErrorCode::not_periodic: return "not_periodic";
        case ErrorCode::out_of_range: return "out_of_range";
        case ErrorCode::boundary_violation: return "boundary_violation";
        case ErrorCode::insufficient_length: return "insufficient_length";
        case ErrorCode::not_solvable: return "not_solvable";
        case ErrorCode::validation: return "validation";
        case ErrorCode::too_many_unresolved: return "too_many_unresolved";
        case ErrorCode::no_uniform_convergence: return "no_uniform_convergence";
        case ErrorCode::not_uniform_weights: return "not_uniform_weights";
        case ErrorCode::hypothesis_not_met: return "hypothesis_not_met";
    }
    return "unknown";
}

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace ifeq
