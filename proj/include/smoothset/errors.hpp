#pragma once

#include <stdexcept>
#include <string>

namespace smoothset {

// Malformed tables: unknown identifiers, wrong arities, duplicate names.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Out-of-range or inconsistent parameters (horn index, ring, degree).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An operation was called on inputs that violate its stated precondition.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// Evaluation outside the domain of a (numeric) construction.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Local data that fail to agree where they should; carries a witness.
struct IncompatibilityError : std::runtime_error {
    IncompatibilityError(const std::string& what, std::string witness_text)
        : std::runtime_error(what + ": " + witness_text), witness(std::move(witness_text)) {}
    std::string witness;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line_number)
        : std::runtime_error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
    int line;
};

}  // namespace smoothset
