#ifndef SNDG_ERRORS_HPP
#define SNDG_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sndg {

// Error taxonomy shared by the library, the C API and the CLI exit codes.
enum class ErrorKind {
    argument,        // bad parameter to an operation
    parse,           // malformed instance or spec text
    validation,      // instance violates game invariants
    explosion,       // path count or profile count exceeds a cap
    budget,          // an iteration budget ran out
    no_path,         // a player's terminals are disconnected
    structure,       // a structural precondition does not hold
    precondition,    // a semantic precondition does not hold
    degenerate,      // a ratio is undefined for this instance
    reconstruction,  // no candidate in the search space satisfies the constraints
    internal,        // an internal invariant was violated
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& m) : Error(ErrorKind::argument, m) {}
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& reason)
        : Error(ErrorKind::parse,
                "parse error at line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ": " + reason),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& m) : Error(ErrorKind::validation, m) {}
};

class ExplosionError : public Error {
public:
    ExplosionError(std::uint64_t cap, std::uint64_t partial_count, const std::string& what_exploded)
        : Error(ErrorKind::explosion,
                what_exploded + ": more than " + std::to_string(cap) +
                    " (stopped after " + std::to_string(partial_count) + ")"),
          cap_(cap), partial_count_(partial_count) {}
    std::uint64_t cap() const { return cap_; }
    std::uint64_t partial_count() const { return partial_count_; }

private:
    std::uint64_t cap_;
    std::uint64_t partial_count_;
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& m) : Error(ErrorKind::budget, m) {}
};

class NoPathError : public Error {
public:
    explicit NoPathError(const std::string& m) : Error(ErrorKind::no_path, m) {}
};

class StructureError : public Error {
public:
    explicit StructureError(const std::string& m) : Error(ErrorKind::structure, m) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& m) : Error(ErrorKind::precondition, m) {}
};

class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& m) : Error(ErrorKind::degenerate, m) {}
};

class ReconstructionError : public Error {
public:
    explicit ReconstructionError(const std::string& m) : Error(ErrorKind::reconstruction, m) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& m) : Error(ErrorKind::internal, m) {}
};

}  // namespace sndg

#endif
