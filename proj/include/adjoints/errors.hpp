#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adjoints {

// Base class for all library errors. `kind()` is a stable machine-readable
// tag, used by the CLI to map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct TowerMismatch : Error {
    explicit TowerMismatch(const std::string& m) : Error("tower_mismatch", m) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& m) : Error("division_by_zero", m) {}
};

struct BadLevel : Error {
    explicit BadLevel(const std::string& m) : Error("bad_level", m) {}
};

struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& m) : Error("unknown_symbol", m) {}
};

struct VariableMismatch : Error {
    explicit VariableMismatch(const std::string& m) : Error("variable_mismatch", m) {}
};

struct UnknownVariable : Error {
    explicit UnknownVariable(const std::string& m) : Error("unknown_variable", m) {}
};

struct NonHomogeneous : Error {
    explicit NonHomogeneous(const std::string& m) : Error("non_homogeneous", m) {}
};

// Raised when a result cannot be certified from the available series window.
// `required_frontier` names the frontier that would have sufficed, so callers
// can re-supply deeper divisor data (or retry expansion with more terms).
struct PrecisionExhausted : Error {
    PrecisionExhausted(const std::string& op, std::int64_t required, const std::string& m)
        : Error("precision_exhausted", "[" + op + "] " + m), operation(op),
          required_frontier(required) {}
    std::string operation;
    std::int64_t required_frontier;
};

struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error("format_error", m) {}
};

struct HintMismatch : Error {
    explicit HintMismatch(const std::string& m) : Error("hint_mismatch", m) {}
};

struct NoUsablePartial : Error {
    explicit NoUsablePartial(const std::string& m) : Error("no_usable_partial", m) {}
};

struct DegenerateCurve : Error {
    explicit DegenerateCurve(const std::string& m) : Error("degenerate_curve", m) {}
};

struct FrontierTooSmall : Error {
    explicit FrontierTooSmall(const std::string& m) : Error("frontier_too_small", m) {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t pos, const std::string& m)
        : Error("syntax_error", m + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

}  // namespace adjoints
