#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shearlab {

/// 1-based position inside a source string or spec file.
struct SourcePos {
    int line = 1;
    int column = 1;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the expression parser. `kind()` distinguishes plain syntax
/// errors (which carry an expected-token set) from unknown identifiers,
/// wrong function arity and non-constant '^' exponents.
class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownIdentifier, Arity, NonConstantExponent };

    ParseError(Kind kind, SourcePos pos, const std::string& message,
               std::vector<std::string> expected = {}, std::string identifier = {})
        : Error(format(pos, message)),
          kind_(kind),
          pos_(pos),
          expected_(std::move(expected)),
          identifier_(std::move(identifier)) {}

    Kind kind() const { return kind_; }
    SourcePos where() const { return pos_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& identifier() const { return identifier_; }

private:
    static std::string format(SourcePos pos, const std::string& message) {
        return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
    }

    Kind kind_;
    SourcePos pos_;
    std::vector<std::string> expected_;
    std::string identifier_;
};

/// Evaluation left the domain of some node (log of a non-positive value,
/// division by zero, ...). Carries the printed offending subexpression and
/// the value that broke it.
class DomainError : public Error {
public:
    DomainError(SourcePos pos, std::string node, double offending, const std::string& message)
        : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message +
                " in '" + node + "' (value " + std::to_string(offending) + ")"),
          pos_(pos),
          node_(std::move(node)),
          offending_(offending) {}

    SourcePos where() const { return pos_; }
    const std::string& node() const { return node_; }
    double offending_value() const { return offending_; }

private:
    SourcePos pos_;
    std::string node_;
    double offending_;
};

class GeometryError : public Error {
public:
    enum class Kind {
        DegenerateMetric,
        SignatureMismatch,
        NotImmersed,
        NotSpacelike,
        DegenerateNormalMetric,
        UmbilicalVerificationFailure,
        CrossCheckMismatch,
    };

    GeometryError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Spec-file (CLI input) problems; `line()` is 1-based, 0 when the error is
/// not tied to a specific line.
class SpecError : public Error {
public:
    SpecError(int line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace shearlab
