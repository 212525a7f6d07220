#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shearlab/errors.hpp"

namespace shearlab {

/// Value, gradient and Hessian of a scalar expression at a point.
/// The Hessian is symmetric by construction of the jet arithmetic, not by
/// post-hoc symmetrization.
struct Jet2 {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

namespace detail {
struct ExprNode;
}

/// Immutable parsed expression over a fixed variable list. Evaluation is a
/// pure function of the bindings, so one Expression may be evaluated from
/// many threads at once.
class Expression {
public:
    Expression() = default;

    /// Value only.
    double eval(std::span<const double> bindings) const;

    /// Value, gradient and Hessian via second-order forward-mode AD.
    /// Exact up to rounding; no finite differencing is involved.
    Jet2 eval_jet2(std::span<const double> bindings) const;

    /// Canonical printed form. Reparsing the printed form yields the same tree.
    std::string print() const;

    const std::vector<std::string>& variables() const { return *vars_; }
    bool valid() const { return root_ != nullptr; }

    /// True when no variable occurs in the tree (gradient and Hessian are
    /// then exactly zero).
    bool variable_free() const;

private:
    friend Expression parse(std::string_view, std::vector<std::string>);

    std::shared_ptr<const detail::ExprNode> root_;
    std::shared_ptr<const std::vector<std::string>> vars_;
};

/// Parse `source` against the declared variable list.
///
/// Grammar (precedence low to high; +,-,*,/ left-associative, ^ right):
///   sum     := product (('+'|'-') product)*
///   product := unary (('*'|'/') unary)*
///   unary   := '-' unary | power
///   power   := atom ('^' unary)?        exponent must fold to a constant
///   atom    := number | 'pi' | 'e' | variable | func '(' sum ')' | '(' sum ')'
///   func    := sin cos tan exp log sqrt sinh cosh tanh
///
/// Declared variables shadow the named constants pi and e. Numeric literals
/// are 64-bit floats. Errors carry a 1-based line/column; syntax errors also
/// carry the expected-token set.
Expression parse(std::string_view source, std::vector<std::string> variables);

}  // namespace shearlab
