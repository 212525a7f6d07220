#include "shearlab/expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace shearlab {

namespace detail {

enum class Op : std::uint8_t {
    Constant,
    Variable,
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

struct ExprNode {
    Op op = Op::Constant;
    double constant = 0.0;     // Constant value; for Pow, the folded exponent
    bool integer_exponent = false;
    int var_index = -1;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
    SourcePos pos;
};

using NodePtr = std::shared_ptr<const ExprNode>;

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
};

struct Token {
    TokKind kind;
    std::string text;
    double number = 0.0;
    SourcePos pos;
};

const char* token_name(TokKind k) {
    switch (k) {
        case TokKind::Number: return "number";
        case TokKind::Identifier: return "identifier";
        case TokKind::Plus: return "'+'";
        case TokKind::Minus: return "'-'";
        case TokKind::Star: return "'*'";
        case TokKind::Slash: return "'/'";
        case TokKind::Caret: return "'^'";
        case TokKind::LParen: return "'('";
        case TokKind::RParen: return "')'";
        case TokKind::Comma: return "','";
        case TokKind::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && (src_[i_] == ' ' || src_[i_] == '\t' || src_[i_] == '\r' ||
                                    src_[i_] == '\n')) {
            if (src_[i_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++i_;
        }
        current_.pos = {line_, col_};
        if (i_ >= src_.size()) {
            current_.kind = TokKind::End;
            current_.text.clear();
            return;
        }
        char c = src_[i_];
        switch (c) {
            case '+': single(TokKind::Plus, c); return;
            case '-': single(TokKind::Minus, c); return;
            case '*': single(TokKind::Star, c); return;
            case '/': single(TokKind::Slash, c); return;
            case '^': single(TokKind::Caret, c); return;
            case '(': single(TokKind::LParen, c); return;
            case ')': single(TokKind::RParen, c); return;
            case ',': single(TokKind::Comma, c); return;
            default: break;
        }
        if (is_digit(c) || (c == '.' && i_ + 1 < src_.size() && is_digit(src_[i_ + 1]))) {
            lex_number();
            return;
        }
        if (is_ident_start(c)) {
            lex_identifier();
            return;
        }
        throw ParseError(ParseError::Kind::Syntax, current_.pos,
                         std::string("unexpected character '") + c + "'",
                         {"number", "identifier", "'('", "'-'"});
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident(char c) { return is_ident_start(c) || is_digit(c); }

    void single(TokKind k, char c) {
        current_.kind = k;
        current_.text.assign(1, c);
        ++i_;
        ++col_;
    }

    void lex_number() {
        std::size_t start = i_;
        while (i_ < src_.size() && is_digit(src_[i_])) ++i_;
        if (i_ < src_.size() && src_[i_] == '.') {
            ++i_;
            while (i_ < src_.size() && is_digit(src_[i_])) ++i_;
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t mark = i_;
            ++i_;
            if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) ++i_;
            if (i_ < src_.size() && is_digit(src_[i_])) {
                while (i_ < src_.size() && is_digit(src_[i_])) ++i_;
            } else {
                i_ = mark;  // bare 'e' is the Euler constant, not an exponent
            }
        }
        current_.kind = TokKind::Number;
        current_.text.assign(src_.substr(start, i_ - start));
        double v = 0.0;
        auto [p, ec] = std::from_chars(current_.text.data(),
                                       current_.text.data() + current_.text.size(), v);
        if (ec != std::errc{} || p != current_.text.data() + current_.text.size()) {
            throw ParseError(ParseError::Kind::Syntax, current_.pos,
                             "malformed numeric literal '" + current_.text + "'");
        }
        current_.number = v;
        col_ += static_cast<int>(i_ - start);
    }

    void lex_identifier() {
        std::size_t start = i_;
        while (i_ < src_.size() && is_ident(src_[i_])) ++i_;
        current_.kind = TokKind::Identifier;
        current_.text.assign(src_.substr(start, i_ - start));
        col_ += static_cast<int>(i_ - start);
    }

    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

// ---------------------------------------------------------------------------
// Parser

Op function_op(const std::string& name) {
    static const std::unordered_map<std::string, Op> table = {
        {"sin", Op::Sin},   {"cos", Op::Cos},   {"tan", Op::Tan},
        {"exp", Op::Exp},   {"log", Op::Log},   {"sqrt", Op::Sqrt},
        {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"tanh", Op::Tanh},
    };
    auto it = table.find(name);
    return it == table.end() ? Op::Constant : it->second;
}

bool is_function_name(const std::string& name) {
    return name == "sin" || name == "cos" || name == "tan" || name == "exp" || name == "log" ||
           name == "sqrt" || name == "sinh" || name == "cosh" || name == "tanh";
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string>& vars)
        : lex_(src), vars_(vars) {}

    NodePtr run() {
        NodePtr e = sum();
        if (lex_.peek().kind != TokKind::End) {
            fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected) {
        const Token& t = lex_.peek();
        std::string msg = "unexpected ";
        msg += token_name(t.kind);
        if (t.kind != TokKind::End) msg += " '" + t.text + "'";
        msg += "; expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0) msg += (i + 1 == expected.size()) ? " or " : ", ";
            msg += expected[i];
        }
        throw ParseError(ParseError::Kind::Syntax, t.pos, msg, std::move(expected));
    }

    Token expect(TokKind k) {
        if (lex_.peek().kind != k) fail({token_name(k)});
        return lex_.take();
    }

    static NodePtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

    NodePtr sum() {
        NodePtr left = product();
        while (lex_.peek().kind == TokKind::Plus || lex_.peek().kind == TokKind::Minus) {
            Token op = lex_.take();
            NodePtr right = product();
            ExprNode n;
            n.op = (op.kind == TokKind::Plus) ? Op::Add : Op::Sub;
            n.lhs = std::move(left);
            n.rhs = std::move(right);
            n.pos = op.pos;
            left = make(std::move(n));
        }
        return left;
    }

    NodePtr product() {
        NodePtr left = unary();
        while (lex_.peek().kind == TokKind::Star || lex_.peek().kind == TokKind::Slash) {
            Token op = lex_.take();
            NodePtr right = unary();
            ExprNode n;
            n.op = (op.kind == TokKind::Star) ? Op::Mul : Op::Div;
            n.lhs = std::move(left);
            n.rhs = std::move(right);
            n.pos = op.pos;
            left = make(std::move(n));
        }
        return left;
    }

    NodePtr unary() {
        if (lex_.peek().kind == TokKind::Minus) {
            Token op = lex_.take();
            ExprNode n;
            n.op = Op::Neg;
            n.lhs = unary();
            n.pos = op.pos;
            return make(std::move(n));
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = atom();
        if (lex_.peek().kind != TokKind::Caret) return base;
        Token caret = lex_.take();
        NodePtr exp_tree = unary();  // binds tighter than unary minus on the left
        std::optional<double> folded = fold_constant(exp_tree);
        if (!folded) {
            throw ParseError(ParseError::Kind::NonConstantExponent, caret.pos,
                             "exponent of '^' must be a constant expression");
        }
        ExprNode n;
        n.op = Op::Pow;
        n.lhs = std::move(base);
        n.constant = *folded;
        n.integer_exponent =
            std::nearbyint(*folded) == *folded && std::abs(*folded) <= 1e15;
        n.pos = caret.pos;
        return make(std::move(n));
    }

    NodePtr atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case TokKind::Number: {
                Token num = lex_.take();
                ExprNode n;
                n.op = Op::Constant;
                n.constant = num.number;
                n.pos = num.pos;
                return make(std::move(n));
            }
            case TokKind::LParen: {
                lex_.take();
                NodePtr inner = sum();
                expect(TokKind::RParen);
                return inner;
            }
            case TokKind::Identifier: {
                Token id = lex_.take();
                if (lex_.peek().kind == TokKind::LParen) return call(id);
                return name(id);
            }
            default:
                fail({"number", "identifier", "'('", "'-'"});
        }
    }

    NodePtr call(const Token& id) {
        if (!is_function_name(id.text)) {
            throw ParseError(ParseError::Kind::UnknownIdentifier, id.pos,
                             "unknown function '" + id.text + "'", {}, id.text);
        }
        expect(TokKind::LParen);
        std::vector<NodePtr> args;
        args.push_back(sum());
        while (lex_.peek().kind == TokKind::Comma) {
            lex_.take();
            args.push_back(sum());
        }
        expect(TokKind::RParen);
        if (args.size() != 1) {
            throw ParseError(ParseError::Kind::Arity, id.pos,
                             "function '" + id.text + "' takes 1 argument, got " +
                                 std::to_string(args.size()));
        }
        ExprNode n;
        n.op = function_op(id.text);
        n.lhs = std::move(args.front());
        n.pos = id.pos;
        return make(std::move(n));
    }

    NodePtr name(const Token& id) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == id.text) {
                ExprNode n;
                n.op = Op::Variable;
                n.var_index = static_cast<int>(i);
                n.pos = id.pos;
                return make(std::move(n));
            }
        }
        // declared variables shadow the named constants
        if (id.text == "pi" || id.text == "e") {
            ExprNode n;
            n.op = Op::Constant;
            n.constant = (id.text == "pi") ? std::numbers::pi : std::numbers::e;
            n.pos = id.pos;
            return make(std::move(n));
        }
        throw ParseError(ParseError::Kind::UnknownIdentifier, id.pos,
                         "unknown identifier '" + id.text + "'", {}, id.text);
    }

    /// Constant-folds a variable-free subtree; nullopt if a variable occurs.
    static std::optional<double> fold_constant(const NodePtr& node) {
        switch (node->op) {
            case Op::Constant: return node->constant;
            case Op::Variable: return std::nullopt;
            case Op::Pow: {
                auto b = fold_constant(node->lhs);
                if (!b) return std::nullopt;
                return std::pow(*b, node->constant);
            }
            default: break;
        }
        auto l = fold_constant(node->lhs);
        if (!l) return std::nullopt;
        if (!node->rhs) {
            switch (node->op) {
                case Op::Neg: return -*l;
                case Op::Sin: return std::sin(*l);
                case Op::Cos: return std::cos(*l);
                case Op::Tan: return std::tan(*l);
                case Op::Exp: return std::exp(*l);
                case Op::Log: return std::log(*l);
                case Op::Sqrt: return std::sqrt(*l);
                case Op::Sinh: return std::sinh(*l);
                case Op::Cosh: return std::cosh(*l);
                case Op::Tanh: return std::tanh(*l);
                default: return std::nullopt;
            }
        }
        auto r = fold_constant(node->rhs);
        if (!r) return std::nullopt;
        switch (node->op) {
            case Op::Add: return *l + *r;
            case Op::Sub: return *l - *r;
            case Op::Mul: return *l * *r;
            case Op::Div: return *l / *r;
            default: return std::nullopt;
        }
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

std::string print_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

void print_node(const ExprNode& n, const std::vector<std::string>& vars, std::string& out) {
    auto child = [&](const ExprNode& c, bool parens) {
        if (parens) out += '(';
        print_node(c, vars, out);
        if (parens) out += ')';
    };
    int prec = precedence(n.op);
    switch (n.op) {
        case Op::Constant:
            out += print_number(n.constant);
            return;
        case Op::Variable:
            out += vars[static_cast<std::size_t>(n.var_index)];
            return;
        case Op::Neg:
            out += '-';
            child(*n.lhs, precedence(n.lhs->op) < prec);
            return;
        case Op::Sin: out += "sin"; break;
        case Op::Cos: out += "cos"; break;
        case Op::Tan: out += "tan"; break;
        case Op::Exp: out += "exp"; break;
        case Op::Log: out += "log"; break;
        case Op::Sqrt: out += "sqrt"; break;
        case Op::Sinh: out += "sinh"; break;
        case Op::Cosh: out += "cosh"; break;
        case Op::Tanh: out += "tanh"; break;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            child(*n.lhs, precedence(n.lhs->op) < prec);
            out += (n.op == Op::Add) ? '+' : (n.op == Op::Sub) ? '-' : (n.op == Op::Mul) ? '*' : '/';
            // right side needs parens at equal precedence: a-(b-c), a/(b*c)
            child(*n.rhs, precedence(n.rhs->op) <= prec);
            return;
        }
        case Op::Pow:
            child(*n.lhs, precedence(n.lhs->op) <= prec);
            out += '^';
            out += print_number(n.constant);
            return;
    }
    // unary function
    out += '(';
    print_node(*n.lhs, vars, out);
    out += ')';
}

std::string print_subtree(const ExprNode& n, const std::vector<std::string>& vars) {
    std::string out;
    print_node(n, vars, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

bool node_variable_free(const ExprNode& n) {
    if (n.op == Op::Variable) return false;
    if (n.lhs && !node_variable_free(*n.lhs)) return false;
    if (n.rhs && !node_variable_free(*n.rhs)) return false;
    return true;
}

[[noreturn]] void domain_fail(const ExprNode& n, const std::vector<std::string>& vars,
                              double offending, const std::string& what) {
    throw DomainError(n.pos, print_subtree(n, vars), offending, what);
}

double eval_value(const ExprNode& n, std::span<const double> x,
                  const std::vector<std::string>& vars) {
    switch (n.op) {
        case Op::Constant: return n.constant;
        case Op::Variable: return x[static_cast<std::size_t>(n.var_index)];
        case Op::Neg: return -eval_value(*n.lhs, x, vars);
        case Op::Sin: return std::sin(eval_value(*n.lhs, x, vars));
        case Op::Cos: return std::cos(eval_value(*n.lhs, x, vars));
        case Op::Tan: {
            double v = eval_value(*n.lhs, x, vars);
            if (std::cos(v) == 0.0) domain_fail(n, vars, v, "tangent pole");
            return std::tan(v);
        }
        case Op::Exp: return std::exp(eval_value(*n.lhs, x, vars));
        case Op::Log: {
            double v = eval_value(*n.lhs, x, vars);
            if (v <= 0.0) domain_fail(n, vars, v, "log of non-positive value");
            return std::log(v);
        }
        case Op::Sqrt: {
            double v = eval_value(*n.lhs, x, vars);
            if (v < 0.0) domain_fail(n, vars, v, "sqrt of negative value");
            return std::sqrt(v);
        }
        case Op::Sinh: return std::sinh(eval_value(*n.lhs, x, vars));
        case Op::Cosh: return std::cosh(eval_value(*n.lhs, x, vars));
        case Op::Tanh: return std::tanh(eval_value(*n.lhs, x, vars));
        case Op::Add: return eval_value(*n.lhs, x, vars) + eval_value(*n.rhs, x, vars);
        case Op::Sub: return eval_value(*n.lhs, x, vars) - eval_value(*n.rhs, x, vars);
        case Op::Mul: return eval_value(*n.lhs, x, vars) * eval_value(*n.rhs, x, vars);
        case Op::Div: {
            double denom = eval_value(*n.rhs, x, vars);
            if (denom == 0.0) domain_fail(n, vars, denom, "division by zero");
            return eval_value(*n.lhs, x, vars) / denom;
        }
        case Op::Pow: {
            double base = eval_value(*n.lhs, x, vars);
            if (!n.integer_exponent && base <= 0.0)
                domain_fail(n, vars, base, "non-integer power of non-positive base");
            if (n.integer_exponent && n.constant < 0.0 && base == 0.0)
                domain_fail(n, vars, base, "negative power of zero");
            return std::pow(base, n.constant);
        }
    }
    return 0.0;  // unreachable
}

struct Jet {
    double v = 0.0;
    Eigen::VectorXd g;
    Eigen::MatrixXd h;
};

Jet jet_constant(double c, int n) {
    return {c, Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Zero(n, n)};
}

/// Chain rule for a scalar function applied to a jet:
/// f(a), f'(a) a', f'(a) a'' + f''(a) a' a'^T. The outer-product term is
/// exactly symmetric entrywise, so symmetry of the Hessian is preserved
/// without explicit symmetrization.
Jet jet_chain(const Jet& a, double f, double df, double ddf) {
    return {f, df * a.g, df * a.h + ddf * (a.g * a.g.transpose())};
}

Jet eval_jet(const ExprNode& n, std::span<const double> x,
             const std::vector<std::string>& vars) {
    const int dim = static_cast<int>(x.size());
    switch (n.op) {
        case Op::Constant:
            return jet_constant(n.constant, dim);
        case Op::Variable: {
            Jet j = jet_constant(x[static_cast<std::size_t>(n.var_index)], dim);
            j.g[n.var_index] = 1.0;
            return j;
        }
        case Op::Neg: {
            Jet a = eval_jet(*n.lhs, x, vars);
            return {-a.v, -a.g, -a.h};
        }
        case Op::Add: {
            Jet a = eval_jet(*n.lhs, x, vars);
            Jet b = eval_jet(*n.rhs, x, vars);
            return {a.v + b.v, a.g + b.g, a.h + b.h};
        }
        case Op::Sub: {
            Jet a = eval_jet(*n.lhs, x, vars);
            Jet b = eval_jet(*n.rhs, x, vars);
            return {a.v - b.v, a.g - b.g, a.h - b.h};
        }
        case Op::Mul: {
            Jet a = eval_jet(*n.lhs, x, vars);
            Jet b = eval_jet(*n.rhs, x, vars);
            return {a.v * b.v, a.g * b.v + a.v * b.g,
                    a.h * b.v + a.v * b.h + a.g * b.g.transpose() + b.g * a.g.transpose()};
        }
        case Op::Div: {
            Jet a = eval_jet(*n.lhs, x, vars);
            Jet b = eval_jet(*n.rhs, x, vars);
            if (b.v == 0.0) domain_fail(n, vars, b.v, "division by zero");
            double q = a.v / b.v;
            Eigen::VectorXd dq = (a.g - q * b.g) / b.v;
            Eigen::MatrixXd hq =
                (a.h - q * b.h - dq * b.g.transpose() - b.g * dq.transpose()) / b.v;
            return {q, std::move(dq), std::move(hq)};
        }
        case Op::Pow: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double p = n.constant;
            if (!n.integer_exponent && a.v <= 0.0)
                domain_fail(n, vars, a.v, "non-integer power of non-positive base");
            if (n.integer_exponent && p < 0.0 && a.v == 0.0)
                domain_fail(n, vars, a.v, "negative power of zero");
            double f = std::pow(a.v, p);
            double df = (p == 0.0) ? 0.0 : p * std::pow(a.v, p - 1.0);
            double pp = p * (p - 1.0);
            double ddf = (pp == 0.0) ? 0.0 : pp * std::pow(a.v, p - 2.0);
            return jet_chain(a, f, df, ddf);
        }
        case Op::Sin: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double s = std::sin(a.v), c = std::cos(a.v);
            return jet_chain(a, s, c, -s);
        }
        case Op::Cos: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double s = std::sin(a.v), c = std::cos(a.v);
            return jet_chain(a, c, -s, -c);
        }
        case Op::Tan: {
            Jet a = eval_jet(*n.lhs, x, vars);
            if (std::cos(a.v) == 0.0) domain_fail(n, vars, a.v, "tangent pole");
            double t = std::tan(a.v);
            double sec2 = 1.0 + t * t;
            return jet_chain(a, t, sec2, 2.0 * t * sec2);
        }
        case Op::Exp: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double ev = std::exp(a.v);
            return jet_chain(a, ev, ev, ev);
        }
        case Op::Log: {
            Jet a = eval_jet(*n.lhs, x, vars);
            if (a.v <= 0.0) domain_fail(n, vars, a.v, "log of non-positive value");
            return jet_chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
        }
        case Op::Sqrt: {
            Jet a = eval_jet(*n.lhs, x, vars);
            if (a.v <= 0.0)
                domain_fail(n, vars, a.v,
                            a.v < 0.0 ? "sqrt of negative value" : "sqrt derivative at zero");
            double r = std::sqrt(a.v);
            return jet_chain(a, r, 0.5 / r, -0.25 / (r * a.v));
        }
        case Op::Sinh: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double sh = std::sinh(a.v), ch = std::cosh(a.v);
            return jet_chain(a, sh, ch, sh);
        }
        case Op::Cosh: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double sh = std::sinh(a.v), ch = std::cosh(a.v);
            return jet_chain(a, ch, sh, ch);
        }
        case Op::Tanh: {
            Jet a = eval_jet(*n.lhs, x, vars);
            double th = std::tanh(a.v);
            double sech2 = 1.0 - th * th;
            return jet_chain(a, th, sech2, -2.0 * th * sech2);
        }
    }
    return jet_constant(0.0, dim);  // unreachable
}

}  // namespace detail

// ---------------------------------------------------------------------------

Expression parse(std::string_view source, std::vector<std::string> variables) {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].empty()) throw Error("variable names must be nonempty");
        for (std::size_t j = i + 1; j < variables.size(); ++j) {
            if (variables[i] == variables[j])
                throw Error("duplicate variable name '" + variables[i] + "'");
        }
    }
    detail::Parser parser(source, variables);
    Expression e;
    e.root_ = parser.run();
    e.vars_ = std::make_shared<const std::vector<std::string>>(std::move(variables));
    return e;
}

double Expression::eval(std::span<const double> bindings) const {
    if (bindings.size() != vars_->size())
        throw Error("binding count " + std::to_string(bindings.size()) +
                    " does not match variable count " + std::to_string(vars_->size()));
    return detail::eval_value(*root_, bindings, *vars_);
}

Jet2 Expression::eval_jet2(std::span<const double> bindings) const {
    if (bindings.size() != vars_->size())
        throw Error("binding count " + std::to_string(bindings.size()) +
                    " does not match variable count " + std::to_string(vars_->size()));
    detail::Jet j = detail::eval_jet(*root_, bindings, *vars_);
    return {j.v, std::move(j.g), std::move(j.h)};
}

std::string Expression::print() const { return detail::print_subtree(*root_, *vars_); }

bool Expression::variable_free() const { return detail::node_variable_free(*root_); }

}  // namespace shearlab
