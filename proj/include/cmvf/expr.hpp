#pragma once

// Vector-field expressions over x1..xn: numbers, pi, + - * /, unary minus,
// ^ with an integer literal exponent, sin, cos, exp.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmvf {

class Expr {
public:
    enum class Kind : std::uint8_t { number, variable, pi, negate, add, sub, mul, div, pow, sin, cos, exp };

    struct Node {
        Kind kind;
        double value = 0;  // number
        int index = 0;     // variable (0-based) or pow exponent
        int lhs = -1, rhs = -1;

        friend bool operator==(const Node&, const Node&) = default;
    };

    /// Parses one expression over x1..x{variables}. Throws SyntaxError
    /// (with the offset) or UnknownVariable.
    static Expr parse(std::string_view text, std::size_t variables);

    /// Throws EvalDomain on division by zero or a non-finite result.
    double eval(std::span<const double> point) const;

    /// Fully parenthesised; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    std::size_t variables() const noexcept { return variables_; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    double eval_node(int node, std::span<const double> point) const;
    void print(int node, std::string& out) const;

    std::vector<Node> nodes_;
    int root_ = -1;
    std::size_t variables_ = 0;

    friend class ExprParser;
};

struct VectorFieldExpr {
    std::size_t variables = 0;
    std::vector<Expr> components;

    /// Throws ArityMismatch unless point has `variables` entries.
    std::vector<double> eval(std::span<const double> point) const;
    /// Components joined by "; ".
    std::string to_string() const;

    friend bool operator==(const VectorFieldExpr&, const VectorFieldExpr&) = default;
};

/// ';'-separated components over x1..xn.
VectorFieldExpr parse_vf(std::string_view source, std::size_t n);

inline std::vector<double> eval_vf(const VectorFieldExpr& f, std::span<const double> point)
{
    return f.eval(point);
}

} // namespace cmvf
