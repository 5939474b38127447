#include "cmvf/expr.hpp"

#include "cmvf/error.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace cmvf {

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t variables) : text_(text) { expr_.variables_ = variables; }

    Expr run()
    {
        expr_.root_ = sum();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return std::move(expr_);
    }

private:
    using Kind = Expr::Kind;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(ErrorCode::SyntaxError, what + " at offset " + std::to_string(pos_));
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int add(Expr::Node n)
    {
        expr_.nodes_.push_back(n);
        return static_cast<int>(expr_.nodes_.size() - 1);
    }

    int sum()
    {
        int lhs = product();
        while (true) {
            if (accept('+'))
                lhs = add({Kind::add, 0, 0, lhs, product()});
            else if (accept('-'))
                lhs = add({Kind::sub, 0, 0, lhs, product()});
            else
                return lhs;
        }
    }

    int product()
    {
        int lhs = unary();
        while (true) {
            if (accept('*'))
                lhs = add({Kind::mul, 0, 0, lhs, unary()});
            else if (accept('/'))
                lhs = add({Kind::div, 0, 0, lhs, unary()});
            else
                return lhs;
        }
    }

    int unary()
    {
        if (accept('-'))
            return add({Kind::negate, 0, 0, unary(), -1});
        if (accept('+'))
            return unary();
        return power();
    }

    int power()
    {
        const int base = primary();
        if (!accept('^'))
            return base;
        skip();
        bool negative = false;
        if (accept('-'))
            negative = true;
        skip();
        int exponent = 0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, exponent);
        if (ec != std::errc() || ptr == first)
            fail("expected an integer exponent");
        if (ptr != last && (*ptr == '.' || *ptr == 'e' || *ptr == 'E'))
            fail("exponent must be an integer literal");
        pos_ += static_cast<std::size_t>(ptr - first);
        return add({Kind::pow, 0, negative ? -exponent : exponent, base, -1});
    }

    int primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = sum();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0;
            const char* first = text_.data() + pos_;
            auto [ptr, ec] = std::from_chars(first, text_.data() + text_.size(), value);
            if (ec != std::errc())
                fail("malformed number");
            pos_ += static_cast<std::size_t>(ptr - first);
            return add({Kind::number, value, 0, -1, -1});
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string_view name = text_.substr(start, pos_ - start);
            if (name == "pi")
                return add({Kind::pi, 0, 0, -1, -1});
            if (name == "sin" || name == "cos" || name == "exp") {
                if (!accept('('))
                    fail("expected '(' after " + std::string(name));
                const int arg = sum();
                if (!accept(')'))
                    fail("expected ')'");
                const Kind k = name == "sin" ? Kind::sin : (name == "cos" ? Kind::cos : Kind::exp);
                return add({k, 0, 0, arg, -1});
            }
            if (name.size() > 1 && name[0] == 'x') {
                std::size_t idx = 0;
                auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
                if (ec == std::errc() && ptr == name.data() + name.size() && idx >= 1 &&
                    idx <= expr_.variables_ && name[1] != '0')
                    return add({Kind::variable, 0, static_cast<int>(idx - 1), -1, -1});
            }
            throw Error(ErrorCode::UnknownVariable, "'" + std::string(name) + "' at offset " + std::to_string(start));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Expr expr_;
};

Expr Expr::parse(std::string_view text, std::size_t variables)
{
    return ExprParser(text, variables).run();
}

double Expr::eval(std::span<const double> point) const
{
    const double v = eval_node(root_, point);
    if (!std::isfinite(v))
        throw Error(ErrorCode::EvalDomain, "non-finite value");
    return v;
}

double Expr::eval_node(int node, std::span<const double> point) const
{
    const Node& n = nodes_[node];
    switch (n.kind) {
    case Kind::number:
        return n.value;
    case Kind::variable:
        return point[n.index];
    case Kind::pi:
        return std::numbers::pi;
    case Kind::negate:
        return -eval_node(n.lhs, point);
    case Kind::add:
        return eval_node(n.lhs, point) + eval_node(n.rhs, point);
    case Kind::sub:
        return eval_node(n.lhs, point) - eval_node(n.rhs, point);
    case Kind::mul:
        return eval_node(n.lhs, point) * eval_node(n.rhs, point);
    case Kind::div: {
        const double d = eval_node(n.rhs, point);
        if (d == 0)
            throw Error(ErrorCode::EvalDomain, "division by zero");
        return eval_node(n.lhs, point) / d;
    }
    case Kind::pow: {
        const double b = eval_node(n.lhs, point);
        if (b == 0 && n.index < 0)
            throw Error(ErrorCode::EvalDomain, "zero to a negative power");
        double r = 1;
        for (int k = 0; k < std::abs(n.index); ++k)
            r *= b;
        return n.index < 0 ? 1 / r : r;
    }
    case Kind::sin:
        return std::sin(eval_node(n.lhs, point));
    case Kind::cos:
        return std::cos(eval_node(n.lhs, point));
    case Kind::exp:
        return std::exp(eval_node(n.lhs, point));
    }
    return 0;
}

void Expr::print(int node, std::string& out) const
{
    const Node& n = nodes_[node];
    auto binary = [&](const char* op) {
        out += '(';
        print(n.lhs, out);
        out += op;
        print(n.rhs, out);
        out += ')';
    };
    switch (n.kind) {
    case Kind::number: {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
        out.append(buf, ptr);
        break;
    }
    case Kind::variable:
        out += "x" + std::to_string(n.index + 1);
        break;
    case Kind::pi:
        out += "pi";
        break;
    case Kind::negate:
        out += "(-";
        print(n.lhs, out);
        out += ')';
        break;
    case Kind::add:
        binary(" + ");
        break;
    case Kind::sub:
        binary(" - ");
        break;
    case Kind::mul:
        binary(" * ");
        break;
    case Kind::div:
        binary(" / ");
        break;
    case Kind::pow:
        out += '(';
        print(n.lhs, out);
        out += "^" + std::to_string(n.index) + ")";
        break;
    case Kind::sin:
    case Kind::cos:
    case Kind::exp:
        out += n.kind == Kind::sin ? "sin(" : (n.kind == Kind::cos ? "cos(" : "exp(");
        print(n.lhs, out);
        out += ')';
        break;
    }
}

std::string Expr::to_string() const
{
    std::string out;
    print(root_, out);
    return out;
}

namespace {

// Structural equality that ignores node numbering.
bool same(const Expr::Node* a, int ia, const Expr::Node* b, int ib)
{
    if (ia < 0 || ib < 0)
        return ia == ib;
    const auto& x = a[ia];
    const auto& y = b[ib];
    return x.kind == y.kind && x.value == y.value && x.index == y.index && same(a, x.lhs, b, y.lhs) &&
           same(a, x.rhs, b, y.rhs);
}

} // namespace

bool operator==(const Expr& a, const Expr& b)
{
    return a.variables_ == b.variables_ && same(a.nodes_.data(), a.root_, b.nodes_.data(), b.root_);
}

std::vector<double> VectorFieldExpr::eval(std::span<const double> point) const
{
    if (point.size() != variables)
        throw Error(ErrorCode::ArityMismatch, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                                  std::to_string(variables));
    std::vector<double> out;
    out.reserve(components.size());
    for (const auto& c : components)
        out.push_back(c.eval(point));
    return out;
}

std::string VectorFieldExpr::to_string() const
{
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i > 0)
            out += "; ";
        out += components[i].to_string();
    }
    return out;
}

VectorFieldExpr parse_vf(std::string_view source, std::size_t n)
{
    VectorFieldExpr f;
    f.variables = n;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = source.find(';', start);
        const std::string_view part = source.substr(start, end == std::string_view::npos ? end : end - start);
        try {
            f.components.push_back(Expr::parse(part, n));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SyntaxError || start == 0)
                throw;
            throw Error(ErrorCode::SyntaxError,
                        "component " + std::to_string(f.components.size() + 1) + ": " +
                            std::string(e.what()).substr(to_string(ErrorCode::SyntaxError).size() + 2));
        }
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return f;
}

} // namespace cmvf
