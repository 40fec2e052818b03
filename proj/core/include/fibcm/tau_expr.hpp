#pragma once

#include <complex>
#include <memory>
#include <string>

namespace fibcm {

// Holomorphic expression in one complex variable b. Grammar (EBNF):
//   expr   = term { ("+" | "-") term } ;
//   term   = factor { ("*" | "/") factor } ;
//   factor = "-" factor | power ;
//   power  = atom [ "^" [ "-" ] digits ] ;
//   atom   = number [ "i" ] | "i" | "b" | "exp" "(" expr ")" | "(" expr ")" ;
//   number = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
// "^" takes an integer exponent and binds tighter than unary minus.
// Unary minus on literals and +, -, * of two literals fold at parse time,
// so "1+2i" parses to the single complex constant it denotes.
class TauExpr {
public:
    enum class Kind { literal, var, add, sub, mul, div, neg, pow, exp_fn };

    TauExpr() : TauExpr(literal({0.0, 0.0})) {}

    static TauExpr literal(std::complex<double> v);
    static TauExpr var();
    static TauExpr binary(Kind k, TauExpr lhs, TauExpr rhs);
    static TauExpr negate(TauExpr e);
    static TauExpr power(TauExpr base, int exponent);
    static TauExpr exponential(TauExpr e);

    Kind kind() const;
    std::complex<double> literal_value() const;  // literal nodes only
    int exponent() const;                        // pow nodes only
    TauExpr lhs() const;                         // unary: the operand
    TauExpr rhs() const;                         // binary nodes only

    std::complex<double> eval(std::complex<double> b) const;

    // Prints a form that re-parses to a structurally equal expression.
    std::string str() const;

    friend bool operator==(const TauExpr& a, const TauExpr& b);
    friend bool operator!=(const TauExpr& a, const TauExpr& b) { return !(a == b); }

private:
    struct Node;
    explicit TauExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// Parses the expression language above. Throws ParseError with the byte
// offset of the offending token on malformed input.
TauExpr parse_tau(const std::string& text);

}  // namespace fibcm
