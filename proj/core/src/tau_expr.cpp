#include "fibcm/tau_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "fibcm/errors.hpp"

namespace fibcm {

struct TauExpr::Node {
    Kind kind;
    std::complex<double> value{0.0, 0.0};  // literal
    int exponent = 0;                      // pow
    std::shared_ptr<const Node> a;         // lhs / unary operand
    std::shared_ptr<const Node> b;         // rhs
};

TauExpr TauExpr::literal(std::complex<double> v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::literal;
    n->value = v;
    return TauExpr(std::move(n));
}

TauExpr TauExpr::var() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::var;
    return TauExpr(std::move(n));
}

TauExpr TauExpr::binary(Kind k, TauExpr lhs, TauExpr rhs) {
    if (k != Kind::add && k != Kind::sub && k != Kind::mul && k != Kind::div) {
        throw DomainError("binary() expects add, sub, mul or div");
    }
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = lhs.n_;
    n->b = rhs.n_;
    return TauExpr(std::move(n));
}

TauExpr TauExpr::negate(TauExpr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::neg;
    n->a = e.n_;
    return TauExpr(std::move(n));
}

TauExpr TauExpr::power(TauExpr base, int exponent) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::pow;
    n->exponent = exponent;
    n->a = base.n_;
    return TauExpr(std::move(n));
}

TauExpr TauExpr::exponential(TauExpr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::exp_fn;
    n->a = e.n_;
    return TauExpr(std::move(n));
}

TauExpr::Kind TauExpr::kind() const { return n_->kind; }

std::complex<double> TauExpr::literal_value() const {
    if (n_->kind != Kind::literal) throw DomainError("not a literal node");
    return n_->value;
}

int TauExpr::exponent() const {
    if (n_->kind != Kind::pow) throw DomainError("not a power node");
    return n_->exponent;
}

TauExpr TauExpr::lhs() const {
    if (n_->a == nullptr) throw DomainError("node has no operand");
    return TauExpr(n_->a);
}

TauExpr TauExpr::rhs() const {
    if (n_->b == nullptr) throw DomainError("node has no right operand");
    return TauExpr(n_->b);
}

namespace {

std::complex<double> int_pow(std::complex<double> z, int e) {
    if (e < 0) return 1.0 / int_pow(z, -e);
    std::complex<double> acc{1.0, 0.0};
    std::complex<double> base = z;
    unsigned u = static_cast<unsigned>(e);
    while (u != 0) {
        if ((u & 1u) != 0) acc *= base;
        base *= base;
        u >>= 1u;
    }
    return acc;
}

}  // namespace

std::complex<double> TauExpr::eval(std::complex<double> b) const {
    struct Visitor {
        static std::complex<double> run(const Node* n, std::complex<double> b) {
            switch (n->kind) {
                case Kind::literal: return n->value;
                case Kind::var: return b;
                case Kind::add: return run(n->a.get(), b) + run(n->b.get(), b);
                case Kind::sub: return run(n->a.get(), b) - run(n->b.get(), b);
                case Kind::mul: return run(n->a.get(), b) * run(n->b.get(), b);
                case Kind::div: return run(n->a.get(), b) / run(n->b.get(), b);
                case Kind::neg: return -run(n->a.get(), b);
                case Kind::pow: return int_pow(run(n->a.get(), b), n->exponent);
                case Kind::exp_fn: return std::exp(run(n->a.get(), b));
            }
            return {0.0, 0.0};
        }
    };
    return Visitor::run(n_.get(), b);
}

bool operator==(const TauExpr& a, const TauExpr& b) {
    struct Cmp {
        static bool run(const TauExpr::Node* x, const TauExpr::Node* y) {
            if (x == y) return true;
            if (x->kind != y->kind) return false;
            switch (x->kind) {
                case TauExpr::Kind::literal: return x->value == y->value;
                case TauExpr::Kind::var: return true;
                case TauExpr::Kind::neg:
                case TauExpr::Kind::exp_fn: return run(x->a.get(), y->a.get());
                case TauExpr::Kind::pow:
                    return x->exponent == y->exponent && run(x->a.get(), y->a.get());
                default: return run(x->a.get(), y->a.get()) && run(x->b.get(), y->b.get());
            }
        }
    };
    return Cmp::run(a.n_.get(), b.n_.get());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
    enum class Type { number, imag_unit, var, exp_fn, plus, minus, star, slash, caret,
                      lparen, rparen, end };
    Type type;
    std::size_t offset;
    double number = 0.0;    // number tokens
    bool imaginary = false; // number tokens: literal had an "i" suffix
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= s_.size()) {
                out.push_back({Token::Type::end, pos_});
                return out;
            }
            const std::size_t at = pos_;
            const char ch = s_[pos_];
            if (std::isdigit(static_cast<unsigned char>(ch)) != 0) {
                out.push_back(lex_number(at));
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(ch)) != 0) {
                out.push_back(lex_word(at));
                continue;
            }
            ++pos_;
            switch (ch) {
                case '+': out.push_back({Token::Type::plus, at}); break;
                case '-': out.push_back({Token::Type::minus, at}); break;
                case '*': out.push_back({Token::Type::star, at}); break;
                case '/': out.push_back({Token::Type::slash, at}); break;
                case '^': out.push_back({Token::Type::caret, at}); break;
                case '(': out.push_back({Token::Type::lparen, at}); break;
                case ')': out.push_back({Token::Type::rparen, at}); break;
                default:
                    throw ParseError(std::string("unexpected character '") + ch + "'", at);
            }
        }
    }

private:
    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
    }

    Token lex_number(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end])) != 0) ++end;
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            if (end >= s_.size() || std::isdigit(static_cast<unsigned char>(s_[end])) == 0) {
                throw ParseError("digits required after decimal point", end);
            }
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end])) != 0) ++end;
        }
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < s_.size() && (s_[e] == '+' || s_[e] == '-')) ++e;
            if (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e])) != 0) {
                while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e])) != 0) ++e;
                end = e;
            }
        }
        Token t{Token::Type::number, at};
        t.number = std::strtod(s_.substr(at, end - at).c_str(), nullptr);
        if (end < s_.size() && s_[end] == 'i') {
            t.imaginary = true;
            ++end;
        }
        pos_ = end;
        return t;
    }

    Token lex_word(std::size_t at) {
        std::size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end])) != 0) ++end;
        const std::string word = s_.substr(at, end - at);
        pos_ = end;
        if (word == "i") return {Token::Type::imag_unit, at};
        if (word == "b") return {Token::Type::var, at};
        if (word == "exp") return {Token::Type::exp_fn, at};
        throw ParseError("unknown identifier '" + word + "'", at);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    TauExpr run() {
        TauExpr e = expr();
        expect(Token::Type::end, "unexpected trailing input");
        return e;
    }

private:
    const Token& peek() const { return t_[i_]; }
    Token take() { return t_[i_++]; }

    void expect(Token::Type ty, const char* message) {
        if (peek().type != ty) throw ParseError(message, peek().offset);
        ++i_;
    }

    static bool is_literal(const TauExpr& e) { return e.kind() == TauExpr::Kind::literal; }

    static TauExpr fold_binary(TauExpr::Kind k, const TauExpr& a, const TauExpr& b) {
        if (is_literal(a) && is_literal(b) && k != TauExpr::Kind::div) {
            const std::complex<double> x = a.literal_value();
            const std::complex<double> y = b.literal_value();
            switch (k) {
                case TauExpr::Kind::add: return TauExpr::literal(x + y);
                case TauExpr::Kind::sub: return TauExpr::literal(x - y);
                case TauExpr::Kind::mul: return TauExpr::literal(x * y);
                default: break;
            }
        }
        return TauExpr::binary(k, a, b);
    }

    TauExpr expr() {
        TauExpr e = term();
        while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            const bool plus = take().type == Token::Type::plus;
            e = fold_binary(plus ? TauExpr::Kind::add : TauExpr::Kind::sub, e, term());
        }
        return e;
    }

    TauExpr term() {
        TauExpr e = factor();
        while (peek().type == Token::Type::star || peek().type == Token::Type::slash) {
            const bool mul = take().type == Token::Type::star;
            e = fold_binary(mul ? TauExpr::Kind::mul : TauExpr::Kind::div, e, factor());
        }
        return e;
    }

    TauExpr factor() {
        if (peek().type == Token::Type::minus) {
            ++i_;
            TauExpr e = factor();
            if (is_literal(e)) return TauExpr::literal(-e.literal_value());
            return TauExpr::negate(e);
        }
        return power();
    }

    TauExpr power() {
        TauExpr base = atom();
        if (peek().type != Token::Type::caret) return base;
        ++i_;
        bool negative = false;
        if (peek().type == Token::Type::minus) {
            negative = true;
            ++i_;
        }
        if (peek().type != Token::Type::number || peek().imaginary) {
            throw ParseError("integer exponent required after '^'", peek().offset);
        }
        const Token t = take();
        const double v = t.number;
        if (v != std::floor(v) || v > 64.0) {
            throw ParseError("integer exponent required after '^' (magnitude at most 64)",
                             t.offset);
        }
        return TauExpr::power(base, negative ? -static_cast<int>(v) : static_cast<int>(v));
    }

    TauExpr atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::number: {
                const Token num = take();
                return TauExpr::literal(num.imaginary
                                            ? std::complex<double>{0.0, num.number}
                                            : std::complex<double>{num.number, 0.0});
            }
            case Token::Type::imag_unit:
                ++i_;
                return TauExpr::literal({0.0, 1.0});
            case Token::Type::var:
                ++i_;
                return TauExpr::var();
            case Token::Type::exp_fn: {
                ++i_;
                expect(Token::Type::lparen, "'(' required after exp");
                TauExpr inner = expr();
                expect(Token::Type::rparen, "')' required to close exp(");
                return TauExpr::exponential(inner);
            }
            case Token::Type::lparen: {
                ++i_;
                TauExpr inner = expr();
                expect(Token::Type::rparen, "')' required");
                return inner;
            }
            default:
                throw ParseError("unexpected '" + token_text(t.type) + "'", t.offset);
        }
    }

    static std::string token_text(Token::Type ty) {
        switch (ty) {
            case Token::Type::plus: return "+";
            case Token::Type::minus: return "-";
            case Token::Type::star: return "*";
            case Token::Type::slash: return "/";
            case Token::Type::caret: return "^";
            case Token::Type::rparen: return ")";
            case Token::Type::end: return "end of input";
            default: return "token";
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

TauExpr parse_tau(const std::string& text) {
    Lexer lex(text);
    Parser parser(lex.run());
    return parser.run();
}

// ---------------------------------------------------------------------------
// Printer. Levels: add/sub 1, mul/div 2, neg 3, pow/atom 4.

namespace {

std::string print_node(const TauExpr& e);

std::string print_literal(std::complex<double> v) {
    const double re = v.real();
    const double im = v.imag();
    if (im == 0.0) return fmt_double(re);
    std::string imag = im == 1.0 ? "i" : (im == -1.0 ? "-i" : fmt_double(im) + "i");
    if (re == 0.0) return imag;
    // Both parts: a parenthesized sum the parser folds back to one literal.
    if (im < 0.0) {
        const double pos = -im;
        return "(" + fmt_double(re) + " - " + (pos == 1.0 ? "i" : fmt_double(pos) + "i") + ")";
    }
    return "(" + fmt_double(re) + " + " + (im == 1.0 ? "i" : fmt_double(im) + "i") + ")";
}

// Binding levels: add/sub 1, mul/div 2, neg 3, pow 4, atoms 5.
int level_of(const TauExpr& e) {
    switch (e.kind()) {
        case TauExpr::Kind::add:
        case TauExpr::Kind::sub: return 1;
        case TauExpr::Kind::mul:
        case TauExpr::Kind::div: return 2;
        case TauExpr::Kind::neg: return 3;
        case TauExpr::Kind::pow: return 4;
        default: return 5;
    }
}

std::string maybe_paren(const TauExpr& e, int required) {
    const std::string s = print_node(e);
    if (level_of(e) < required) return "(" + s + ")";
    // Negative literals print with a leading '-', which binds like neg.
    if (e.kind() == TauExpr::Kind::literal && required > 3) {
        const std::complex<double> v = e.literal_value();
        const bool leading_minus = (v.imag() == 0.0 && v.real() < 0.0) ||
                                   (v.real() == 0.0 && v.imag() < 0.0);
        if (leading_minus) return "(" + s + ")";
    }
    return s;
}

std::string print_node(const TauExpr& e) {
    switch (e.kind()) {
        case TauExpr::Kind::literal: return print_literal(e.literal_value());
        case TauExpr::Kind::var: return "b";
        case TauExpr::Kind::add: return maybe_paren(e.lhs(), 1) + " + " + maybe_paren(e.rhs(), 2);
        case TauExpr::Kind::sub: return maybe_paren(e.lhs(), 1) + " - " + maybe_paren(e.rhs(), 2);
        case TauExpr::Kind::mul: return maybe_paren(e.lhs(), 2) + "*" + maybe_paren(e.rhs(), 3);
        case TauExpr::Kind::div: return maybe_paren(e.lhs(), 2) + "/" + maybe_paren(e.rhs(), 3);
        case TauExpr::Kind::neg: return "-" + maybe_paren(e.lhs(), 3);
        case TauExpr::Kind::pow:
            // The grammar has no chained '^', so a power base must read as an atom.
            return maybe_paren(e.lhs(), 5) + "^" + std::to_string(e.exponent());
        case TauExpr::Kind::exp_fn: return "exp(" + print_node(e.lhs()) + ")";
    }
    return "";
}

}  // namespace

std::string TauExpr::str() const { return print_node(*this); }

}  // namespace fibcm
