#include "fibcm/formal_poly.hpp"

#include "fibcm/errors.hpp"

namespace fibcm {

FormalPoly FormalPoly::monomial(int exponent, const Rational& c) {
    if (exponent < 0) throw DomainError("polynomial exponent must be non-negative");
    FormalPoly p;
    if (!c.is_zero()) p.c_.emplace(exponent, c);
    return p;
}

Rational FormalPoly::coeff(int exponent) const {
    auto it = c_.find(exponent);
    return it == c_.end() ? Rational(0) : it->second;
}

int FormalPoly::degree() const {
    return c_.empty() ? -1 : c_.rbegin()->first;
}

void FormalPoly::add_to(int e, const Rational& v) {
    auto it = c_.find(e);
    if (it == c_.end()) {
        if (!v.is_zero()) c_.emplace(e, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

FormalPoly& FormalPoly::operator+=(const FormalPoly& o) {
    for (const auto& [e, v] : o.c_) add_to(e, v);
    return *this;
}

FormalPoly& FormalPoly::operator-=(const FormalPoly& o) {
    for (const auto& [e, v] : o.c_) add_to(e, -v);
    return *this;
}

FormalPoly operator*(const FormalPoly& a, const FormalPoly& b) {
    FormalPoly out;
    for (const auto& [ea, va] : a.c_) {
        for (const auto& [eb, vb] : b.c_) {
            out.add_to(ea + eb, va * vb);
        }
    }
    return out;
}

FormalPoly FormalPoly::scaled(const Rational& c) const {
    FormalPoly out;
    if (c.is_zero()) return out;
    for (const auto& [e, v] : c_) out.c_.emplace(e, v * c);
    return out;
}

FormalPoly FormalPoly::shifted(int j) const {
    FormalPoly out;
    for (const auto& [e, v] : c_) {
        if (e + j < 0) throw DomainError("polynomial shift would create a negative exponent");
        out.c_.emplace(e + j, v);
    }
    return out;
}

Rational FormalPoly::eval(const Rational& m) const {
    // Horner over the dense range is wasteful for sparse maps; walk down
    // from the top exponent instead.
    Rational acc(0);
    int prev = -1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (prev < 0) {
            acc = it->second;
        } else {
            for (int i = 0; i < prev - it->first; ++i) acc *= m;
            acc += it->second;
        }
        prev = it->first;
    }
    if (prev > 0) {
        for (int i = 0; i < prev; ++i) acc *= m;
    }
    return acc;
}

std::string FormalPoly::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        Rational v = it->second;
        if (out.empty()) {
            if (v.sign() < 0) {
                out += "-";
                v = -v;
            }
        } else {
            out += v.sign() < 0 ? " - " : " + ";
            if (v.sign() < 0) v = -v;
        }
        const bool unit = it->first >= 1 && v == Rational(1);
        if (!unit) out += v.str();
        if (it->first >= 1) out += unit ? "m" : "*m";
        if (it->first >= 2) out += "^" + std::to_string(it->first);
    }
    return out;
}

}  // namespace fibcm
