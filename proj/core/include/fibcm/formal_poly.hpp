#pragma once

#include <map>
#include <string>

#include "fibcm/rational.hpp"

namespace fibcm {

// Polynomial in the formal tensor-power variable m with exact rational
// coefficients. Zero coefficients are never stored, so equality of the
// coefficient maps is equality of polynomials.
class FormalPoly {
public:
    FormalPoly() = default;

    static FormalPoly monomial(int exponent, const Rational& c);

    const std::map<int, Rational>& coeffs() const { return c_; }
    Rational coeff(int exponent) const;
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }

    FormalPoly& operator+=(const FormalPoly& o);
    FormalPoly& operator-=(const FormalPoly& o);
    friend FormalPoly operator+(FormalPoly a, const FormalPoly& b) { return a += b; }
    friend FormalPoly operator-(FormalPoly a, const FormalPoly& b) { return a -= b; }
    friend FormalPoly operator*(const FormalPoly& a, const FormalPoly& b);

    FormalPoly scaled(const Rational& c) const;
    FormalPoly shifted(int j) const;  // multiply by m^j

    Rational eval(const Rational& m) const;

    // Human readable, highest exponent first, e.g. "8*m^2 - 4*m + 1".
    std::string str() const;

    friend bool operator==(const FormalPoly& a, const FormalPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FormalPoly& a, const FormalPoly& b) { return !(a == b); }

private:
    void add_to(int e, const Rational& v);
    std::map<int, Rational> c_;
};

}  // namespace fibcm
