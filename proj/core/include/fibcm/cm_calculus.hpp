#pragma once

#include <optional>
#include <vector>

#include "fibcm/formal_poly.hpp"

namespace fibcm {

// Numeric intersection invariants of a polarised fibration X -> B over a
// curve base, with n-dimensional fibres Y polarised by L:
//   v        = c1(L)|_Y^n on a fibre (> 0),
//   kl_fibre = c1(K_{X/B})|_Y . c1(L)|_Y^{n-1} on a fibre,
//   ell      = c1(L)^{n+1}[X],
//   k        = c1(K_{X/B}) . c1(L)^n [X].
// lower_order_h holds optional Hilbert-polynomial coefficients for the
// exponents n-2, n-3, ..., 0 (descending), lower_order_push likewise for
// deg c1(pi_* L^m) from exponent n-1 downward. Both default to absent;
// the two leading orders determine everything the expansion report checks.
struct FibrationData {
    int n = 1;
    Rational v;
    Rational kl_fibre;
    Rational ell;
    Rational k;
    std::vector<Rational> lower_order_h;
    std::vector<Rational> lower_order_push;
};

// Validating constructor. s_check, when given, must equal the fibre
// average-scalar-curvature constant -n*kl_fibre/v; this rejects data whose
// two encodings of the fibre constant disagree.
FibrationData make_fibration_data(int n, Rational v, Rational kl_fibre, Rational ell, Rational k,
                                  std::vector<Rational> lower_order_h = {},
                                  std::vector<Rational> lower_order_push = {},
                                  std::optional<Rational> s_check = std::nullopt);

enum class NefSign { positive, zero, negative };
const char* to_string(NefSign s);

// Expansion report for the stability combination
//   h(m) * m^{n+1} * ell  -  m^n * (n+1) * v * deg c1(pi_* L^m).
struct CHReport {
    FormalPoly combination;
    bool top_vanishes = false;   // coefficient of m^{2n+1} is exactly zero
    Rational m2n_coefficient;    // coefficient of m^{2n}
    Rational alpha_degree;
    NefSign nef_sign = NefSign::zero;
};

// Fibre constant s with 2*pi*s the average fibre scalar curvature,
// computed as -n*kl_fibre/v (c1(Y) = -c1(K_Y) restricted to the fibre).
Rational compute_s(const FibrationData& d);

// v*(m^n/n! + s*m^{n-1}/(2 n!)) plus user-supplied lower order terms.
FormalPoly hilbert_poly(const FibrationData& d);

// ell*m^{n+1}/(n+1)! - k*m^n/(2 n!) plus user-supplied lower order terms.
FormalPoly pushforward_degree_poly(const FibrationData& d);

// 2^{n+1} * ((n+1)*k + s*ell), the CM-line-bundle degree on the base.
Rational cm_degree(const FibrationData& d);

// cm_degree / (2^{n+1} (n+1) v) = ((n+1)k + s*ell) / ((n+1)v).
Rational alpha_degree(const FibrationData& d);

CHReport ch_expand(const FibrationData& d);

// Intersection data of L twisted by a pullback line bundle of degree degA:
// ell' = ell + (n+1)*degA*v, k' = k - s*degA*v, fibre data unchanged.
// Lower order coefficients describe the untwisted bundle and are dropped.
FibrationData twist(const FibrationData& d, const Rational& degA);

// m^2 g - m(m+1)/2 + 1, the base genus of the m-fold covering construction
// applied to a genus g >= 2 surface bundle. Always >= 2.
long long morita_genus(long long g, long long m);

}  // namespace fibcm
