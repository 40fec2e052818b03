#include "fibcm/cm_calculus.hpp"

#include "fibcm/errors.hpp"

namespace fibcm {

namespace {

void check(const FibrationData& d) {
    if (d.n < 1) throw DomainError("fibre dimension n must be at least 1");
    if (d.v.sign() <= 0) throw DomainError("fibre degree v must be positive");
    if (d.lower_order_h.size() > static_cast<std::size_t>(d.n > 1 ? d.n - 1 : 0)) {
        throw DomainError("lower_order_h has more than n-1 entries");
    }
    if (d.lower_order_push.size() > static_cast<std::size_t>(d.n)) {
        throw DomainError("lower_order_push has more than n entries");
    }
}

}  // namespace

FibrationData make_fibration_data(int n, Rational v, Rational kl_fibre, Rational ell, Rational k,
                                  std::vector<Rational> lower_order_h,
                                  std::vector<Rational> lower_order_push,
                                  std::optional<Rational> s_check) {
    FibrationData d{n, std::move(v), std::move(kl_fibre), std::move(ell), std::move(k),
                    std::move(lower_order_h), std::move(lower_order_push)};
    check(d);
    if (s_check) {
        Rational s = compute_s(d);
        if (*s_check != s) {
            throw DomainError("inconsistent fibre data: supplied s = " + s_check->str() +
                              " but -n*kl_fibre/v = " + s.str());
        }
    }
    return d;
}

const char* to_string(NefSign s) {
    switch (s) {
        case NefSign::positive: return "positive";
        case NefSign::negative: return "negative";
        default: return "zero";
    }
}

Rational compute_s(const FibrationData& d) {
    check(d);
    return Rational(-d.n) * d.kl_fibre / d.v;
}

FormalPoly hilbert_poly(const FibrationData& d) {
    check(d);
    const unsigned n = static_cast<unsigned>(d.n);
    const Rational nfact = Rational::factorial(n);
    FormalPoly p = FormalPoly::monomial(d.n, d.v / nfact);
    p += FormalPoly::monomial(d.n - 1, d.v * compute_s(d) / (Rational(2) * nfact));
    int e = d.n - 2;
    for (const Rational& c : d.lower_order_h) {
        p += FormalPoly::monomial(e, c);
        --e;
    }
    return p;
}

FormalPoly pushforward_degree_poly(const FibrationData& d) {
    check(d);
    const unsigned n = static_cast<unsigned>(d.n);
    FormalPoly p = FormalPoly::monomial(d.n + 1, d.ell / Rational::factorial(n + 1));
    p -= FormalPoly::monomial(d.n, d.k / (Rational(2) * Rational::factorial(n)));
    int e = d.n - 1;
    for (const Rational& c : d.lower_order_push) {
        p += FormalPoly::monomial(e, c);
        --e;
    }
    return p;
}

Rational cm_degree(const FibrationData& d) {
    check(d);
    return Rational::pow2(static_cast<unsigned>(d.n) + 1) *
           (Rational(d.n + 1) * d.k + compute_s(d) * d.ell);
}

Rational alpha_degree(const FibrationData& d) {
    check(d);
    return (Rational(d.n + 1) * d.k + compute_s(d) * d.ell) / (Rational(d.n + 1) * d.v);
}

CHReport ch_expand(const FibrationData& d) {
    check(d);
    const FormalPoly h = hilbert_poly(d);
    const FormalPoly push = pushforward_degree_poly(d);

    CHReport rep;
    rep.combination = h.shifted(d.n + 1).scaled(d.ell) -
                      push.shifted(d.n).scaled(Rational(d.n + 1) * d.v);
    rep.top_vanishes = rep.combination.coeff(2 * d.n + 1).is_zero();
    rep.m2n_coefficient = rep.combination.coeff(2 * d.n);
    rep.alpha_degree = alpha_degree(d);
    const int sign = rep.alpha_degree.sign();
    rep.nef_sign = sign > 0 ? NefSign::positive : (sign < 0 ? NefSign::negative : NefSign::zero);
    return rep;
}

FibrationData twist(const FibrationData& d, const Rational& degA) {
    check(d);
    const Rational s = compute_s(d);
    FibrationData out = d;
    out.ell = d.ell + Rational(d.n + 1) * degA * d.v;
    out.k = d.k - s * degA * d.v;
    out.lower_order_h.clear();
    out.lower_order_push.clear();
    return out;
}

long long morita_genus(long long g, long long m) {
    if (g < 2) throw DomainError("base genus must be at least 2");
    if (m < 1) throw DomainError("covering degree must be at least 1");
    if (g > 1000000 || m > 1000000) {
        throw DomainError("genus/degree out of the supported range (at most 10^6)");
    }
    return m * m * g - m * (m + 1) / 2 + 1;
}

}  // namespace fibcm
