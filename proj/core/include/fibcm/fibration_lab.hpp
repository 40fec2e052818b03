#pragma once

#include <complex>
#include <vector>

#include "fibcm/tau_expr.hpp"
#include "fibcm/torus_field.hpp"

namespace fibcm {

// An elliptic-curve family over the chart [0,1)^2: the fibre over
// b = x + iy is the flat torus C/(Z + tau(b)Z). The chart is sampled on a
// TorusGrid for storage compatibility, but nothing here wraps around; the
// sample is an honest rectangle and boundary stencils are one-sided.
struct TauFamily {
    TauExpr expr;
    TorusGrid base;
    int fibre_grid = 0;  // samples per side on each fibre torus, at least 8

    // tau evaluated at every base sample, row-major with the row index
    // running over y: samples[r*N + c] = tau(c*h + i*r*h).
    std::vector<std::complex<double>> samples;
};

// The base (1,1)-form a = density * (i/2) db /\ dbbar on the chart.
struct TwistForm {
    TorusField density;
};

// Samples expr over the chart and validates the family: every sample must be
// finite with Im tau > 0, and the interior discrete Cauchy-Riemann residual
// of tau must be O(h^2). The grammar can only express holomorphic functions,
// so the residual check is really a guard against poles close to the chart,
// where divided differences stop converging.
TauFamily make_tau_family(const TauExpr& expr, const TorusGrid& base, int fibre_grid);

// Chart Laplacian of a non-periodic sample: centered second differences in
// the interior, one-sided 4-point stencils on the boundary rows and columns.
// Every stencil is assembled from neighbour differences, so constant input
// gives exactly zero output.
TorusField chart_laplacian(const TorusField& u);

// Closed-form Weil-Petersson density -1/2 Lap log Im tau, the coefficient of
// -i ddbar log Im tau against (i/2) db /\ dbbar. Non-negative up to O(h^2)
// discretization for holomorphic families.
TwistForm weil_petersson_form(const TauFamily& family);

// Fibrewise mean of the horizontal curvature of the relative canonical
// bundle, metric Im tau, computed by quadrature over each M x M fibre with
// the flat unit-area fibre form as weight. Agrees with weil_petersson_form
// up to discretization; the integrand is fibre-constant in this chart model,
// so refining the fibre grid changes nothing beyond rounding.
TwistForm fibre_average_a(const TauFamily& family);

// mean(density) / (2 pi): the chart-level pairing of the twist class with
// the unit-area base.
double alpha_from_twist(const TwistForm& a);

}  // namespace fibcm
