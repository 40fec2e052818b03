#pragma once

#include <vector>

#include "fibcm/torus_field.hpp"

namespace fibcm {

// Scalar reduction of the twisted Kaehler-Einstein equation on the flat
// unit torus. Module-wide conventions:
//   * the reference form has unit total volume and i ddbar phi acts on the
//     density as (1/2) Lap phi, so the relative density is
//     M(phi) = 1 + (1/2) Lap phi, which must stay positive;
//   * the equation solved is log M(phi) = lambda*phi - f with lambda <= 0;
//   * for lambda = 0 the data must satisfy mean(exp(-f)) = 1 (within 1e-8);
//     the solver shifts f by log mean(exp(-f)) so the discrete problem is
//     exactly solvable, and gauges the solution to mean zero.
struct SolveConfig {
    double lambda = 0.0;       // <= 0
    double tol = 1e-10;        // max-norm residual target, > 0
    int max_newton = 50;       // Newton iterations per continuity step
    int continuity_steps = 1;  // homotopy in t*f for t = 1/steps, ..., 1
    double damping = 1.0;      // initial Newton step scale, in (0, 1]
};

struct SolveReport {
    TorusField phi;
    std::vector<double> residual_history;  // max-norm residuals, all steps
    bool converged = false;
    double min_density = 0.0;  // min over the grid of M(phi) at the final phi
};

// Damped Newton solve of log(1 + 0.5*Lap(phi)) = lambda*phi - f.
// The linearized system (0.5*Lap - lambda*M) delta = -M * residual is
// solved by a Fourier-preconditioned iteration to 1e-12 relative accuracy.
// A supplied initial guess is halved until M(phi0) is safely positive, so
// any finite smooth guess is admissible. Throws SolveError if no
// admissible descent step exists after 30 halvings (density collapse);
// returns converged = false if max_newton is exhausted.
SolveReport solve_ma(const TorusField& f, const SolveConfig& cfg);
SolveReport solve_ma(const TorusField& f, const SolveConfig& cfg, const TorusField& phi0);

// max |log M(phi) - lambda*phi + f|; requires M(phi) > 0.
double untraced_residual(const TorusField& phi, const TorusField& f, double lambda);

// Residual of the traced equation in this module's normalization.
// With Scal = -M(phi)^{-1} Lap log M(phi) (scalar curvature of the solved
// metric) and tr a = a_density / M(phi), the combination
//   (1/2) Scal + tr a + lambda
// vanishes identically, up to Lap of the un-traced residual, whenever phi
// solves the un-traced equation with f built from a via make_f. Returns
// its max norm. For phi = 0, a = c, lambda = 0 this is |c|.
double traced_residual(const TorusField& phi, const TorusField& a_density, double lambda);

// The cohomologically consistent constant on the unit-volume torus:
// -mean(a_density). Zero exactly when a is i-ddbar-exact.
double compute_lambda(const TorusField& a_density);

// Potential f with (1/2) Lap f = -a_density - lambda, which requires
// |mean(-a_density - lambda)| <= 1e-10. For lambda = 0 the additive
// constant is fixed by mean(exp(-f)) = 1, otherwise f is mean-zero.
TorusField make_f(const TorusField& a_density, double lambda);

}  // namespace fibcm
