#include "fibcm/ma_solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fibcm/errors.hpp"
#include "fibcm/spectral.hpp"

namespace fibcm {

namespace {

void validate(const SolveConfig& cfg) {
    if (cfg.lambda > 0.0 || !std::isfinite(cfg.lambda)) {
        throw DomainError("lambda must be finite and <= 0");
    }
    if (!(cfg.tol > 0.0)) throw DomainError("tol must be positive");
    if (cfg.max_newton < 1) throw DomainError("max_newton must be at least 1");
    if (cfg.continuity_steps < 1) throw DomainError("continuity_steps must be at least 1");
    if (!(cfg.damping > 0.0) || cfg.damping > 1.0) throw DomainError("damping must be in (0, 1]");
}

// M(phi) = 1 + 0.5*Lap(phi)
TorusField density_of(const TorusField& phi) {
    TorusField w = laplacian(phi);
    for (double& x : w.data()) x = 1.0 + 0.5 * x;
    return w;
}

// G = log(M) - lambda*phi + f; caller guarantees M > 0.
TorusField residual_field(const TorusField& w, const TorusField& phi, const TorusField& f,
                          double lambda) {
    TorusField G(phi.grid());
    for (std::size_t i = 0; i < G.data().size(); ++i) {
        G.data()[i] = std::log(w.data()[i]) - lambda * phi.data()[i] + f.data()[i];
    }
    return G;
}

double mean_exp_neg(const TorusField& f) {
    detail::NeumaierSum acc;
    for (double x : f.data()) acc.add(std::exp(-x));
    return acc.value() / static_cast<double>(f.data().size());
}

// Newton correction: (0.5*Lap - lambda*W) delta = -W*G. For lambda = 0
// this is one exact Poisson inversion (after projecting the mean). For
// lambda < 0 the constant-coefficient operator 0.5*Lap - lambda*mean(W)
// preconditions a fixed-point iteration; the iteration stops at 1e-12
// relative accuracy or when rounding makes it stagnate. Plain conjugate
// gradients would be unsound here: on the torus the operator has a
// positive constant mode and negative oscillating modes.
TorusField newton_delta(Spectral& ws, const TorusField& w, const TorusField& G, double lambda) {
    TorusField rhs(w.grid());
    for (std::size_t i = 0; i < rhs.data().size(); ++i) {
        rhs.data()[i] = -w.data()[i] * G.data()[i];
    }

    if (lambda == 0.0) {
        const double m = rhs.mean();
        return ws.solve_half_lap_shifted(add_scalar(rhs, -m), 0.0);
    }

    const double scale = rhs.max_abs();
    TorusField delta(w.grid());
    if (scale == 0.0) return delta;

    const double shift = -lambda * w.mean();  // > 0
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 500; ++it) {
        TorusField res = laplacian(delta);
        for (std::size_t i = 0; i < res.data().size(); ++i) {
            res.data()[i] = rhs.data()[i] -
                            (0.5 * res.data()[i] - lambda * w.data()[i] * delta.data()[i]);
        }
        const double rr = res.max_abs();
        if (rr <= 1e-12 * scale || rr >= 0.9 * prev) break;
        prev = rr;
        delta = add(delta, ws.solve_half_lap_shifted(res, shift));
    }
    return delta;
}

}  // namespace

SolveReport solve_ma(const TorusField& f, const SolveConfig& cfg) {
    return solve_ma(f, cfg, TorusField(f.grid()));
}

SolveReport solve_ma(const TorusField& f, const SolveConfig& cfg, const TorusField& phi0) {
    validate(cfg);
    if (!same_grid(f.grid(), phi0.grid())) throw DomainError("f and phi0 live on different grids");
    if (!f.finite()) throw DomainError("f contains non-finite samples");
    if (!phi0.finite()) throw DomainError("phi0 contains non-finite samples");
    const double lambda = cfg.lambda;

    if (lambda == 0.0) {
        const double me = mean_exp_neg(f);
        if (std::abs(me - 1.0) > 1e-8) {
            throw DomainError("lambda = 0 requires mean(exp(-f)) = 1; got " + std::to_string(me));
        }
    }

    // Halve an inadmissible initial guess toward zero until the density is
    // safely inside the positive cone (phi = 0 always is).
    TorusField phi = phi0;
    for (int i = 0; i < 200 && density_of(phi).min_value() <= 0.05; ++i) phi = scaled(phi, 0.5);
    if (lambda == 0.0) phi = add_scalar(phi, -phi.mean());

    Spectral ws(f.grid());
    std::vector<double> history;

    for (int step = 1; step <= cfg.continuity_steps; ++step) {
        const double t = static_cast<double>(step) / cfg.continuity_steps;
        TorusField ft = scaled(f, t);
        if (lambda == 0.0) {
            // Exact discrete solvability at every continuity step.
            ft = add_scalar(ft, std::log(mean_exp_neg(ft)));
        }

        bool step_converged = false;
        for (int it = 0; it < cfg.max_newton; ++it) {
            const TorusField w = density_of(phi);
            const TorusField G = residual_field(w, phi, ft, lambda);
            const double r = G.max_abs();
            history.push_back(r);
            if (r <= cfg.tol) {
                step_converged = true;
                break;
            }

            const TorusField delta = newton_delta(ws, w, G, lambda);

            double tstep = cfg.damping;
            bool accepted = false;
            for (int bt = 0; bt < 30; ++bt) {
                TorusField cand = axpy(phi, tstep, delta);
                if (lambda == 0.0) cand = add_scalar(cand, -cand.mean());
                const TorusField wc = density_of(cand);
                if (wc.min_value() > 0.0) {
                    const TorusField Gc = residual_field(wc, cand, ft, lambda);
                    if (Gc.max_abs() < r) {
                        phi = cand;
                        accepted = true;
                        break;
                    }
                }
                tstep *= 0.5;
            }
            if (!accepted) {
                throw SolveError(
                    "density collapse: no step kept 1 + 0.5*Lap(phi) positive and decreased "
                    "the residual after 30 halvings (continuity step " +
                        std::to_string(step) + ")",
                    history);
            }
        }
        if (!step_converged) {
            return SolveReport{phi, history, false, density_of(phi).min_value()};
        }
    }

    return SolveReport{phi, history, true, density_of(phi).min_value()};
}

double untraced_residual(const TorusField& phi, const TorusField& f, double lambda) {
    if (!same_grid(phi.grid(), f.grid())) throw DomainError("phi and f live on different grids");
    const TorusField w = density_of(phi);
    if (w.min_value() <= 0.0) {
        throw DomainError("density 1 + 0.5*Lap(phi) is not positive everywhere");
    }
    return residual_field(w, phi, f, lambda).max_abs();
}

double traced_residual(const TorusField& phi, const TorusField& a_density, double lambda) {
    if (!same_grid(phi.grid(), a_density.grid())) {
        throw DomainError("phi and a_density live on different grids");
    }
    const TorusField w = density_of(phi);
    if (w.min_value() <= 0.0) {
        throw DomainError("density 1 + 0.5*Lap(phi) is not positive everywhere");
    }
    TorusField logw(phi.grid());
    for (std::size_t i = 0; i < logw.data().size(); ++i) logw.data()[i] = std::log(w.data()[i]);
    const TorusField lap_logw = laplacian(logw);

    double worst = 0.0;
    for (std::size_t i = 0; i < w.data().size(); ++i) {
        const double scal = -lap_logw.data()[i] / w.data()[i];
        const double tr_a = a_density.data()[i] / w.data()[i];
        worst = std::max(worst, std::abs(0.5 * scal + tr_a + lambda));
    }
    return worst;
}

double compute_lambda(const TorusField& a_density) { return -a_density.mean(); }

TorusField make_f(const TorusField& a_density, double lambda) {
    if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
    TorusField rhs(a_density.grid());
    for (std::size_t i = 0; i < rhs.data().size(); ++i) {
        rhs.data()[i] = -a_density.data()[i] - lambda;
    }
    const double m = rhs.mean();
    if (std::abs(m) > 1e-10) {
        throw DomainError("cohomologically inconsistent data: mean(-a - lambda) = " +
                          std::to_string(m));
    }

    Spectral ws(a_density.grid());
    TorusField f = ws.solve_half_lap_shifted(add_scalar(rhs, -m), 0.0);
    if (lambda == 0.0) {
        f = add_scalar(f, std::log(mean_exp_neg(f)));
    }
    return f;
}

}  // namespace fibcm
