#include "fibcm/fibration_lab.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fibcm/errors.hpp"

namespace fibcm {

namespace {

std::string describe_point(std::complex<double> b) {
    std::ostringstream os;
    os << "b = " << b.real() << " + " << b.imag() << "i";
    return os.str();
}

// Second difference along one line of the sample, no wraparound. Neighbour
// differences keep constants at exactly zero; the boundary stencils are the
// usual one-sided 4-point formulas rearranged the same way.
double second_diff(const double* line, int i, int n, int stride) {
    auto at = [&](int k) { return line[static_cast<std::size_t>(k) * stride]; };
    if (i == 0) {
        return 2.0 * (at(0) - at(1)) - 3.0 * (at(1) - at(2)) + (at(2) - at(3));
    }
    if (i == n - 1) {
        return 2.0 * (at(n - 1) - at(n - 2)) - 3.0 * (at(n - 2) - at(n - 3)) +
               (at(n - 3) - at(n - 4));
    }
    return (at(i + 1) - at(i)) - (at(i) - at(i - 1));
}

// log Im tau as a field, with the family revalidated cheaply so hand-built
// TauFamily values fail loudly instead of feeding log a non-positive number.
TorusField log_im_field(const TauFamily& family) {
    const int n = family.base.N;
    if (family.samples.size() != static_cast<std::size_t>(n) * n) {
        throw DomainError("tau sample count does not match the base grid");
    }
    TorusField out(family.base);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double im = family.samples[static_cast<std::size_t>(r) * n + c].imag();
            if (!(im > 0.0)) {
                std::complex<double> b{c * family.base.h, r * family.base.h};
                throw DomainError("Im tau is not positive at " + describe_point(b));
            }
            out.at(r, c) = std::log(im);
        }
    }
    return out;
}

// Horizontal projection of the curvature density. In this product-chart
// model the curvature is pulled back from the base, so the projection is the
// identity; the hook keeps the averaging loop shaped like its definition,
// the fibrewise mean of the horizontal curvature.
double horizontal_component(double curvature_density) { return curvature_density; }

}  // namespace

TauFamily make_tau_family(const TauExpr& expr, const TorusGrid& base, int fibre_grid) {
    if (fibre_grid < 8) throw DomainError("fibre grid must be at least 8 samples per side");
    const int n = base.N;
    if (n < 8) throw DomainError("base grid is not initialized");

    TauFamily family{expr, base, fibre_grid, {}};
    family.samples.resize(static_cast<std::size_t>(n) * n);
    double max_abs_tau = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const std::complex<double> b{c * base.h, r * base.h};
            const std::complex<double> t = expr.eval(b);
            if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
                throw DomainError("tau evaluated to a non-finite value at " + describe_point(b));
            }
            if (!(t.imag() > 0.0)) {
                throw DomainError("Im tau must be positive; violated at " + describe_point(b));
            }
            family.samples[static_cast<std::size_t>(r) * n + c] = t;
            max_abs_tau = std::max(max_abs_tau, std::abs(t));
        }
    }

    // Interior Cauchy-Riemann residual D_y tau - i D_x tau, centered
    // differences. For a function holomorphic near the chart this is
    // O(h^2 |tau'''|); a pole close to the sample set blows it up.
    const double inv_2h = 0.5 * n;
    double worst = 0.0;
    const auto& s = family.samples;
    for (int r = 1; r < n - 1; ++r) {
        for (int c = 1; c < n - 1; ++c) {
            const std::size_t i = static_cast<std::size_t>(r) * n + c;
            const std::complex<double> dx = (s[i + 1] - s[i - 1]) * inv_2h;
            const std::complex<double> dy = (s[i + n] - s[i - n]) * inv_2h;
            worst = std::max(worst, std::abs(dy - std::complex<double>{0.0, 1.0} * dx));
        }
    }
    const double tol = 1000.0 * base.h * base.h * (1.0 + max_abs_tau);
    if (worst > tol) {
        std::ostringstream os;
        os << "tau fails the holomorphy check: interior Cauchy-Riemann residual " << worst
           << " exceeds " << tol << " (is there a pole near the chart?)";
        throw DomainError(os.str());
    }
    return family;
}

TorusField chart_laplacian(const TorusField& u) {
    const int n = u.n();
    if (n < 4) throw DomainError("chart Laplacian needs at least 4 samples per side");
    TorusField out(u.grid());
    const double inv_h2 = static_cast<double>(n) * static_cast<double>(n);
    const double* v = u.data().data();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double dxx = second_diff(v + static_cast<std::size_t>(r) * n, c, n, 1);
            const double dyy = second_diff(v + c, r, n, n);
            out.at(r, c) = (dxx + dyy) * inv_h2;
        }
    }
    return out;
}

TwistForm weil_petersson_form(const TauFamily& family) {
    return TwistForm{scaled(chart_laplacian(log_im_field(family)), -0.5)};
}

TwistForm fibre_average_a(const TauFamily& family) {
    // The metric Im tau(b) on the relative canonical bundle depends on the
    // base point only, so the curvature density iF = -i ddbar log Im tau is
    // constant along each fibre; compute that pullback once.
    const TorusField pullback = scaled(chart_laplacian(log_im_field(family)), -0.5);

    const int n = family.base.N;
    const int m = family.fibre_grid;
    if (m < 8) throw DomainError("fibre grid must be at least 8 samples per side");
    // Flat unit-area fibre form: every quadrature node carries weight 1/M^2.
    const double w = 1.0 / (static_cast<double>(m) * static_cast<double>(m));

    TorusField out(family.base);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const double f = pullback.at(r, c);
            detail::NeumaierSum num;
            detail::NeumaierSum den;
            for (int p = 0; p < m; ++p) {
                for (int q = 0; q < m; ++q) {
                    num.add(w * horizontal_component(f));
                    den.add(w);
                }
            }
            out.at(r, c) = num.value() / den.value();
        }
    }
    return TwistForm{out};
}

double alpha_from_twist(const TwistForm& a) {
    return a.density.mean() / (2.0 * std::numbers::pi);
}

}  // namespace fibcm
