#include "fibcm/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fibcm/errors.hpp"

namespace fibcm {

struct Spectral::Impl {
    TorusGrid grid;
    int nc = 0;                        // N/2 + 1 columns in half-complex layout
    double* real = nullptr;            // N x N
    fftw_complex* freq = nullptr;      // N x nc
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<double> half_symbol;   // eigenvalues of 0.5*Lap per (row, col) mode

    explicit Impl(TorusGrid g) : grid(g), nc(g.N / 2 + 1) {
        const int N = grid.N;
        real = fftw_alloc_real(static_cast<std::size_t>(N) * N);
        freq = fftw_alloc_complex(static_cast<std::size_t>(N) * nc);
        if (real == nullptr || freq == nullptr) throw Error("fftw allocation failed");
        // FFTW_ESTIMATE keeps planning deterministic (no runtime measurement).
        fwd = fftw_plan_dft_r2c_2d(N, N, real, freq, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d(N, N, freq, real, FFTW_ESTIMATE);
        if (fwd == nullptr || bwd == nullptr) throw Error("fftw planning failed");

        // Five-point symbol: Lap -> -(4/h^2)(sin^2(pi j/N) + sin^2(pi k/N)).
        std::vector<double> s(N);
        const double inv_h2 = static_cast<double>(N) * static_cast<double>(N);
        for (int j = 0; j < N; ++j) {
            const double sj = std::sin(std::numbers::pi * j / N);
            s[j] = sj * sj;
        }
        half_symbol.resize(static_cast<std::size_t>(N) * nc);
        for (int j = 0; j < N; ++j) {
            for (int k = 0; k < nc; ++k) {
                half_symbol[static_cast<std::size_t>(j) * nc + k] =
                    -2.0 * inv_h2 * (s[j] + s[k]);
            }
        }
    }

    ~Impl() {
        if (fwd != nullptr) fftw_destroy_plan(fwd);
        if (bwd != nullptr) fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(freq);
    }
};

Spectral::Spectral(TorusGrid g) : impl_(new Impl(make_grid(g.N))) {}

Spectral::~Spectral() { delete impl_; }

TorusField Spectral::solve_half_lap_shifted(const TorusField& g, double shift) {
    const int N = impl_->grid.N;
    if (g.grid().N != N) throw DomainError("field does not match the workspace grid");
    if (shift < 0.0) throw DomainError("spectral shift must be non-negative");

    for (std::size_t i = 0; i < g.data().size(); ++i) impl_->real[i] = g.data()[i];
    fftw_execute(impl_->fwd);

    const std::size_t modes = static_cast<std::size_t>(N) * impl_->nc;
    for (std::size_t i = 0; i < modes; ++i) {
        if (i == 0) {
            if (shift == 0.0) {
                impl_->freq[0][0] = 0.0;
                impl_->freq[0][1] = 0.0;
            } else {
                impl_->freq[0][0] /= shift;
                impl_->freq[0][1] /= shift;
            }
            continue;
        }
        const double denom = impl_->half_symbol[i] + shift;
        if (std::abs(denom) < 1e-300) {
            throw DomainError("spectral shift coincides with a Laplacian eigenvalue");
        }
        impl_->freq[i][0] /= denom;
        impl_->freq[i][1] /= denom;
    }

    fftw_execute(impl_->bwd);

    TorusField out(impl_->grid);
    const double scale = 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = impl_->real[i] * scale;
    if (shift == 0.0) {
        // Pin the gauge exactly: remove the rounding-level mean.
        out = add_scalar(out, -out.mean());
    }
    return out;
}

TorusField poisson_solve(const TorusField& g) {
    const double m = g.mean();
    if (std::abs(m) > 1e-10) {
        throw DomainError("poisson data has non-negligible mean " + std::to_string(m) +
                          "; the periodic problem is unsolvable");
    }
    Spectral ws(g.grid());
    const TorusField rhs = scaled(add_scalar(g, -m), 0.5);
    return ws.solve_half_lap_shifted(rhs, 0.0);
}

}  // namespace fibcm
