#pragma once

#include "fibcm/torus_field.hpp"

namespace fibcm {

// Unique mean-zero u with (five-point discrete) Laplacian u = g.
// Requires |mean(g)| <= 1e-10; the tiny residual mean is projected out
// before inversion so the discrete system is exactly solvable.
TorusField poisson_solve(const TorusField& g);

// FFT workspace for one grid size, reused across repeated solves.
// Inverts the shifted half Laplacian: given g and shift >= 0, returns u
// with (0.5*Lap + shift) u = g in the discrete five-point sense. For
// shift == 0 the mean of g is projected out and u is returned mean-zero.
class Spectral {
public:
    explicit Spectral(TorusGrid g);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    TorusField solve_half_lap_shifted(const TorusField& g, double shift);

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace fibcm
