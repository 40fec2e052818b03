#pragma once

#include <vector>

namespace fibcm {

// Uniform N x N sample lattice on the unit square torus [0,1)^2.
// N must be a power of two, at least 8; h = 1/N.
struct TorusGrid {
    int N = 0;
    double h = 0.0;
};

TorusGrid make_grid(int N);
bool same_grid(const TorusGrid& a, const TorusGrid& b);

// Real scalar field sampled at (x, y) = (c*h, r*h). Storage is row-major
// with the row index running over y, matching the CSV layout on disk.
class TorusField {
public:
    TorusField() = default;
    explicit TorusField(TorusGrid g, double fill = 0.0);

    const TorusGrid& grid() const { return g_; }
    int n() const { return g_.N; }

    double at(int r, int c) const { return v_[static_cast<std::size_t>(r) * g_.N + c]; }
    double& at(int r, int c) { return v_[static_cast<std::size_t>(r) * g_.N + c]; }

    const std::vector<double>& data() const { return v_; }
    std::vector<double>& data() { return v_; }

    // All reductions use compensated summation in a fixed row-major order,
    // so results are deterministic and exact to the last bit in practice.
    double mean() const;
    double max_abs() const;
    double min_value() const;
    bool finite() const;

private:
    TorusGrid g_;
    std::vector<double> v_;
};

namespace detail {

// Neumaier's compensated accumulator.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x);
    double value() const { return s + c; }
};

}  // namespace detail

TorusField add(const TorusField& a, const TorusField& b);
TorusField sub(const TorusField& a, const TorusField& b);
TorusField scaled(const TorusField& a, double c);
TorusField add_scalar(const TorusField& a, double c);
// a + t*b
TorusField axpy(const TorusField& a, double t, const TorusField& b);
double max_abs_diff(const TorusField& a, const TorusField& b);

// Five-point Laplacian with periodic wrap, assembled from neighbour
// differences so that constant fields map to exact zeros. The multiplier
// 1/h^2 = N^2 is a power of two, hence exact.
TorusField laplacian(const TorusField& u);

}  // namespace fibcm
