#include "fibcm/torus_field.hpp"

#include <cmath>
#include <string>

#include "fibcm/errors.hpp"

namespace fibcm {

TorusGrid make_grid(int N) {
    if (N < 8 || (N & (N - 1)) != 0) {
        throw DomainError("grid size must be a power of two, at least 8 (got " +
                          std::to_string(N) + ")");
    }
    return TorusGrid{N, 1.0 / N};
}

bool same_grid(const TorusGrid& a, const TorusGrid& b) { return a.N == b.N; }

TorusField::TorusField(TorusGrid g, double fill)
    : g_(g), v_(static_cast<std::size_t>(g.N) * g.N, fill) {
    if (g.N < 8) throw DomainError("field constructed on an invalid grid");
}

namespace detail {

void NeumaierSum::add(double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
        c += (s - t) + x;
    } else {
        c += (x - t) + s;
    }
    s = t;
}

}  // namespace detail

double TorusField::mean() const {
    detail::NeumaierSum acc;
    for (double x : v_) acc.add(x);
    return acc.value() / static_cast<double>(v_.size());
}

double TorusField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

double TorusField::min_value() const {
    double m = v_.empty() ? 0.0 : v_.front();
    for (double x : v_) m = std::min(m, x);
    return m;
}

bool TorusField::finite() const {
    for (double x : v_) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

namespace {

void require_same(const TorusField& a, const TorusField& b) {
    if (!same_grid(a.grid(), b.grid())) throw DomainError("fields live on different grids");
}

}  // namespace

TorusField add(const TorusField& a, const TorusField& b) {
    require_same(a, b);
    TorusField out(a.grid());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

TorusField sub(const TorusField& a, const TorusField& b) {
    require_same(a, b);
    TorusField out(a.grid());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

TorusField scaled(const TorusField& a, double c) {
    TorusField out(a.grid());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] * c;
    return out;
}

TorusField add_scalar(const TorusField& a, double c) {
    TorusField out(a.grid());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] + c;
    return out;
}

TorusField axpy(const TorusField& a, double t, const TorusField& b) {
    require_same(a, b);
    TorusField out(a.grid());
    for (std::size_t i = 0; i < out.data().size(); ++i) {
        out.data()[i] = a.data()[i] + t * b.data()[i];
    }
    return out;
}

double max_abs_diff(const TorusField& a, const TorusField& b) {
    require_same(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

TorusField laplacian(const TorusField& u) {
    const int N = u.grid().N;
    const double inv_h2 = static_cast<double>(N) * static_cast<double>(N);
    TorusField out(u.grid());
    for (int r = 0; r < N; ++r) {
        const int rp = (r + 1 == N) ? 0 : r + 1;
        const int rm = (r == 0) ? N - 1 : r - 1;
        for (int c = 0; c < N; ++c) {
            const int cp = (c + 1 == N) ? 0 : c + 1;
            const int cm = (c == 0) ? N - 1 : c - 1;
            const double uc = u.at(r, c);
            const double dx = (u.at(r, cp) - uc) - (uc - u.at(r, cm));
            const double dy = (u.at(rp, c) - uc) - (uc - u.at(rm, c));
            out.at(r, c) = (dx + dy) * inv_h2;
        }
    }
    return out;
}

}  // namespace fibcm
