#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace hodgegauss::torus {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// C = C / (Z + tau Z) with the flat Kaehler form c (i/2) dz ^ dzbar. Grid nodes sit
// at lattice coordinates (i/N, j/N), z = x + tau y.
struct Geometry {
    cplx tau{0.0, 1.0};
    int N = 256;
    double metric_scale = 1.0;

    void validate() const
    {
        if (!(tau.imag() > 0.0))
            throw std::invalid_argument("tau must have positive imaginary part");
        if (N < 8 || (N & (N - 1)) != 0)
            throw std::invalid_argument("grid N must be a power of two >= 8, got " + std::to_string(N));
        if (!(metric_scale > 0.0))
            throw std::invalid_argument("metric scale must be positive");
    }

    double im_tau() const { return tau.imag(); }
    double node(int i) const { return static_cast<double>(i) / N; }
    cplx point(double x, double y) const { return x + tau * y; }

    std::pair<double, double> lattice(cplx z) const
    {
        double y = z.imag() / tau.imag();
        return {z.real() - tau.real() * y, y};
    }

    // Euclidean distance from z to the boundary of the open unit cell.
    double chart_margin(cplx z) const
    {
        auto [x, y] = lattice(z);
        double dx = std::min(x, 1.0 - x) * tau.imag() / std::abs(tau);
        double dy = std::min(y, 1.0 - y) * tau.imag();
        return std::min(dx, dy);
    }

    // Largest bump radius used by default at z: the support disc of radius 2r
    // fills 90% of the distance to the cell boundary.
    double default_bump_radius(cplx z) const { return 0.45 * chart_margin(z); }

    // Distance to the nearest lattice translate of w (w reduced to the cell about 0).
    cplx reduce(cplx w) const
    {
        auto [x, y] = lattice(w);
        x -= std::floor(x + 0.5);
        y -= std::floor(y + 0.5);
        return point(x, y);
    }
};

} // namespace hodgegauss::torus
