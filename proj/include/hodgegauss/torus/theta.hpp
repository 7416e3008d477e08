#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hodgegauss/torus/geometry.hpp"

namespace hodgegauss::torus {

using Grid = Eigen::ArrayXXcd; // Grid(ix, iy)

// Degree-e theta functions
//   theta_a(z) = sum_n exp(pi i e tau c^2 + 2 pi i e c z),  c = n + a/e,
// a basis of sections of L_e with factors of automorphy
//   z -> z + 1: 1,   z -> z + tau: exp(-pi i e tau - 2 pi i e z).
// With z = x + tau y each term factors as X_n(x) Y_n(y), so grids are sums of
// rank-one updates.
class ThetaSeries {
public:
    ThetaSeries(cplx tau, int e) : tau_(tau), e_(e)
    {
        if (e < 1)
            throw std::invalid_argument("theta series: degree must be >= 1");
        if (!(tau.imag() > 0.0))
            throw std::invalid_argument("theta series: Im tau must be positive");
    }

    int degree() const { return e_; }

    // Series indices n needed for y in [ylo, yhi] and derivative order k so the
    // dropped tail is below ~1e-16 relative to the weighted sup norm.
    std::vector<int> terms(int a, int k, double ylo, double yhi) const
    {
        std::vector<int> out;
        const double s = pi * e_ * tau_.imag();
        const int span = static_cast<int>(std::ceil(std::abs(ylo) + std::abs(yhi) + 12.0 / std::sqrt(s) + 8));
        for (int n = -span; n <= span; ++n) {
            double c = n + static_cast<double>(a) / e_;
            double dist = 0.0; // distance from -c to [ylo, yhi]
            if (-c < ylo)
                dist = ylo + c;
            else if (-c > yhi)
                dist = -c - yhi;
            double growth = k > 0 ? k * std::log(2.0 * pi * e_ * (std::abs(c) + 1.0)) : 0.0;
            if (s * dist * dist - growth < 40.0)
                out.push_back(n);
        }
        return out;
    }

    // k-th z-derivative of theta_a at z.
    cplx value(int a, cplx z, int k = 0) const
    {
        double y = z.imag() / tau_.imag();
        double x = z.real() - tau_.real() * y;
        cplx acc = 0.0;
        for (int n : terms(a, k, y, y)) {
            double c = n + static_cast<double>(a) / e_;
            cplx ph = cplx(0, pi * e_) * tau_ * (c * c + 2.0 * c * y) + cplx(0, 2.0 * pi * e_ * c * x);
            acc += std::exp(ph) * std::pow(cplx(0, 2.0 * pi * e_ * c), k);
        }
        return acc;
    }

    // Samples of the k-th derivative of theta_a(z + u) on the N x N grid, where the
    // shift u has lattice coordinates (xs, ys).
    Grid samples(int a, int k, int N, double xs = 0.0, double ys = 0.0) const
    {
        Grid out = Grid::Zero(N, N);
        Eigen::VectorXcd X(N), Y(N);
        for (int n : terms(a, k, ys, 1.0 + ys)) {
            double c = n + static_cast<double>(a) / e_;
            cplx dk = std::pow(cplx(0, 2.0 * pi * e_ * c), k);
            for (int i = 0; i < N; ++i) {
                double x = static_cast<double>(i) / N + xs;
                X(i) = std::exp(cplx(0, 2.0 * pi * e_ * c * x)) * dk;
                double y = static_cast<double>(i) / N + ys;
                Y(i) = std::exp(cplx(0, pi * e_) * tau_ * (c * c + 2.0 * c * y));
            }
            out.matrix().noalias() += X * Y.transpose();
        }
        return out;
    }

private:
    cplx tau_;
    int e_;
};

// L^2 weight for sections of L_e: |s|^2 exp(-2 pi e Im(tau) y^2) is periodic.
inline Eigen::ArrayXd theta_weight(cplx tau, int e, int N)
{
    Eigen::ArrayXd w(N);
    for (int j = 0; j < N; ++j) {
        double y = static_cast<double>(j) / N;
        w(j) = std::exp(-2.0 * pi * e * tau.imag() * y * y);
    }
    return w;
}

} // namespace hodgegauss::torus
