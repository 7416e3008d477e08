#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hodgegauss/core/types.hpp"
#include "hodgegauss/torus/backend.hpp"
#include "hodgegauss/torus/geometry.hpp"

namespace hodgegauss::torus {

// Jacobi theta_1(z | tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z), q = e^{i pi tau},
// and its first three z-derivatives.
struct Theta1 {
    cplx v, d1, d2, d3;
};

inline Theta1 theta1(cplx z, cplx tau)
{
    Theta1 t{0.0, 0.0, 0.0, 0.0};
    const cplx iptau = cplx(0, pi) * tau;
    for (int n = 0; n < 200; ++n) {
        const double h = n + 0.5;
        const cplx qn = std::exp(iptau * (h * h));
        const double k = (2 * n + 1) * pi;
        const double sgn = (n % 2 == 0) ? 2.0 : -2.0;
        const cplx s = std::sin(k * z), c = std::cos(k * z);
        const cplx a = sgn * qn;
        t.v += a * s;
        t.d1 += a * k * c;
        t.d2 -= a * k * k * s;
        t.d3 -= a * k * k * k * c;
        if (std::abs(a) * std::exp(k * std::abs(z.imag())) * k * k * k < 1e-18 * (std::abs(t.d1) + 1e-300) && n > 2)
            break;
    }
    return t;
}

// Weierstrass data for the lattice Z + tau Z (periods 1 and tau).
class Weierstrass {
public:
    explicit Weierstrass(cplx tau) : tau_(tau)
    {
        Theta1 t0 = theta1(0.0, tau);
        eta1_ = -t0.d3 / (3.0 * t0.d1);
        // Legendre relation eta1 tau - eta2 = 2 pi i (periods 1, tau)
        eta2_ = eta1_ * tau - cplx(0, 2.0 * pi);
    }

    // zeta(z + 1) = zeta(z) + eta1, zeta(z + tau) = zeta(z) + eta2
    cplx eta1() const { return eta1_; }
    cplx eta2() const { return eta2_; }

    // wp(z) = -eta1 - (log theta_1)''(z)
    cplx wp(cplx z) const
    {
        cplx w = reduce(z);
        Theta1 t = theta1(w, tau_);
        cplx L = t.d1 / t.v;
        return -eta1_ - (t.d2 / t.v - L * L);
    }

    cplx wp_prime(cplx z) const
    {
        cplx w = reduce(z);
        Theta1 t = theta1(w, tau_);
        cplx L = t.d1 / t.v;
        cplx L1 = t.d2 / t.v - L * L;
        cplx L2 = t.d3 / t.v - t.d2 * t.d1 / (t.v * t.v) - 2.0 * L * L1;
        return -L2;
    }

    cplx zeta(cplx z) const
    {
        Theta1 t = theta1(z, tau_);
        return eta1_ * z + t.d1 / t.v;
    }

    // Constant making [(wp(z - P) + c) dz] of type (0,1): its periods along 1 and
    // tau are (-eta1 + c, -eta2 + c tau); proportionality to (1, taubar) gives
    // c = (eta1 taubar - eta2) / (taubar - tau).
    cplx type01_constant() const
    {
        cplx tb = std::conj(tau_);
        return (eta1_ * tb - eta2_) / (tb - tau_);
    }

private:
    cplx reduce(cplx z) const
    {
        double y = z.imag() / tau_.imag();
        double x = z.real() - tau_.real() * y;
        x -= std::floor(x + 0.5);
        y -= std::floor(y + 0.5);
        return x + tau_ * y;
    }

    cplx tau_;
    cplx eta1_, eta2_;
};

// dz-coefficient of eta = -(wp(z - P) + c) dz: principal part -1/(z-P)^2 (the
// same normalization as on P^1), no residue, class of type (0,1).
inline cplx eta_coefficient(const Weierstrass& W, cplx z, cplx P) { return -(W.wp(z - P) + W.type01_constant()); }

// Grid samples of the eta coefficient; the node nearest P is rejected if it
// coincides with P.
inline Grid eta_weierstrass(const Geometry& g, cplx P)
{
    Weierstrass W(g.tau);
    Grid out(g.N, g.N);
    for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.N; ++i) {
            cplx z = g.point(g.node(i), g.node(j));
            if (std::abs(g.reduce(z - P)) < 1e-12)
                throw std::invalid_argument("eta_weierstrass: P coincides with a grid node");
            out(i, j) = eta_coefficient(W, z, P);
        }
    return out;
}

// Periods of eta along the cycles z0 + t and z0 + t tau, t in [0, 1], by the
// trapezoid rule (exponentially accurate for periodic analytic integrands).
inline std::pair<cplx, cplx> eta_periods(cplx tau, cplx P, int samples = 2048)
{
    Weierstrass W(tau);
    cplx a = 0.0, b = 0.0;
    cplx za = P + 0.5 * tau; // horizontal cycle half a period away from P
    cplx zb = P + 0.5;       // slanted cycle
    for (int k = 0; k < samples; ++k) {
        double t = static_cast<double>(k) / samples;
        a += eta_coefficient(W, za + t, P);
        b += eta_coefficient(W, zb + t * tau, P) * tau;
    }
    return {a / static_cast<double>(samples), b / static_cast<double>(samples)};
}

// The class rho_Q(xi_P) through the closed form of the eta path:
//   sigma = -eta * sum a_ij theta_i(z) theta_j(P) = (wp(z-P) + c) N(z) dz,
// read off by a least-squares fit on 4d nodes of the horizontal line half a period
// from P. With only d equispaced nodes a theta function can vanish at all of them.
inline std::vector<cplx> eta_path_image(const Backend& b, const SymmetricTensor<cplx>& Q, cplx P)
{
    const int d = b.degree();
    const Geometry& g = b.geometry();
    Weierstrass W(g.tau);
    auto [xp, yp] = g.lattice(P);
    const double y0 = yp + 0.5 - std::floor(yp + 0.5);
    const int M = 4 * d;
    std::vector<cplx> thetaP(d);
    for (int j = 0; j < d; ++j)
        thetaP[j] = b.basis_value(j, 0, P);
    Eigen::MatrixXcd A(M, d);
    Eigen::VectorXcd rhs(M);
    for (int k = 0; k < M; ++k) {
        cplx z = g.point(xp + (k + 0.5) / M, y0);
        cplx Nz = 0.0;
        for (int i = 0; i < d; ++i) {
            cplx ti = b.basis_value(i, 0, z);
            A(k, i) = ti;
            for (int j = 0; j < d; ++j) {
                cplx a = Q.entry({i, j});
                if (a != 0.0)
                    Nz += a * ti * thetaP[j];
            }
        }
        rhs(k) = -eta_coefficient(W, z, P) * Nz;
    }
    Eigen::VectorXcd c = A.colPivHouseholderQr().solve(rhs);
    return {c.data(), c.data() + d};
}

} // namespace hodgegauss::torus
