#pragma once

#include <cmath>

namespace hodgegauss::torus {

// Radial C-infinity profile: b = 1 for rho <= r, b = 0 for rho >= 2r, and
// b = 1 - S((rho - r)/r) between, with S(s) = A/(A+B), A = exp(-beta/s),
// B = exp(-beta/(1-s)).
struct BumpProfile {
    double radius = 0.2;
    double beta = 2.5;

    double value(double rho) const
    {
        if (rho <= radius)
            return 1.0;
        if (rho >= 2.0 * radius)
            return 0.0;
        double s = (rho - radius) / radius;
        double lt = beta * (1.0 / (1.0 - s) - 1.0 / s); // log(A/B)
        if (lt > 700.0)
            return 0.0;
        if (lt < -700.0)
            return 1.0;
        double t = std::exp(lt);
        return 1.0 - t / (1.0 + t);
    }

    // db/drho
    double derivative(double rho) const
    {
        if (rho <= radius || rho >= 2.0 * radius)
            return 0.0;
        double s = (rho - radius) / radius;
        double lt = beta * (1.0 / (1.0 - s) - 1.0 / s);
        if (std::abs(lt) > 700.0)
            return 0.0;
        double t = std::exp(lt);
        double ab = t / ((1.0 + t) * (1.0 + t));
        double ds = beta / (s * s) + beta / ((1.0 - s) * (1.0 - s));
        return -ds * ab / radius;
    }
};

} // namespace hodgegauss::torus
