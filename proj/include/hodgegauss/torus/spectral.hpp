#pragma once

#include <complex>
#include <memory>
#include <stdexcept>

#include <fftw3.h>

#include "hodgegauss/torus/geometry.hpp"
#include "hodgegauss/torus/theta.hpp"

namespace hodgegauss::torus {

// 2-D FFT on N x N grids stored as Grid(ix, iy). Coefficients are normalized so
// that f(x, y) = sum_{m,n} F(m, n) exp(2 pi i (m x + n y)); F(i, j) holds the
// frequency pair (freq(i), freq(j)).
class Fft2 {
public:
    explicit Fft2(int N) : N_(N)
    {
        Grid a(N, N), b(N, N);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        // row-major [iy][ix] == column-major (ix, iy)
        fwd_.reset(fftw_plan_dft_2d(N, N, pa, pb, FFTW_FORWARD, flags), fftw_destroy_plan);
        bwd_.reset(fftw_plan_dft_2d(N, N, pa, pb, FFTW_BACKWARD, flags), fftw_destroy_plan);
        if (!fwd_ || !bwd_)
            throw std::runtime_error("FFTW planning failed");
    }

    int size() const { return N_; }

    Grid forward(const Grid& f) const
    {
        Grid in = f;
        Grid out(N_, N_);
        fftw_execute_dft(fwd_.get(), reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        out /= static_cast<double>(N_) * N_;
        return out;
    }

    Grid backward(const Grid& F) const
    {
        Grid in = F;
        Grid out(N_, N_);
        fftw_execute_dft(bwd_.get(), reinterpret_cast<fftw_complex*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        return out;
    }

    int freq(int i) const { return i <= N_ / 2 - 1 ? i : i - N_; }
    bool nyquist(int i) const { return i == N_ / 2; }

private:
    int N_;
    std::shared_ptr<fftw_plan_s> fwd_, bwd_;
};

// Lattice-coordinate symbols. With z = x + tau y,
//   dbar = (tau d_x - d_y)/(tau - taubar),   del = (-taubar d_x + d_y)/(tau - taubar),
// so exp(2 pi i (m x + n y)) has dbar-symbol 2 pi i (tau m - n)/(tau - taubar) and
// del-symbol 2 pi i (n - taubar m)/(tau - taubar).
inline cplx dbar_symbol(cplx tau, double m, double n)
{
    return cplx(0, 2.0 * pi) * (tau * m - n) / (tau - std::conj(tau));
}
inline cplx del_symbol(cplx tau, double m, double n)
{
    return cplx(0, 2.0 * pi) * (n - std::conj(tau) * m) / (tau - std::conj(tau));
}

} // namespace hodgegauss::torus
