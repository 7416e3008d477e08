#pragma once

#include <cmath>
#include <complex>
#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hodgegauss/core/multi_index.hpp"
#include "hodgegauss/core/types.hpp"
#include "hodgegauss/torus/bump.hpp"
#include "hodgegauss/torus/geometry.hpp"
#include "hodgegauss/torus/spectral.hpp"
#include "hodgegauss/torus/theta.hpp"

namespace hodgegauss::torus {

// Monodromy phases of a flat line bundle M.
struct FlatCharacter {
    double chi1 = 0.0;
    double chi2 = 0.0;
    bool trivial() const { return chi1 == 0.0 && chi2 == 0.0; }
};

// Bundle L^power (x) M^character.
struct Twist {
    int power = 0;
    int character = 0;
    friend bool operator==(const Twist& a, const Twist& b) { return a.power == b.power && a.character == b.character; }
};

struct Section {
    int power = 1;
    Grid v;
};

// dzbar-coefficient of a (0,1)-form.
struct Form01 {
    Twist twist;
    Grid coeff;
};

// Function with values in M^character: samples and the Fourier coefficients of
// its periodized part.
struct Function {
    Twist twist;
    Grid values;
    Grid spectrum;
};

// dz-coefficient of a (1,0)-form, carried with its dbar derivative.
struct Form10 {
    Twist twist;
    Grid v;
    Grid dbar;
};

class Backend {
public:
    using scalar_type = cplx;
    using point_type = cplx;
    using section_type = Section;
    using form01_type = Form01;
    using function_type = Function;
    using form10_type = Form10;
    using image_type = GaussImage<cplx>;

    // Singular values below this fraction of the largest count as zero.
    static constexpr double svd_tolerance = 1e-8;
    static constexpr double min_gap_ratio = 1e3;

    Backend(Geometry g, int d, FlatCharacter chi = {}, double bump_beta = 2.5)
        : g_(g), d_(d), chi_(chi), beta_(bump_beta), fft_(std::make_shared<Fft2>(g.N)),
          x_(Eigen::ArrayXd::LinSpaced(g.N, 0.0, 1.0 - 1.0 / g.N)), cache_(std::make_shared<Cache>())
    {
        g_.validate();
        if (d < 1)
            throw std::invalid_argument("torus backend: degree must be >= 1");
        sections_.resize(d);
        for (int a = 0; a < d; ++a)
            sections_[a] = ThetaSeries(g_.tau, d).samples(a, 0, g_.N);
        (void)target(Twist{1, 0});
    }

    // Same geometry and degree, M replaced by the flat bundle with phases chi.
    Backend with_character(FlatCharacter chi) const { return Backend(g_, d_, chi, beta_); }
    Backend with_metric_scale(double c) const
    {
        Geometry g = g_;
        g.metric_scale = c;
        return Backend(g, d_, chi_, beta_);
    }

    const Geometry& geometry() const { return g_; }
    const FlatCharacter& character() const { return chi_; }
    int degree() const { return d_; }
    int rank() const { return d_; }
    double bump_beta() const { return beta_; }
    std::string name() const { return "torus"; }

    Section section(int i) const { return {1, sections_.at(i)}; }
    Section one() const { return {0, Grid::Ones(g_.N, g_.N)}; }
    Section multiply(const Section& a, const Section& b) const { return {a.power + b.power, a.v * b.v}; }
    Section scaled(cplx c, const Section& a) const { return {a.power, c * a.v}; }
    Section sum(const Section& a, const Section& b) const
    {
        if (a.power != b.power)
            throw std::invalid_argument("section sum: bundle mismatch");
        return {a.power, a.v + b.v};
    }
    Section zero_section(int power) const { return {power, Grid::Zero(g_.N, g_.N)}; }

    // Derivatives of basis sections come from the theta series, not the grid.
    Section basis_derivative(int i, int k) const { return {1, ThetaSeries(g_.tau, d_).samples(i, k, g_.N)}; }
    cplx basis_value(int i, int k, cplx z) const { return ThetaSeries(g_.tau, d_).value(i, z, k); }

    Form01 cup(const Form01& theta, const Section& s) const
    {
        return {Twist{theta.twist.power + s.power, theta.twist.character}, theta.coeff * s.v};
    }

    // Samples of exp(2 pi i (chi1 x + chi2 y)) for the character multiple c.
    Grid phase(int c) const
    {
        const int N = g_.N;
        Eigen::VectorXcd X(N), Y(N);
        for (int i = 0; i < N; ++i) {
            X(i) = std::exp(cplx(0, 2.0 * pi * c * chi_.chi1 * x_(i)));
            Y(i) = std::exp(cplx(0, 2.0 * pi * c * chi_.chi2 * x_(i)));
        }
        return (X * Y.transpose()).array();
    }

    Function function_from_samples(const Grid& values, int character = 0) const
    {
        Function h;
        h.twist = Twist{0, character};
        h.values = values;
        bool twisted = character != 0 && !chi_.trivial();
        h.spectrum = fft_->forward(twisted ? Grid(values * phase(-character)) : values);
        return h;
    }

    // Theorem-1.1 decomposition of a scalar (0,1)-form psi = gamma + dbar h by a
    // spectral Poisson solve. gamma is the harmonic part (a constant multiple of
    // dzbar, absent for a nontrivial character), h has mean zero, Nyquist modes are
    // dropped and their share of psi is the reported relative residual.
    HarmonicDecomposition<Form01, Function> decompose(const Form01& psi) const
    {
        if (psi.twist.power != 0)
            throw std::invalid_argument("dbar_solve: input is not a scalar form");
        const int N = g_.N;
        const int c = psi.twist.character;
        const bool twisted = c != 0 && !chi_.trivial();
        const double c1 = twisted ? c * chi_.chi1 : 0.0, c2 = twisted ? c * chi_.chi2 : 0.0;
        const double scale = g_.metric_scale;
        Grid F = fft_->forward(twisted ? Grid(psi.coeff * phase(-c)) : psi.coeff);

        HarmonicDecomposition<Form01, Function> out;
        out.gamma = Form01{psi.twist, Grid::Zero(N, N)};
        cplx gamma = 0.0;
        if (!twisted) {
            // L^2-projection onto constants; the area form c dA cancels.
            gamma = (scale * g_.im_tau() * F(0, 0)) / (scale * g_.im_tau());
            out.gamma.coeff.setConstant(gamma);
        }
        Grid H = Grid::Zero(N, N);
        double dropped = 0.0, total = 0.0;
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                const double e2 = std::norm(F(i, j));
                total += e2;
                if (fft_->nyquist(i) || fft_->nyquist(j)) {
                    dropped += e2;
                    continue;
                }
                const double m = fft_->freq(i) + c1, n = fft_->freq(j) + c2;
                if (!twisted && m == 0.0 && n == 0.0)
                    continue;
                // h = (dbar^* dbar)^{-1} dbar^* psi; dbar^* and the Laplacian both carry 1/c
                const cplx s = dbar_symbol(g_.tau, m, n);
                H(i, j) = (std::conj(s) / scale) * F(i, j) / (std::norm(s) / scale);
            }
        out.h.twist = Twist{0, c};
        out.h.spectrum = H;
        Grid hv = fft_->backward(H);
        out.h.values = twisted ? Grid(hv * phase(c)) : hv;
        out.residual = total > 0.0 ? std::sqrt(dropped / total) : 0.0;
        return out;
    }

    // Spectral del, carried together with dbar(del h).
    Form10 del(const Function& h) const
    {
        const int N = g_.N;
        const int c = h.twist.character;
        const bool twisted = c != 0 && !chi_.trivial();
        const double c1 = twisted ? c * chi_.chi1 : 0.0, c2 = twisted ? c * chi_.chi2 : 0.0;
        Grid D(N, N), DD(N, N);
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                if (fft_->nyquist(i) || fft_->nyquist(j)) {
                    D(i, j) = 0.0;
                    DD(i, j) = 0.0;
                    continue;
                }
                const double m = fft_->freq(i) + c1, n = fft_->freq(j) + c2;
                const cplx ds = del_symbol(g_.tau, m, n);
                D(i, j) = ds * h.spectrum(i, j);
                DD(i, j) = dbar_symbol(g_.tau, m, n) * D(i, j);
            }
        Form10 out;
        out.twist = h.twist;
        out.v = fft_->backward(D);
        out.dbar = fft_->backward(DD);
        if (twisted) {
            Grid ph = phase(c);
            out.v *= ph;
            out.dbar *= ph;
        }
        return out;
    }

    // Spectral dbar of a function, as a (0,1)-form.
    Form01 dbar(const Function& h) const
    {
        const int N = g_.N;
        const int c = h.twist.character;
        const bool twisted = c != 0 && !chi_.trivial();
        const double c1 = twisted ? c * chi_.chi1 : 0.0, c2 = twisted ? c * chi_.chi2 : 0.0;
        Grid D(N, N);
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                if (fft_->nyquist(i) || fft_->nyquist(j)) {
                    D(i, j) = 0.0;
                    continue;
                }
                D(i, j) = dbar_symbol(g_.tau, fft_->freq(i) + c1, fft_->freq(j) + c2) * h.spectrum(i, j);
            }
        Grid v = fft_->backward(D);
        if (twisted)
            v *= phase(c);
        return {h.twist, v};
    }

    Form10 times(const Section& s, const Form10& f) const
    {
        return {Twist{f.twist.power + s.power, f.twist.character}, s.v * f.v, s.v * f.dbar};
    }
    Form10 zero_form10(int power) const
    {
        return {Twist{power, 0}, Grid::Zero(g_.N, g_.N), Grid::Zero(g_.N, g_.N)};
    }
    Form10 plus(const Form10& a, const Form10& b) const
    {
        // an untouched zero accumulator adopts the character of what is added
        Twist t = a.twist;
        if (!(a.twist == b.twist)) {
            if (a.twist.power == b.twist.power && a.v.isZero(0.0) && a.dbar.isZero(0.0))
                t = b.twist;
            else
                throw std::invalid_argument("Form10 plus: bundle mismatch");
        }
        return {t, a.v + b.v, a.dbar + b.dbar};
    }

    // Weighted L^2 norm for an L^power-valued quantity.
    double norm(const Grid& f, int power) const
    {
        const int N = g_.N;
        Eigen::ArrayXd w = theta_weight(g_.tau, power * d_, N);
        double acc = 0.0;
        for (int j = 0; j < N; ++j)
            acc += w(j) * f.col(j).abs2().sum();
        return std::sqrt(acc * g_.metric_scale * g_.im_tau() / (static_cast<double>(N) * N));
    }

    double closedness_residual(const Form10& f) const
    {
        double s = norm(f.v, f.twist.power);
        return s > 0.0 ? norm(f.dbar, f.twist.power) / s : 0.0;
    }

    struct Projection {
        std::vector<cplx> coordinates;
        double residual = 0.0;
    };

    // L^2 projection of samples of a section of L^power (x) M^character (x) K^q
    // onto the holomorphic theta basis; K is trivialized by dz.
    Projection project(const Grid& f, Twist tw) const
    {
        const Target& T = target(tw);
        const int N = g_.N;
        const int r = static_cast<int>(T.samples.size());
        Eigen::ArrayXd w = theta_weight(g_.tau, tw.power * d_, N);
        const double dA = g_.metric_scale * g_.im_tau() / (static_cast<double>(N) * N);
        Eigen::VectorXcd b(r);
        for (int a = 0; a < r; ++a) {
            cplx acc = 0.0;
            for (int j = 0; j < N; ++j)
                acc += w(j) * (T.samples[a].col(j).conjugate() * f.col(j)).sum();
            b(a) = acc * dA;
        }
        Eigen::VectorXcd c = T.pinv * b;
        Projection p;
        p.coordinates.assign(c.data(), c.data() + r);
        Grid rec = reconstruct(p.coordinates, tw);
        double fn = norm(f, tw.power);
        p.residual = fn > 0.0 ? norm(f - rec, tw.power) / fn : 0.0;
        return p;
    }

    Grid reconstruct(const std::vector<cplx>& coords, Twist tw) const
    {
        const Target& T = target(tw);
        if (coords.size() != T.samples.size())
            throw std::invalid_argument("reconstruct: coordinate count mismatch");
        Grid out = Grid::Zero(g_.N, g_.N);
        for (std::size_t a = 0; a < coords.size(); ++a)
            out += coords[a] * T.samples[a];
        return out;
    }

    image_type extract_class(const Form10& sigma, int power, double decomposition_residual) const
    {
        if (sigma.twist.power != power)
            throw std::invalid_argument("extract_class: bundle mismatch");
        image_type img;
        img.power = power;
        img.character = sigma.twist.character;
        auto p = project(sigma.v, sigma.twist);
        img.coordinates = p.coordinates;
        img.projection_residual = p.residual;
        img.closedness_residual = closedness_residual(sigma);
        img.decomposition_residual = decomposition_residual;
        return img;
    }

    std::vector<cplx> section_coordinates(const Section& s, int /*kpower*/) const
    {
        return project(s.v, Twist{s.power, 0}).coordinates;
    }
    double section_projection_residual(const Section& s) const { return project(s.v, Twist{s.power, 0}).residual; }

    // Integration pairing in units of 2 pi i, oriented so that the Schiffer form at
    // P pairs with Psi dz to Psi(P): -(1/pi) integral of theta_coeff * Psi dA.
    cplx pair(const Form01& theta, const image_type& img) const
    {
        if (theta.twist.power != -img.power || theta.twist.character != -img.character)
            throw std::invalid_argument("pair: bundles are not dual");
        Grid F = reconstruct(img.coordinates, Twist{img.power, img.character});
        return pair_samples(theta, F);
    }

    cplx pair_samples(const Form01& theta, const Grid& psi) const
    {
        const int N = g_.N;
        return -(g_.im_tau() / pi) * (theta.coeff * psi).sum() / (static_cast<double>(N) * N);
    }

    // (1/(z-P)) dbar(b) (x) l^{-m} (x) nu^character; the coefficient is b'(rho)/(2 rho).
    Form01 schiffer(cplx P, int m, double radius = 0.0, int character = 0) const
    {
        if (m < 1)
            throw std::invalid_argument("schiffer: twist m must be positive");
        double r = radius > 0.0 ? radius : g_.default_bump_radius(P);
        check_chart(P, r);
        BumpProfile b{r, beta_};
        const int N = g_.N;
        Form01 out{Twist{-m, character}, Grid::Zero(N, N)};
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                double rho = std::abs(g_.point(x_(i), x_(j)) - P);
                double bp = b.derivative(rho);
                if (bp != 0.0)
                    out.coeff(i, j) = bp / (2.0 * rho);
            }
        return out;
    }

    // dbar of chi~ = b(|z - c|) u(z, zbar), u = sum coeffs[p][q] (z-c)^p (zbar - cbar)^q.
    Form01 bump_perturbation(cplx center, double radius, Twist tw, const std::vector<std::vector<cplx>>& coeffs) const
    {
        check_chart(center, radius);
        BumpProfile b{radius, beta_};
        const int N = g_.N;
        Form01 out{tw, Grid::Zero(N, N)};
        for (int j = 0; j < N; ++j)
            for (int i = 0; i < N; ++i) {
                cplx w = g_.point(x_(i), x_(j)) - center;
                double rho = std::abs(w);
                if (rho >= 2.0 * radius)
                    continue;
                cplx u = 0.0, du = 0.0;
                for (std::size_t p = 0; p < coeffs.size(); ++p)
                    for (std::size_t q = 0; q < coeffs[p].size(); ++q) {
                        cplx zp = std::pow(w, static_cast<int>(p));
                        u += coeffs[p][q] * zp * std::pow(std::conj(w), static_cast<int>(q));
                        if (q > 0)
                            du += coeffs[p][q] * zp * static_cast<double>(q) *
                                  std::pow(std::conj(w), static_cast<int>(q) - 1);
                    }
                double bp = rho > 0.0 ? b.derivative(rho) : 0.0;
                cplx dbar_b = rho > 0.0 ? bp * w / (2.0 * rho) : 0.0;
                out.coeff(i, j) = u * dbar_b + b.value(rho) * du;
            }
        return out;
    }

    void check_chart(cplx P, double r) const
    {
        double margin = g_.chart_margin(P);
        if (!(2.0 * r < margin))
            throw std::invalid_argument("bump support about " + std::to_string(P.real()) + "+" +
                                        std::to_string(P.imag()) + "i (radius " + std::to_string(r) +
                                        ") touches the chart boundary");
    }

    // Columns: coordinates of lambda^K in the degree-kd theta basis, K in exponents(r, k).
    struct MultiplicationMatrix {
        Eigen::MatrixXcd M;
        double max_projection_residual = 0.0;
    };
    MultiplicationMatrix multiplication_matrix(int k) const
    {
        auto cols = exponents(rank(), k);
        MultiplicationMatrix out;
        out.M.resize(k * d_, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Section s = one();
            for (int j : tuple_of(cols[c]))
                s = multiply(s, section(j));
            auto p = project(s.v, Twist{k, 0});
            out.max_projection_residual = std::max(out.max_projection_residual, p.residual);
            for (int a = 0; a < k * d_; ++a)
                out.M(a, static_cast<Eigen::Index>(c)) = p.coordinates[a];
        }
        return out;
    }

    RelationSpace<cplx> relation_kernel(int k) const
    {
        auto cols = exponents(rank(), k);
        auto mm = multiplication_matrix(k);
        const Eigen::MatrixXcd& M = mm.M;
        const Eigen::Index nc = M.cols();
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
        Eigen::VectorXd sv = Eigen::VectorXd::Zero(nc); // padded with exact zeros
        sv.head(svd.singularValues().size()) = svd.singularValues();
        const double smax = sv.size() > 0 ? sv.maxCoeff() : 0.0;
        int rank_ = 0;
        for (Eigen::Index i = 0; i < nc; ++i)
            if (sv(i) > svd_tolerance * smax)
                ++rank_;
        RelationSpace<cplx> rs;
        rs.k = k;
        rs.r = rank();
        rs.diagnostics.rows = static_cast<int>(M.rows());
        rs.diagnostics.cols = static_cast<int>(nc);
        rs.diagnostics.rank = rank_;
        rs.diagnostics.singular_values.assign(sv.data(), sv.data() + sv.size());
        if (rank_ > 0 && rank_ < nc) {
            double below = sv(rank_);
            rs.diagnostics.gap_ratio = below > 0.0 ? sv(rank_ - 1) / below : std::numeric_limits<double>::infinity();
            if (rs.diagnostics.gap_ratio < min_gap_ratio)
                throw std::runtime_error("numerical rank ambiguous: singular-value gap " +
                                         std::to_string(rs.diagnostics.gap_ratio) + " < 1e3 across the threshold");
        } else {
            rs.diagnostics.gap_ratio = std::numeric_limits<double>::infinity();
        }
        rs.provenance = "SVD kernel of Sym^" + std::to_string(k) + " H0(L_" + std::to_string(d_) + ") -> H0(L_" +
                        std::to_string(k * d_) + ") on an " + std::to_string(g_.N) + "^2 grid";
        const Eigen::Index dim = nc - rank_;
        if (dim == 0)
            return rs;
        Eigen::MatrixXcd K = svd.matrixV().rightCols(dim);
        // Reduce to pivot form K * inv(K[pivots, :]) so the basis is reproducible.
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(K.transpose());
        std::vector<Eigen::Index> piv(dim);
        for (Eigen::Index t = 0; t < dim; ++t)
            piv[t] = qr.colsPermutation().indices()(t);
        std::sort(piv.begin(), piv.end());
        Eigen::MatrixXcd Kp(dim, dim);
        for (Eigen::Index t = 0; t < dim; ++t)
            Kp.row(t) = K.row(piv[t]);
        Eigen::MatrixXcd R = K * Kp.inverse();
        for (Eigen::Index t = 0; t < dim; ++t) {
            SymmetricTensor<cplx> q(rank(), k);
            for (Eigen::Index c = 0; c < nc; ++c) {
                cplx v = R(c, t);
                if (std::abs(v) < 1e-14)
                    v = 0.0;
                q.set_monomial(cols[c], v);
            }
            rs.basis.push_back(std::move(q));
        }
        return rs;
    }

    // sup over the grid of sqrt(w)|sum_K c_K lambda^K|, relative to sum_K |c_K| sup sqrt(w)|lambda^K|.
    double relation_residual(const SymmetricTensor<cplx>& Q) const
    {
        const int N = g_.N;
        Eigen::ArrayXd w = theta_weight(g_.tau, Q.order() * d_, N).sqrt();
        Grid acc = Grid::Zero(N, N);
        double scale = 0.0;
        for (const auto& [e, c] : Q.monomials()) {
            Grid p = Grid::Ones(N, N);
            for (int j : tuple_of(e))
                p *= sections_[j];
            Grid pw = p.rowwise() * w.transpose().cast<cplx>();
            scale += std::abs(c) * pw.abs().maxCoeff();
            acc += c * pw;
        }
        return scale > 0.0 ? acc.abs().maxCoeff() / scale : 0.0;
    }

    const std::vector<Grid>& basis_samples() const { return sections_; }
    const Grid& target_samples(Twist tw, int a) const { return target(tw).samples.at(a); }
    double target_min_singular_ratio(Twist tw) const { return target(tw).min_sv_ratio; }
    const Eigen::ArrayXd& nodes() const { return x_; }

private:
    struct Target {
        std::vector<Grid> samples;
        Eigen::MatrixXcd pinv;
        double min_sv_ratio = 0.0;
    };
    struct Cache {
        std::map<std::pair<int, int>, Target> targets;
    };

    // Holomorphic basis of L^power (x) M^character: for a nontrivial character,
    // s_a(z) = exp(2 pi i chi1 z) theta_a(z + (chi1 tau - chi2)/e).
    const Target& target(Twist tw) const
    {
        if (chi_.trivial())
            tw.character = 0;
        auto key = std::make_pair(tw.power, tw.character);
        auto it = cache_->targets.find(key);
        if (it != cache_->targets.end())
            return it->second;
        if (tw.power < 1)
            throw std::invalid_argument("holomorphic basis requested for non-positive power");
        const int e = tw.power * d_;
        const int N = g_.N;
        ThetaSeries th(g_.tau, e);
        Target T;
        const double c1 = tw.character * chi_.chi1, c2 = tw.character * chi_.chi2;
        Grid pre = Grid::Ones(N, N);
        if (tw.character != 0) {
            Eigen::VectorXcd X(N), Y(N);
            for (int i = 0; i < N; ++i) {
                X(i) = std::exp(cplx(0, 2.0 * pi * c1 * x_(i)));
                Y(i) = std::exp(cplx(0, 2.0 * pi * c1) * g_.tau * x_(i));
            }
            pre = (X * Y.transpose()).array();
        }
        for (int a = 0; a < e; ++a)
            T.samples.push_back(pre * th.samples(a, 0, N, -c2 / e, c1 / e));
        Eigen::ArrayXd w = theta_weight(g_.tau, e, N);
        const double dA = g_.metric_scale * g_.im_tau() / (static_cast<double>(N) * N);
        Eigen::MatrixXcd G(e, e);
        for (int a = 0; a < e; ++a)
            for (int b = 0; b < e; ++b) {
                cplx acc = 0.0;
                for (int j = 0; j < N; ++j)
                    acc += w(j) * (T.samples[a].col(j).conjugate() * T.samples[b].col(j)).sum();
                G(a, b) = acc * dA;
            }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        const double smax = s(0);
        T.min_sv_ratio = s(s.size() - 1) / smax;
        if (T.min_sv_ratio < svd_tolerance)
            throw std::runtime_error("theta basis Gram matrix is numerically singular (increase N)");
        Eigen::VectorXd inv = s.cwiseInverse();
        T.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
        return cache_->targets.emplace(key, std::move(T)).first->second;
    }

    Geometry g_;
    int d_;
    FlatCharacter chi_;
    double beta_;
    std::shared_ptr<Fft2> fft_;
    Eigen::ArrayXd x_;
    std::vector<Grid> sections_;
    std::shared_ptr<Cache> cache_;
};

} // namespace hodgegauss::torus
