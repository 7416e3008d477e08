#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hodgegauss/core/multi_index.hpp"
#include "hodgegauss/core/types.hpp"
#include "hodgegauss/exact/exact_matrix.hpp"
#include "hodgegauss/p1/forms.hpp"

namespace hodgegauss::p1 {

// Section of O(power * d) in the affine chart.
struct Section {
    int power = 1;
    Poly phi;
};

// phi_i = z^i, i = 0..d.
inline std::vector<Poly> section_basis(int d)
{
    if (d < 0)
        throw std::invalid_argument("section_basis: degree must be >= 0");
    std::vector<Poly> out;
    for (int i = 0; i <= d; ++i)
        out.push_back(Poly::monomial(i));
    return out;
}

// Differential of the second kind with a single double pole at P,
// normalized to principal coefficient -1.
struct EtaDifferential {
    GaussianRational pole;
    GaussianRational principal{-1};
    RatFun regular;

    RatFun dz_coefficient() const { return RatFun::pole(pole, 2, principal) + regular; }
};

inline EtaDifferential eta_p1(const GaussianRational& P) { return {P, GaussianRational(-1), RatFun()}; }

// f(z) dz is regular at infinity iff f = O(z^-2).
inline bool differential_regular_at_infinity(const RatFun& f) { return f.is_zero() || f.degree_at_infinity() <= -2; }

class Backend {
public:
    using scalar_type = GaussianRational;
    using point_type = GaussianRational;
    using section_type = Section;
    using form01_type = Form01;
    using function_type = Function;
    using form10_type = Form10;
    using image_type = GaussImage<GaussianRational>;

    explicit Backend(int d) : Backend(d, section_basis(d)) {}

    Backend(int d, std::vector<Poly> basis) : d_(d), basis_(std::move(basis))
    {
        if (d < 0)
            throw std::invalid_argument("P1 backend: degree must be >= 0");
        if (static_cast<int>(basis_.size()) != d + 1)
            throw std::invalid_argument("P1 backend: a basis of H0(O(d)) has d+1 elements");
        exact::ExactMatrix m(d + 1, d + 1);
        for (int i = 0; i <= d; ++i) {
            if (basis_[i].degree() > d)
                throw std::invalid_argument("P1 backend: basis section of degree > d");
            for (int n = 0; n <= d; ++n)
                m(n, i) = basis_[i].coeff(n);
        }
        if (exact::exact_rank(m) != d + 1)
            throw std::invalid_argument("P1 backend: basis sections are linearly dependent");
    }

    int degree() const { return d_; }
    int rank() const { return d_ + 1; }
    const std::vector<Poly>& basis() const { return basis_; }
    std::string name() const { return "p1"; }

    Section section(int i) const { return {1, basis_.at(i)}; }
    Section one() const { return {0, Poly(GaussianRational(1))}; }
    Section multiply(const Section& a, const Section& b) const { return {a.power + b.power, a.phi * b.phi}; }
    Section scaled(const GaussianRational& c, const Section& a) const { return {a.power, a.phi * c}; }
    Section sum(const Section& a, const Section& b) const
    {
        if (a.power != b.power)
            throw std::invalid_argument("section sum: bundle mismatch");
        return {a.power, a.phi + b.phi};
    }
    Section zero_section(int power) const { return {power, Poly()}; }
    Section basis_derivative(int i, int k) const
    {
        Poly p = basis_.at(i);
        for (int t = 0; t < k; ++t)
            p = p.derivative();
        return {1, p};
    }
    GaussianRational basis_value(int i, int k, const GaussianRational& z) const { return basis_derivative(i, k).phi(z); }

    Form01 cup(const Form01& theta, const Section& s) const { return p1::cup(theta, s.phi, s.power * d_); }

    HarmonicDecomposition<Form01, Function> decompose(const Form01& psi) const { return harmonic_decompose_p1(psi); }
    Form10 del(const Function& h) const { return p1::del(h); }
    Form10 times(const Section& s, const Form10& f) const { return p1::multiply(s.phi, s.power * d_, f); }
    Form10 zero_form10(int power) const { return Form10{power * d_, {}, RatFun(), {}, {}}; }
    Form10 plus(const Form10& a, const Form10& b) const { return p1::add(a, b); }

    double closedness_residual(const Form10& f) const { return is_closed(f) ? 0.0 : 1.0; }

    image_type extract_class(const Form10& sigma, int power, double decomposition_residual) const
    {
        if (sigma.order != power * d_)
            throw std::invalid_argument("extract_class: bundle mismatch");
        image_type img;
        img.power = power;
        img.coordinates = class_coordinates(sigma);
        img.decomposition_residual = decomposition_residual;
        img.closedness_residual = 0.0;
        img.projection_residual = 0.0;
        return img;
    }

    // Coordinates of a section of O(power*d) (x) K^q in the monomial basis of O(power*d - 2q).
    std::vector<GaussianRational> section_coordinates(const Section& s, int kpower) const
    {
        const int e = s.power * d_ - 2 * kpower;
        if (s.phi.degree() > e)
            throw std::domain_error("section is singular at infinity for O(" + std::to_string(e) + ")");
        std::vector<GaussianRational> c(std::max(e + 1, 0));
        for (int n = 0; n <= s.phi.degree(); ++n)
            c[n] = s.phi.coeff(n);
        return c;
    }

    // Pairing of theta in A^{0,1}(L^{-power}) with a class in H^0(L^power (x) K), units of 2 pi i.
    GaussianRational pair(const Form01& theta, const image_type& img) const
    {
        if (theta.order != -img.power * d_)
            throw std::invalid_argument("pair: bundles are not dual");
        return p1::pair(theta, RatFun(section_from_coordinates(img.coordinates)));
    }

    // Schiffer representative (1/(z-P)) dbar(b) (x) (l^*)^m.
    Form01 schiffer(const GaussianRational& P, int m, const Rational& radius) const
    {
        if (m < 1)
            throw std::invalid_argument("schiffer: twist m must be positive");
        if (m * d_ < 2)
            throw std::invalid_argument("schiffer: H1(O(-md)) = 0 for md < 2");
        if (radius <= 0)
            throw std::invalid_argument("schiffer: bump radius must be positive");
        return Form01{-m * d_, {BumpTerm{Bump{P, radius}, RatFun::pole(P, 1), {P}}}};
    }

    // Multiplication map Sym^k H0(L) -> H0(L^k), columns indexed by exponents(r, k).
    exact::ExactMatrix multiplication_matrix(int k) const
    {
        auto cols = exponents(rank(), k);
        exact::ExactMatrix m(k * d_ + 1, static_cast<int>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Poly p(GaussianRational(1));
            for (int j : tuple_of(cols[c]))
                p *= basis_[j];
            for (int n = 0; n <= p.degree(); ++n)
                m(n, static_cast<int>(c)) = p.coeff(n);
        }
        return m;
    }

    RelationSpace<GaussianRational> relation_kernel(int k) const
    {
        RelationSpace<GaussianRational> rs;
        rs.k = k;
        rs.r = rank();
        auto m = multiplication_matrix(k);
        auto cols = exponents(rank(), k);
        for (const auto& v : exact::exact_kernel(m)) {
            SymmetricTensor<GaussianRational> t(rank(), k);
            for (std::size_t c = 0; c < cols.size(); ++c)
                t.set_monomial(cols[c], v[c]);
            rs.basis.push_back(std::move(t));
        }
        rs.diagnostics.rows = m.rows();
        rs.diagnostics.cols = m.cols();
        rs.diagnostics.rank = m.cols() - rs.dimension();
        rs.provenance = "exact kernel of Sym^" + std::to_string(k) + " H0(O(" + std::to_string(d_) + ")) -> H0(O(" +
                        std::to_string(k * d_) + ")), fraction-free elimination";
        return rs;
    }

    // Sum_J a_J lambda_J as a polynomial.
    Poly relation_value(const SymmetricTensor<GaussianRational>& Q) const
    {
        Poly acc;
        for (const auto& [e, c] : Q.monomials()) {
            Poly p(c);
            for (int j : tuple_of(e))
                p *= basis_[j];
            acc += p;
        }
        return acc;
    }

private:
    int d_;
    std::vector<Poly> basis_;
};

// The closed form of rho_Q(xi_P) for Q in I_2: the section of O(d-2) with chart
// expression sum a_ij phi_i(P) phi_j(z) / (z-P)^2. Division by (z-P)^2 must be
// exact; a remainder means Q is not a relation.
inline GaussImage<GaussianRational> rho_schiffer_exact(const Backend& b, const SymmetricTensor<GaussianRational>& Q,
                                                       const GaussianRational& P)
{
    if (Q.order() != 2 || Q.rank() != b.rank())
        throw std::invalid_argument("rho_schiffer_exact: Q must be a quadric in the backend's sections");
    Poly N;
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) {
            GaussianRational a = Q.entry({i, j});
            if (a.is_zero())
                continue;
            N += b.basis()[j] * (a * b.basis()[i](P));
        }
    auto [q, r] = divmod(N, Poly::linear_power(P, 2));
    if (!r.is_zero())
        throw std::domain_error("rho_schiffer_exact: numerator does not vanish to order 2 at " + P.str() +
                                " (Q is not in I_2)");
    GaussImage<GaussianRational> img;
    img.power = 1;
    img.coordinates = b.section_coordinates(Section{1, q}, 1);
    return img;
}

// Pairing of the Schiffer class at P with Psi dz: Psi(P), units of 2 pi i.
inline GaussianRational pair_schiffer(const GaussianRational& P, const RatFun& psi)
{
    if (psi.pole_order(P) > 0)
        throw std::domain_error("pair_schiffer: the (1,0)-form has a pole at " + P.str());
    return psi(P);
}

} // namespace hodgegauss::p1
