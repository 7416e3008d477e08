#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hodgegauss/exact/exact_matrix.hpp"
#include "hodgegauss/p1/backend.hpp"
#include "hodgegauss/p1/forms.hpp"

namespace hodgegauss::p1 {

// E = O(a_1) + ... + O(a_s) on P^1. H0(E) is ordered component by component, each
// with the monomials 1, z, ..., z^{a_c}.
struct SplitBundle {
    std::vector<int> degrees;

    int rank() const { return static_cast<int>(degrees.size()); }
    int h0() const
    {
        int n = 0;
        for (int a : degrees)
            n += a >= 0 ? a + 1 : 0;
        return n;
    }
    // (component, exponent) of the i-th basis section
    std::pair<int, int> section(int i) const
    {
        for (int c = 0; c < rank(); ++c) {
            int n = degrees[c] >= 0 ? degrees[c] + 1 : 0;
            if (i < n)
                return {c, i};
            i -= n;
        }
        throw std::out_of_range("SplitBundle: section index out of range");
    }
    std::string str() const
    {
        std::string s;
        for (std::size_t c = 0; c < degrees.size(); ++c)
            s += (c ? "+" : "") + std::string("O(") + std::to_string(degrees[c]) + ")";
        return s.empty() ? "0" : s;
    }
};

// Tensor a_ij, i over H0(E), j over H0(F).
using PairTensor = std::vector<std::vector<GaussianRational>>;

struct PairRelationSpace {
    SplitBundle E, F;
    std::vector<PairTensor> basis;
    int jet_rank = 0;
    int jet_rows = 0;

    int dimension() const { return static_cast<int>(basis.size()); }
};

// 2-jet map H0(E) (x) H0(F) -> values and first derivatives along the diagonal.
// For the component pair (c, c') with G(z, w) = sum a_ij z^{n_i} w^{n_j}, the rows are
// the coefficients of G(z, z) (degree <= a+b) and of dG/dw(z, z) (degree <= a+b-1).
// Vanishing to order 2 on the affine diagonal forces (z-w)^2 | G, which already
// controls the point at infinity.
inline exact::ExactMatrix jet_matrix(const SplitBundle& E, const SplitBundle& F)
{
    const int nE = E.h0(), nF = F.h0();
    std::vector<std::pair<int, int>> row_base; // offset per component pair
    int rows = 0;
    for (int c = 0; c < E.rank(); ++c)
        for (int cp = 0; cp < F.rank(); ++cp) {
            int s = E.degrees[c] + F.degrees[cp];
            row_base.emplace_back(rows, s);
            rows += s >= 0 ? (s + 1) + s : 0;
        }
    exact::ExactMatrix m(rows, nE * nF);
    for (int i = 0; i < nE; ++i)
        for (int j = 0; j < nF; ++j) {
            auto [c, p] = E.section(i);
            auto [cp, q] = F.section(j);
            auto [base, s] = row_base[c * F.rank() + cp];
            const int col = i * nF + j;
            m(base + p + q, col) += GaussianRational(1);
            if (q > 0)
                m(base + (s + 1) + p + q - 1, col) += GaussianRational(static_cast<std::int64_t>(q));
        }
    return m;
}

inline PairRelationSpace pair_relation_space(const SplitBundle& E, const SplitBundle& F)
{
    PairRelationSpace R{E, F, {}, 0, 0};
    auto m = jet_matrix(E, F);
    R.jet_rows = m.rows();
    const int nF = F.h0();
    auto kernel = exact::exact_kernel(m);
    R.jet_rank = m.cols() - static_cast<int>(kernel.size());
    for (const auto& v : kernel) {
        PairTensor t(E.h0(), std::vector<GaussianRational>(nF));
        for (int i = 0; i < E.h0(); ++i)
            for (int j = 0; j < nF; ++j)
                t[i][j] = v[i * nF + j];
        R.basis.push_back(std::move(t));
    }
    return R;
}

inline bool in_pair_relation_space(const SplitBundle& E, const SplitBundle& F, const PairTensor& a)
{
    auto m = jet_matrix(E, F);
    std::vector<GaussianRational> v;
    for (const auto& row : a)
        v.insert(v.end(), row.begin(), row.end());
    for (const auto& x : m.apply(v))
        if (!x.is_zero())
            return false;
    return true;
}

// Schiffer-type class of H^{0,1}(E*) supported on one summand: (1/(z-P)) dbar(b)
// in the dual of component `component`.
struct ComponentSchiffer {
    GaussianRational point;
    int component = 0;
    Rational radius{1, 4};
};

// rho_P(xi) in H^{1,0}(F): per summand of F, coordinates of the class in the monomial
// basis of H0(O(b) (x) K) = H0(O(b-2)). sigma = sum a_ij del h_i (x) mu_j with
// xi lambda_i = dbar h_i, assembled with the same forms machinery as the scalar map.
inline std::vector<std::vector<GaussianRational>> rho_pair(const PairRelationSpace& R, const PairTensor& a,
                                                           const ComponentSchiffer& xi)
{
    const SplitBundle& E = R.E;
    const SplitBundle& F = R.F;
    if (static_cast<int>(a.size()) != E.h0())
        throw std::invalid_argument("rho_pair: tensor does not match H0(E)");
    if (xi.component < 0 || xi.component >= E.rank())
        throw std::invalid_argument("rho_pair: Schiffer component out of range");
    const int aE = E.degrees[xi.component];
    Form01 theta{-aE, {BumpTerm{Bump{xi.point, xi.radius}, RatFun::pole(xi.point, 1), {xi.point}}}};

    std::vector<Form10> dh(E.h0());
    std::vector<bool> active(E.h0(), false);
    for (int i = 0; i < E.h0(); ++i) {
        auto [c, p] = E.section(i);
        if (c != xi.component)
            continue;
        auto dec = harmonic_decompose_p1(cup(theta, Poly::monomial(p), aE));
        dh[i] = del(dec.h);
        active[i] = true;
    }
    std::vector<std::vector<GaussianRational>> out;
    for (int cp = 0; cp < F.rank(); ++cp) {
        const int b = F.degrees[cp];
        Form10 sigma{b, {}, RatFun(), {}, {}};
        for (int j = 0; j < F.h0(); ++j) {
            auto [c2, q] = F.section(j);
            if (c2 != cp)
                continue;
            for (int i = 0; i < E.h0(); ++i)
                if (active[i] && !a[i][j].is_zero())
                    sigma = add(sigma, multiply(Poly::monomial(q, a[i][j]), b, dh[i]));
        }
        out.push_back(class_coordinates(sigma));
    }
    return out;
}

// Closed form of the same class: sum a_ij p_i(P) q_j(z) / (z-P)^2 per summand of F.
inline std::vector<std::vector<GaussianRational>> rho_pair_exact(const PairRelationSpace& R, const PairTensor& a,
                                                                 const ComponentSchiffer& xi)
{
    const SplitBundle& E = R.E;
    const SplitBundle& F = R.F;
    std::vector<std::vector<GaussianRational>> out;
    for (int cp = 0; cp < F.rank(); ++cp) {
        Poly N;
        for (int i = 0; i < E.h0(); ++i) {
            auto [c, p] = E.section(i);
            if (c != xi.component)
                continue;
            GaussianRational v = Poly::monomial(p)(xi.point);
            for (int j = 0; j < F.h0(); ++j) {
                auto [c2, q] = F.section(j);
                if (c2 == cp && !a[i][j].is_zero())
                    N += Poly::monomial(q, a[i][j] * v);
            }
        }
        auto [quot, rem] = divmod(N, Poly::linear_power(xi.point, 2));
        if (!rem.is_zero())
            throw std::domain_error("rho_pair_exact: tensor does not vanish to order 2 at " + xi.point.str());
        const int e = F.degrees[cp] - 2;
        std::vector<GaussianRational> c(std::max(e + 1, 0));
        for (int n = 0; n <= quot.degree(); ++n)
            c.at(n) = quot.coeff(n);
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace hodgegauss::p1
