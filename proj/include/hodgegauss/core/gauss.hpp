#pragma once

#include <algorithm>
#include <concepts>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hodgegauss/core/multi_index.hpp"
#include "hodgegauss/core/types.hpp"

namespace hodgegauss {

// What gauss-core needs from a curve backend: sections, cup products with
// (0,1)-forms, Hodge decomposition of scalar (0,1)-forms, del, class extraction
// and the Serre pairing.
template <class B>
concept HodgeBackend = requires(const B& b, const typename B::form01_type& theta, const typename B::section_type& s,
                                const typename B::function_type& h, const typename B::form10_type& f,
                                const typename B::image_type& img, const typename B::scalar_type& c, int n) {
    { b.rank() } -> std::convertible_to<int>;
    { b.section(n) } -> std::same_as<typename B::section_type>;
    { b.one() } -> std::same_as<typename B::section_type>;
    { b.multiply(s, s) } -> std::same_as<typename B::section_type>;
    { b.scaled(c, s) } -> std::same_as<typename B::section_type>;
    { b.sum(s, s) } -> std::same_as<typename B::section_type>;
    { b.zero_section(n) } -> std::same_as<typename B::section_type>;
    { b.cup(theta, s) } -> std::same_as<typename B::form01_type>;
    { b.decompose(theta).h } -> std::convertible_to<typename B::function_type>;
    { b.decompose(theta).residual } -> std::convertible_to<double>;
    { b.del(h) } -> std::same_as<typename B::form10_type>;
    { b.times(s, f) } -> std::same_as<typename B::form10_type>;
    { b.plus(f, f) } -> std::same_as<typename B::form10_type>;
    { b.zero_form10(n) } -> std::same_as<typename B::form10_type>;
    { b.extract_class(f, n, 0.0) } -> std::same_as<typename B::image_type>;
    { b.pair(theta, img) } -> std::same_as<typename B::scalar_type>;
    { b.relation_kernel(n) } -> std::same_as<RelationSpace<typename B::scalar_type>>;
};

namespace detail {

template <HodgeBackend B>
class SectionCache {
public:
    explicit SectionCache(const B& b) : b_(b) {}

    // lambda_J for a tuple or multiset J
    const typename B::section_type& product(Tuple J)
    {
        std::sort(J.begin(), J.end());
        auto it = cache_.find(J);
        if (it != cache_.end())
            return it->second;
        typename B::section_type s = b_.one();
        for (int j : J)
            s = b_.multiply(s, b_.section(j));
        return cache_.emplace(J, std::move(s)).first->second;
    }

private:
    const B& b_;
    std::map<Tuple, typename B::section_type> cache_;
};

template <HodgeBackend B>
class DelCache {
public:
    DelCache(const B& b, const typename B::form01_type& xi, SectionCache<B>& sections) : b_(b), xi_(xi), s_(sections) {}

    // del h_T where theta lambda_T = gamma_T + dbar h_T
    const typename B::form10_type& del_h(Tuple T)
    {
        std::sort(T.begin(), T.end());
        auto it = cache_.find(T);
        if (it != cache_.end())
            return it->second;
        auto dec = b_.decompose(b_.cup(xi_, s_.product(T)));
        max_residual = std::max(max_residual, static_cast<double>(dec.residual));
        return cache_.emplace(T, b_.del(dec.h)).first->second;
    }

    double max_residual = 0.0;

private:
    const B& b_;
    const typename B::form01_type& xi_;
    SectionCache<B>& s_;
    std::map<Tuple, typename B::form10_type> cache_;
};

inline void check_rho_args(int r, int k, int m, int rank)
{
    if (r != rank)
        throw std::invalid_argument("relation tensor does not match the backend's section basis");
    if (m < 1 || m > k)
        throw std::invalid_argument("gauss_rho: need 0 < m <= k");
}

} // namespace detail

template <HodgeBackend B>
RelationSpace<typename B::scalar_type> relation_space(const B& b, int k)
{
    if (b.rank() < 1)
        throw std::invalid_argument("relation_space: h0(L) must be >= 1");
    if (k < 1)
        throw std::invalid_argument("relation_space: k must be >= 1");
    return b.relation_kernel(k);
}

// sigma_P(theta) = sum_{S in R_{k-m}, T in R_m} a_{ST} lambda_S del h_T, summed literally.
template <HodgeBackend B>
typename B::image_type gauss_rho(const B& b, const SymmetricTensor<typename B::scalar_type>& P,
                                 const typename B::form01_type& xi, int m)
{
    using S = typename B::scalar_type;
    const int k = P.order(), r = b.rank();
    detail::check_rho_args(P.rank(), k, m, r);
    detail::SectionCache<B> sections(b);
    detail::DelCache<B> dels(b, xi, sections);
    auto sigma = b.zero_form10(k - m);
    for (const auto& T : all_tuples(r, m)) {
        auto C = b.zero_section(k - m);
        bool any = false;
        for (const auto& Sx : all_tuples(r, k - m)) {
            Tuple J = Sx;
            J.insert(J.end(), T.begin(), T.end());
            S a = P.entry(J);
            if (a == S(0))
                continue;
            C = b.sum(C, b.scaled(a, sections.product(Sx)));
            any = true;
        }
        if (any)
            sigma = b.plus(sigma, b.times(C, dels.del_h(T)));
    }
    return b.extract_class(sigma, k - m, dels.max_residual);
}

// The same class through the derivative bookkeeping
//   sigma = (m!(k-m)!/k!) sum_{|I| = m} (1/I!) (d^I P)(lambda) del h^I.
template <HodgeBackend B>
typename B::image_type gauss_rho_derivative_form(const B& b, const SymmetricTensor<typename B::scalar_type>& P,
                                                 const typename B::form01_type& xi, int m)
{
    using S = typename B::scalar_type;
    const int k = P.order(), r = b.rank();
    detail::check_rho_args(P.rank(), k, m, r);
    detail::SectionCache<B> sections(b);
    detail::DelCache<B> dels(b, xi, sections);
    const S front = scalar_traits<S>::ratio(factorial(m) * factorial(k - m), factorial(k));
    auto sigma = b.zero_form10(k - m);
    for (const auto& I : exponents(r, m)) {
        auto D = b.zero_section(k - m);
        bool any = false;
        for (const auto& [K, c] : P.monomials()) {
            Exponent rest(r);
            std::int64_t falling = 1;
            bool divisible = true;
            for (int j = 0; j < r && divisible; ++j) {
                rest[j] = K[j] - I[j];
                divisible = rest[j] >= 0;
                for (int t = 0; divisible && t < I[j]; ++t)
                    falling *= K[j] - t;
            }
            if (!divisible)
                continue;
            D = b.sum(D, b.scaled(c * scalar_traits<S>::ratio(falling, 1), sections.product(tuple_of(rest))));
            any = true;
        }
        if (!any)
            continue;
        S w = front / scalar_traits<S>::ratio(exponent_factorial(I), 1);
        sigma = b.plus(sigma, b.times(b.scaled(w, D), dels.del_h(tuple_of(I))));
    }
    return b.extract_class(sigma, k - m, dels.max_residual);
}

// mu_2(Q) = sum a_ij phi_i'' phi_j, as coordinates in the backend basis of H0(L^2 (x) K^2).
template <HodgeBackend B>
WahlImage<typename B::scalar_type> wahl_mu2(const B& b, const SymmetricTensor<typename B::scalar_type>& Q)
{
    using S = typename B::scalar_type;
    if (Q.order() != 2 || Q.rank() != b.rank())
        throw std::invalid_argument("wahl_mu2: Q must be a quadric in the backend's sections");
    auto acc = b.zero_section(2);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) {
            S a = Q.entry({i, j});
            if (a == S(0))
                continue;
            acc = b.sum(acc, b.scaled(a, b.multiply(b.basis_derivative(i, 2), b.section(j))));
        }
    WahlImage<S> w;
    w.coordinates = b.section_coordinates(acc, 2);
    return w;
}

// v_P(mu_2(Q)): the chart value sum a_ij phi_i''(P) phi_j(P).
template <HodgeBackend B>
typename B::scalar_type wahl_value(const B& b, const SymmetricTensor<typename B::scalar_type>& Q,
                                   const typename B::point_type& P)
{
    using S = typename B::scalar_type;
    S acc(0);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) {
            S a = Q.entry({i, j});
            if (a == S(0))
                continue;
            acc += a * b.basis_value(i, 2, P) * b.basis_value(j, 0, P);
        }
    return acc;
}

// (pair(xi, rho_Q(eta)), pair(eta, rho_Q(xi))) for k = 2, m = 1. The curve-case
// sign is (-1)^{0+1+1} = +1, so the two agree.
template <HodgeBackend B>
std::pair<typename B::scalar_type, typename B::scalar_type>
symmetry_pair(const B& b, const SymmetricTensor<typename B::scalar_type>& Q, const typename B::form01_type& xi,
              const typename B::form01_type& eta)
{
    if (Q.order() != 2)
        throw std::invalid_argument("symmetry_pair: needs k = 2");
    auto rho_eta = gauss_rho(b, Q, eta, 1);
    auto rho_xi = gauss_rho(b, Q, xi, 1);
    return {b.pair(xi, rho_eta), b.pair(eta, rho_xi)};
}

} // namespace hodgegauss
