#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgegauss/core/types.hpp"
#include "hodgegauss/exact/gaussian_rational.hpp"
#include "hodgegauss/exact/polynomial.hpp"
#include "hodgegauss/exact/rational_function.hpp"

// Exact Dolbeault data on the affine chart of P^1. A bump b about c with radius r
// is 1 on |z-c| < r and 0 on |z-c| > 2r; it is never sampled. Every object is a
// rational function on each of the three regions (inside, annulus, outside), and
// that is all the construction ever needs.
namespace hodgegauss::p1 {

using exact::GaussianRational;
using exact::Rational;
using Poly = exact::Polynomial<GaussianRational>;
using RatFun = exact::RationalFunction<GaussianRational>;

struct Bump {
    GaussianRational center;
    Rational radius;

    friend bool operator==(const Bump& a, const Bump& b) { return a.center == b.center && a.radius == b.radius; }
};

enum class Region { inside, annulus, outside };

inline Region locate(const Bump& b, const GaussianRational& p)
{
    Rational d2 = (p - b.center).norm();
    Rational r2 = b.radius * b.radius;
    if (d2 < r2)
        return Region::inside;
    if (d2 > 4 * r2)
        return Region::outside;
    return Region::annulus;
}

inline bool supports_disjoint(const Bump& a, const Bump& b)
{
    Rational s = 2 * a.radius + 2 * b.radius;
    return (a.center - b.center).norm() > s * s;
}

// f * dbar(b); `poles` lists every point where f may have a pole.
struct BumpTerm {
    Bump bump;
    RatFun f;
    std::vector<GaussianRational> poles;
};

// (0,1)-form with values in O(e), e = `order` (negative for duals).
struct Form01 {
    int order = 0;
    std::vector<BumpTerm> terms;
};

// h = sum_j b_j u_j + v.
struct Function {
    std::vector<Bump> bumps;
    std::vector<RatFun> u;
    RatFun v;
    std::vector<GaussianRational> poles;
};

// dz-coefficient of a (1,0)-form with values in O(order). Where every bump vanishes
// it reads `outer`; where b_j = 1 it reads inner[j]; on annulus j it reads
// b_j (inner[j] - outer) + outer + (d b_j/dz) db[j].
struct Form10 {
    int order = 0;
    std::vector<Bump> bumps;
    RatFun outer;
    std::vector<RatFun> inner;
    std::vector<RatFun> db;
};

inline void check_disjoint(const std::vector<Bump>& bumps)
{
    for (std::size_t i = 0; i < bumps.size(); ++i)
        for (std::size_t j = i + 1; j < bumps.size(); ++j)
            if (!supports_disjoint(bumps[i], bumps[j]))
                throw std::invalid_argument("bump supports about " + bumps[i].center.str() + " and " +
                                            bumps[j].center.str() + " overlap");
}

inline void append_unique(std::vector<GaussianRational>& out, const std::vector<GaussianRational>& in)
{
    for (const auto& p : in)
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(p);
}

// Poles of f among the candidates, with multiplicities; throws if the
// denominator has a factor not accounted for by the candidates.
inline std::vector<std::pair<GaussianRational, int>> located_poles(const RatFun& f,
                                                                   const std::vector<GaussianRational>& candidates)
{
    std::vector<std::pair<GaussianRational, int>> out;
    Poly rest = f.denominator();
    for (const auto& p : candidates) {
        int n = f.pole_order(p);
        if (n > 0) {
            out.emplace_back(p, n);
            rest = divmod(rest, Poly::linear_power(p, n)).first;
        }
    }
    if (rest.degree() > 0)
        throw std::logic_error("rational coefficient has poles outside the declared pole set: " + f.str());
    return out;
}

inline Form01 add(const Form01& a, const Form01& b)
{
    if (a.order != b.order)
        throw std::invalid_argument("Form01 add: bundle mismatch");
    Form01 out = a;
    for (const auto& t : b.terms) {
        auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const BumpTerm& s) { return s.bump == t.bump; });
        if (it == out.terms.end()) {
            out.terms.push_back(t);
        } else {
            it->f += t.f;
            append_unique(it->poles, t.poles);
        }
    }
    return out;
}

inline Form01 scale(const GaussianRational& c, const Form01& a)
{
    Form01 out = a;
    for (auto& t : out.terms)
        t.f *= RatFun(c);
    return out;
}

// theta * s for a polynomial section s of O(e).
inline Form01 cup(const Form01& theta, const Poly& s, int e)
{
    Form01 out{theta.order + e, {}};
    for (const auto& t : theta.terms)
        out.terms.push_back({t.bump, t.f * RatFun(s), t.poles});
    return out;
}

// Hodge decomposition of a scalar (0,1)-form on P^1. H^{0,1} = 0 so gamma = 0;
// h = sum b_j f_j - g where g collects the principal parts of the f_j inside the
// discs, which makes h globally smooth and regular at infinity.
inline HarmonicDecomposition<Form01, Function> harmonic_decompose_p1(const Form01& psi)
{
    if (psi.order != 0)
        throw std::invalid_argument("harmonic_decompose_p1: form is not scalar");
    Form01 merged{0, {}};
    merged = add(merged, psi);
    std::vector<Bump> bumps;
    for (const auto& t : merged.terms)
        bumps.push_back(t.bump);
    check_disjoint(bumps);

    Function h;
    h.bumps = bumps;
    for (const auto& t : merged.terms) {
        append_unique(h.poles, t.poles);
        h.u.push_back(t.f);
        for (const auto& [p, n] : located_poles(t.f, t.poles)) {
            Region where = locate(t.bump, p);
            if (where == Region::annulus)
                throw std::invalid_argument("harmonic_decompose_p1: coefficient has a pole at " + p.str() +
                                            " on the support annulus");
            if (where == Region::inside)
                h.v -= principal_part_function(partial_fractions(t.f, p), p);
        }
    }

    // Regularity of h on every region; failure means the algebra above is wrong.
    for (std::size_t j = 0; j < h.bumps.size(); ++j) {
        RatFun in = h.u[j] + h.v;
        for (const auto& [p, n] : located_poles(in, h.poles))
            if (locate(h.bumps[j], p) != Region::outside)
                throw std::logic_error("harmonic_decompose_p1: h singular inside bump at " + p.str());
    }
    for (const auto& [p, n] : located_poles(h.v, h.poles)) {
        bool covered = false;
        for (const auto& b : h.bumps)
            covered = covered || locate(b, p) == Region::inside;
        if (!covered)
            throw std::logic_error("harmonic_decompose_p1: h singular outside the bumps at " + p.str());
    }
    if (!h.v.is_zero() && h.v.degree_at_infinity() > 0)
        throw std::logic_error("harmonic_decompose_p1: h singular at infinity");
    return {Form01{0, {}}, h, 0.0};
}

inline Form10 del(const Function& h)
{
    Form10 out;
    out.order = 0;
    out.bumps = h.bumps;
    out.outer = h.v.derivative();
    for (std::size_t j = 0; j < h.bumps.size(); ++j) {
        out.inner.push_back(h.u[j].derivative() + out.outer);
        out.db.push_back(h.u[j]);
    }
    return out;
}

inline Form10 multiply(const Poly& s, int e, const Form10& f)
{
    Form10 out = f;
    out.order += e;
    RatFun S(s);
    out.outer *= S;
    for (auto& x : out.inner)
        x *= S;
    for (auto& x : out.db)
        x *= S;
    return out;
}

inline Form10 add(const Form10& a, const Form10& b)
{
    if (a.order != b.order)
        throw std::invalid_argument("Form10 add: bundle mismatch");
    Form10 out;
    out.order = a.order;
    out.outer = a.outer + b.outer;
    auto piece = [](const Form10& f, const Bump& bump, RatFun& inner, RatFun& db) {
        for (std::size_t j = 0; j < f.bumps.size(); ++j)
            if (f.bumps[j] == bump) {
                inner = f.inner[j];
                db = f.db[j];
                return;
            }
        inner = f.outer;
        db = RatFun();
    };
    std::vector<Bump> all = a.bumps;
    for (const auto& x : b.bumps)
        if (std::find(all.begin(), all.end(), x) == all.end())
            all.push_back(x);
    for (const auto& bump : all) {
        RatFun ia, da, ib, dbb;
        piece(a, bump, ia, da);
        piece(b, bump, ib, dbb);
        out.bumps.push_back(bump);
        out.inner.push_back(ia + ib);
        out.db.push_back(da + dbb);
    }
    return out;
}

// A (1,0)-form of this shape is dbar-closed iff it is given by one rational
// expression everywhere, i.e. inner == outer and no d(b) terms survive.
inline bool is_closed(const Form10& f)
{
    for (std::size_t j = 0; j < f.bumps.size(); ++j)
        if (!(f.inner[j] == f.outer) || !f.db[j].is_zero())
            return false;
    return true;
}

// Coordinates in the monomial basis of H^0(O(e) (x) K) = H^0(O(e-2)).
inline std::vector<GaussianRational> class_coordinates(const Form10& f)
{
    if (!is_closed(f))
        throw std::domain_error("form is not dbar-closed; no holomorphic class to extract");
    const int e = f.order;
    if (!f.outer.is_polynomial())
        throw std::domain_error("closed form has poles: " + f.outer.str());
    const Poly& p = f.outer.numerator();
    if (p.degree() > e - 2)
        throw std::domain_error("closed form is singular at infinity for O(" + std::to_string(e) + ") (x) K");
    std::vector<GaussianRational> c(std::max(e - 1, 0));
    for (int n = 0; n <= p.degree(); ++n)
        c[n] = p.coeff(n);
    return c;
}

inline Poly section_from_coordinates(const std::vector<GaussianRational>& c) { return Poly(c); }

// Integration pairing of theta (values in O(-e)) against Psi dz (values in O(e) (x) K),
// in units of 2 pi i: the sum of residues of f Psi inside the discs.
inline GaussianRational pair(const Form01& theta, const RatFun& psi)
{
    GaussianRational total;
    for (const auto& t : theta.terms) {
        for (const auto& [p, n] : located_poles(psi, t.poles))
            if (locate(t.bump, p) != Region::outside)
                throw std::domain_error("pairing: the (1,0)-form has a pole at " + p.str() + " inside a bump");
        RatFun g = t.f * psi;
        for (const auto& [p, n] : located_poles(t.f, t.poles)) {
            if (locate(t.bump, p) != Region::inside)
                continue;
            auto pp = partial_fractions(g, p);
            if (!pp.principal.empty())
                total += pp.principal[0];
        }
    }
    return total;
}

} // namespace hodgegauss::p1
