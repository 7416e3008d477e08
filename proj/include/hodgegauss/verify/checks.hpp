#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hodgegauss/core/gauss.hpp"
#include "hodgegauss/p1/backend.hpp"
#include "hodgegauss/p1/pair_relations.hpp"
#include "hodgegauss/torus/backend.hpp"
#include "hodgegauss/torus/weierstrass.hpp"
#include "hodgegauss/verify/report.hpp"

namespace hodgegauss::verify {

using exact::GaussianRational;
using exact::Rational;
using torus::cplx;

struct Tolerances {
    double lift_spread = 1e-5;
    double cross_path = 1e-6;
    double welldefined = 1e-6;
    double metric_scale = 1e-12;
    double closedness = 1e-6;
    double symmetry = 1e-6;
    double degenerate = 1e-10;  // |v_P(mu_2 Q)| below this times its term scale is skipped
    double monotone_floor = 1e-13; // values below count as converged in monotonicity checks
};

inline json tolerances_json(const Tolerances& t)
{
    return json{{"lift_spread", t.lift_spread},   {"cross_path", t.cross_path}, {"welldefined", t.welldefined},
                {"metric_scale", t.metric_scale}, {"closedness", t.closedness}, {"symmetry", t.symmetry},
                {"degenerate", t.degenerate},     {"monotone_floor", t.monotone_floor}};
}

inline std::vector<GaussianRational> default_p1_points()
{
    using G = GaussianRational;
    return {G(0), G(1), G(-1), G(2), G::ratio(1, 2), G(-3), G::i(), G(Rational(1), Rational(1))};
}

inline Rational default_p1_radius() { return Rational(1, 10); }

// Lattice coordinates (x, y) of the default torus points, z = x + tau y.
inline std::vector<std::pair<double, double>> default_torus_lattice_points()
{
    return {{0.5, 0.5}, {0.35, 0.6}, {0.62, 0.38}, {0.58, 0.66}};
}

inline std::vector<cplx> default_torus_points(cplx tau)
{
    std::vector<cplx> out;
    for (auto [x, y] : default_torus_lattice_points())
        out.push_back(x + tau * y);
    return out;
}

// Closedness is bump-limited: the cell centre admits the widest bump.
inline std::vector<cplx> central_torus_points(cplx tau) { return {0.5 + 0.5 * tau}; }

namespace detail {

inline double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num = std::max(num, std::abs(a[k] - b[k]));
        den = std::max(den, std::abs(b[k]));
    }
    return den > 0.0 ? num / den : num;
}

// |sum a_ij phi_i''(P) phi_j(P)| relative to sum |a_ij phi_i''(P) phi_j(P)|
inline double wahl_term_scale(const torus::Backend& b, const SymmetricTensor<cplx>& Q, cplx P)
{
    double s = 0.0;
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j)
            s += std::abs(Q.entry({i, j}) * b.basis_value(i, 2, P) * b.basis_value(j, 0, P));
    return s;
}

inline std::string dims_note(int got, int expected)
{
    return "relation space dimension " + std::to_string(got) + ", expected " + std::to_string(expected);
}

} // namespace detail

// ---------------------------------------------------------------- P^1, exact

inline VerificationReport lift_p1(const p1::Backend& b, const std::vector<GaussianRational>& points,
                                  const Rational& radius)
{
    VerificationReport r;
    r.check = "lift";
    r.backend = "p1";
    const int d = b.degree();
    r.fixture = {{"d", d}, {"k", 2}, {"m", 1}, {"points", to_json(points)}, {"bump_radius", exact::to_string(radius)}};
    auto rs = relation_space(b, 2);
    const int expected = d * (d - 1) / 2;
    r.measured["relation_dimension"] = rs.dimension();
    r.measured["expected_dimension"] = expected;
    if (rs.dimension() != expected) {
        r.status = Status::fail;
        r.notes.push_back(detail::dims_note(rs.dimension(), expected));
        return r;
    }
    if (rs.dimension() == 0) {
        r.status = Status::inconclusive;
        r.notes.push_back("relation space is zero");
        return r;
    }
    json cells = json::array();
    std::optional<GaussianRational> constant;
    bool constant_ok = true;
    int used = 0, skipped = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi) {
        const auto& Q = rs.basis[qi];
        for (const auto& P : points) {
            GaussianRational v = wahl_value(b, Q, P);
            if (v.is_zero()) {
                ++skipped;
                r.notes.push_back("skipped Q" + std::to_string(qi) + " at " + P.str() + ": v_P(mu2 Q) = 0");
                continue;
            }
            auto xi = b.schiffer(P, 1, radius);
            GaussianRational pairing = b.pair(xi, gauss_rho(b, Q, xi, 1));
            GaussianRational ratio = pairing / v;
            if (!constant)
                constant = ratio;
            else if (!(ratio == *constant))
                constant_ok = false;
            ++used;
            cells.push_back({{"q", qi}, {"point", P.str()}, {"pairing", pairing.str()}, {"wahl", v.str()},
                             {"ratio", ratio.str()}});
            r.rows.push_back({"lift", "p1", d, 0, static_cast<int>(qi), P.str(), "ratio", ratio.str()});
        }
    }
    r.measured["cells"] = cells;
    r.measured["cells_used"] = used;
    r.measured["cells_skipped"] = skipped;
    if (used == 0) {
        r.status = Status::inconclusive;
        r.notes.push_back("all sample points degenerate");
        return r;
    }
    r.measured["constant"] = constant->str();
    r.measured["constant_is_common"] = constant_ok;
    r.status = constant_ok ? Status::pass : Status::fail;
    return r;
}

inline VerificationReport cross_path_p1(const p1::Backend& b, const std::vector<GaussianRational>& points,
                                        const Rational& radius)
{
    VerificationReport r;
    r.check = "crosspath";
    r.backend = "p1";
    r.fixture = {{"d", b.degree()}, {"points", to_json(points)}, {"bump_radius", exact::to_string(radius)}};
    auto rs = relation_space(b, 2);
    int mismatches = 0, cells = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (const auto& P : points) {
            auto solver = gauss_rho(b, rs.basis[qi], b.schiffer(P, 1, radius), 1);
            auto closed = p1::rho_schiffer_exact(b, rs.basis[qi], P);
            ++cells;
            if (solver.coordinates != closed.coordinates) {
                ++mismatches;
                r.notes.push_back("Q" + std::to_string(qi) + " at " + P.str() + ": paths differ");
            }
        }
    r.measured["cells"] = cells;
    r.measured["mismatches"] = mismatches;
    r.status = cells == 0 ? Status::inconclusive : (mismatches == 0 ? Status::pass : Status::fail);
    return r;
}

// Representative perturbation by dbar of a bump-supported function away from P,
// bump-radius change, and the metric (which the exact formulation never uses).
inline VerificationReport welldefined_p1(const p1::Backend& b, const std::vector<GaussianRational>& points,
                                         const Rational& radius)
{
    VerificationReport r;
    r.check = "welldefined";
    r.backend = "p1";
    r.fixture = {{"d", b.degree()}, {"points", to_json(points)}, {"bump_radius", exact::to_string(radius)},
                 {"radius_factor", "3/2"}};
    auto rs = relation_space(b, 2);
    int perturb_moves = 0, radius_moves = 0, cells = 0;
    const int e = b.degree();
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (const auto& P : points) {
            const auto& Q = rs.basis[qi];
            auto xi = b.schiffer(P, 1, radius);
            auto base = gauss_rho(b, Q, xi, 1).coordinates;
            // theta + dbar(b' u): u polynomial, b' centred 3 radii beyond the support of b
            GaussianRational c2 = P + GaussianRational(Rational(6) * radius + Rational(1, 2), Rational(0));
            p1::Poly u(std::vector<GaussianRational>{GaussianRational::ratio(2, 3), GaussianRational::i(),
                                                     GaussianRational::ratio(-1, 5)});
            p1::Form01 bump{-e, {p1::BumpTerm{p1::Bump{c2, radius}, p1::RatFun(u), {}}}};
            auto moved = gauss_rho(b, Q, p1::add(xi, bump), 1).coordinates;
            auto wider = gauss_rho(b, Q, b.schiffer(P, 1, radius * Rational(3, 2)), 1).coordinates;
            ++cells;
            perturb_moves += moved != base;
            radius_moves += wider != base;
        }
    r.measured["cells"] = cells;
    r.measured["perturbation_moves"] = perturb_moves;
    r.measured["radius_moves"] = radius_moves;
    r.measured["metric_scale_moves"] = 0;
    r.notes.push_back("the exact formulation is metric-free: harmonic decomposition on P^1 has gamma = 0");
    r.status = cells == 0 ? Status::inconclusive
                          : (perturb_moves == 0 && radius_moves == 0 ? Status::pass : Status::fail);
    return r;
}

// sum_{S in R_{k-m}, T in R_m} a_ST phi_S d(phi_T) as a polynomial.
inline p1::Poly closedness_identity(const p1::Backend& b, const SymmetricTensor<GaussianRational>& Q, int m)
{
    const int k = Q.order(), r = b.rank();
    p1::Poly acc;
    for (const auto& J : all_tuples(r, k)) {
        GaussianRational a = Q.entry(J);
        if (a.is_zero())
            continue;
        p1::Poly S(a), T(GaussianRational(1));
        for (int t = 0; t < k - m; ++t)
            S *= b.basis()[J[t]];
        for (int t = k - m; t < k; ++t)
            T *= b.basis()[J[t]];
        acc += S * T.derivative();
    }
    return acc;
}

inline VerificationReport closedness_p1(const std::vector<int>& degrees, const std::vector<int>& ks,
                                        const GaussianRational& point, const Rational& radius)
{
    VerificationReport r;
    r.check = "closedness";
    r.backend = "p1";
    r.fixture = {{"degrees", degrees}, {"k", ks}, {"point", point.str()}, {"bump_radius", exact::to_string(radius)}};
    int fixtures = 0, identity_failures = 0, open_forms = 0;
    for (int d : degrees) {
        p1::Backend b(d);
        for (int k : ks) {
            auto rs = relation_space(b, k);
            for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
                for (int m = 1; m < k || (k == 1 && m == 1); ++m) {
                    ++fixtures;
                    if (!closedness_identity(b, rs.basis[qi], m).is_zero())
                        ++identity_failures;
                    if (m * d < 2)
                        continue;
                    // the assembled form itself must be dbar-closed (class extraction checks this)
                    try {
                        (void)gauss_rho(b, rs.basis[qi], b.schiffer(point, m, radius), m);
                    } catch (const std::domain_error&) {
                        ++open_forms;
                    }
                }
        }
    }
    // zero input
    p1::Backend b2(2);
    bool zero_ok = closedness_identity(b2, SymmetricTensor<GaussianRational>(3, 2), 1).is_zero();
    r.measured["fixtures"] = fixtures;
    r.measured["identity_failures"] = identity_failures;
    r.measured["non_closed_forms"] = open_forms;
    r.measured["zero_input_residual"] = zero_ok ? 0 : 1;
    r.status = identity_failures == 0 && open_forms == 0 && zero_ok ? Status::pass : Status::fail;
    return r;
}

inline VerificationReport symmetry_p1(const p1::Backend& b, const std::vector<GaussianRational>& points,
                                      const Rational& radius)
{
    VerificationReport r;
    r.check = "symmetry";
    r.backend = "p1";
    r.fixture = {{"d", b.degree()}, {"points", to_json(points)}, {"bump_radius", exact::to_string(radius)}};
    auto rs = relation_space(b, 2);
    int pairs = 0, unequal = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                auto [a, c] = symmetry_pair(b, rs.basis[qi], b.schiffer(points[i], 1, radius),
                                            b.schiffer(points[j], 1, radius));
                ++pairs;
                if (!(a == c)) {
                    ++unequal;
                    r.notes.push_back("Q" + std::to_string(qi) + " (" + points[i].str() + ", " + points[j].str() +
                                      "): " + a.str() + " != " + c.str());
                }
            }
    r.measured["pairs"] = pairs;
    r.measured["unequal"] = unequal;
    r.status = pairs == 0 ? Status::inconclusive : (unequal == 0 ? Status::pass : Status::fail);
    return r;
}

// gauss_rho against gauss_rho_derivative_form for the (k, m) fixtures.
inline VerificationReport equivalence_p1(const std::vector<int>& degrees,
                                         const std::vector<std::pair<int, int>>& km,
                                         const std::vector<GaussianRational>& points, const Rational& radius)
{
    VerificationReport r;
    r.check = "equivalence";
    r.backend = "p1";
    json kmj = json::array();
    for (auto [k, m] : km)
        kmj.push_back({k, m});
    r.fixture = {{"degrees", degrees}, {"km", kmj}, {"points", to_json(points)},
                 {"bump_radius", exact::to_string(radius)}};
    int cells = 0, mismatches = 0;
    for (int d : degrees) {
        p1::Backend b(d);
        for (auto [k, m] : km) {
            if (m * d < 2)
                continue;
            auto rs = relation_space(b, k);
            for (const auto& Q : rs.basis)
                for (const auto& P : points) {
                    auto xi = b.schiffer(P, m, radius);
                    ++cells;
                    if (gauss_rho(b, Q, xi, m).coordinates != gauss_rho_derivative_form(b, Q, xi, m).coordinates)
                        ++mismatches;
                }
        }
    }
    r.measured["cells"] = cells;
    r.measured["mismatches"] = mismatches;
    r.status = cells == 0 ? Status::inconclusive : (mismatches == 0 ? Status::pass : Status::fail);
    return r;
}

inline VerificationReport dimensions_p1(const std::vector<int>& degrees, int max_split_degree)
{
    VerificationReport r;
    r.check = "dimensions";
    r.backend = "p1";
    r.fixture = {{"degrees", degrees}, {"max_split_degree", max_split_degree}};
    bool ok = true;
    json i2 = json::array(), r2 = json::array();
    for (int d : degrees) {
        int got = relation_space(p1::Backend(d), 2).dimension();
        int expected = d * (d - 1) / 2;
        ok = ok && got == expected;
        i2.push_back({{"d", d}, {"dim", got}, {"expected", expected}});
    }
    for (int a = 0; a <= max_split_degree; ++a)
        for (int bdeg = 0; bdeg <= max_split_degree; ++bdeg) {
            auto R = p1::pair_relation_space(p1::SplitBundle{{a}}, p1::SplitBundle{{bdeg}});
            int oracle = R.jet_rows == 0 ? (a + 1) * (bdeg + 1) : (a + 1) * (bdeg + 1) - R.jet_rank;
            int expected = std::max(a - 1, 0) * std::max(bdeg - 1, 0);
            ok = ok && R.dimension() == oracle && R.dimension() == expected;
            r2.push_back({{"a", a}, {"b", bdeg}, {"dim", R.dimension()}, {"jet_rank", R.jet_rank},
                          {"expected", expected}});
        }
    r.measured["I2"] = i2;
    r.measured["R2"] = r2;
    r.status = ok ? Status::pass : Status::fail;
    return r;
}

// ---------------------------------------------------------------- torus, numeric

struct TorusFixture {
    std::vector<cplx> points;
    double radius = 0.0; // 0: per-point default
};

inline json torus_fixture_json(const torus::Backend& b, const TorusFixture& f)
{
    const auto& g = b.geometry();
    json pts = json::array();
    for (auto p : f.points)
        pts.push_back(to_json(p));
    return {{"tau", to_json(g.tau)},
            {"N", g.N},
            {"d", b.degree()},
            {"metric_scale", g.metric_scale},
            {"character", json::array({b.character().chi1, b.character().chi2})},
            {"bump_beta", b.bump_beta()},
            {"bump_radius", f.radius > 0.0 ? json(f.radius) : json("auto (0.45 x chart margin)")},
            {"points", pts}};
}

struct LiftCell {
    int q = 0;
    cplx point;
    cplx pairing, wahl, ratio;
    double closedness = 0.0, projection = 0.0, decomposition = 0.0;
};

inline std::vector<LiftCell> lift_cells(const torus::Backend& b, const RelationSpace<cplx>& rs,
                                        const TorusFixture& f, int character, const Tolerances& tol,
                                        std::vector<std::string>& notes)
{
    std::vector<LiftCell> out;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (auto P : f.points) {
            const auto& Q = rs.basis[qi];
            cplx v = wahl_value(b, Q, P);
            if (std::abs(v) <= tol.degenerate * detail::wahl_term_scale(b, Q, P)) {
                notes.push_back("skipped Q" + std::to_string(qi) + " at " + format_complex(P) + ": v_P(mu2 Q) = 0");
                continue;
            }
            auto img = gauss_rho(b, Q, b.schiffer(P, 1, f.radius, character), 1);
            cplx pairing = b.pair(b.schiffer(P, 1, f.radius, -character), img);
            out.push_back({static_cast<int>(qi), P, pairing, v, pairing / v, img.closedness_residual,
                           img.projection_residual, img.decomposition_residual});
        }
    return out;
}

// max |r - mean| / |mean|
inline std::pair<cplx, double> ratio_spread(const std::vector<LiftCell>& cells)
{
    cplx mean = 0.0;
    for (const auto& c : cells)
        mean += c.ratio;
    mean /= static_cast<double>(cells.size());
    double s = 0.0;
    for (const auto& c : cells)
        s = std::max(s, std::abs(c.ratio - mean));
    return {mean, s / std::abs(mean)};
}

inline VerificationReport lift_torus(const torus::Backend& b, const TorusFixture& f, const Tolerances& tol,
                                     int character = 0)
{
    VerificationReport r;
    r.check = character == 0 ? "lift" : "twisted";
    r.backend = "torus";
    r.fixture = torus_fixture_json(b, f);
    r.fixture["twist_character"] = character;
    r.fixture["tolerance"] = tol.lift_spread;
    const int d = b.degree();
    auto rs = relation_space(b, 2);
    const int expected = d >= 3 ? d * (d - 3) / 2 : 0;
    r.measured["relation_dimension"] = rs.dimension();
    r.measured["expected_dimension"] = expected;
    r.measured["rank_gap_ratio"] = std::isfinite(rs.diagnostics.gap_ratio) ? json(rs.diagnostics.gap_ratio) : json("inf");
    if (rs.dimension() != expected) {
        r.status = Status::fail;
        r.notes.push_back(detail::dims_note(rs.dimension(), expected));
        return r;
    }
    if (rs.dimension() == 0) {
        r.status = Status::inconclusive;
        r.notes.push_back("relation space is zero");
        return r;
    }
    auto cells = lift_cells(b, rs, f, character, tol, r.notes);
    if (cells.empty()) {
        r.status = Status::inconclusive;
        r.notes.push_back("all sample points degenerate");
        return r;
    }
    auto [mean, spread] = ratio_spread(cells);
    json cj = json::array();
    double max_closed = 0.0, max_proj = 0.0, max_dec = 0.0;
    for (const auto& c : cells) {
        cj.push_back({{"q", c.q}, {"point", to_json(c.point)}, {"pairing", to_json(c.pairing)},
                      {"wahl", to_json(c.wahl)}, {"ratio", to_json(c.ratio)}, {"closedness_residual", c.closedness},
                      {"projection_residual", c.projection}, {"decomposition_residual", c.decomposition}});
        r.rows.push_back({r.check, "torus", d, b.geometry().N, c.q, format_complex(c.point), "ratio",
                          format_complex(c.ratio)});
        max_closed = std::max(max_closed, c.closedness);
        max_proj = std::max(max_proj, c.projection);
        max_dec = std::max(max_dec, c.decomposition);
    }
    r.measured["cells"] = cj;
    r.measured["constant"] = to_json(mean);
    r.measured["spread"] = spread;
    r.measured["max_closedness_residual"] = max_closed;
    r.measured["max_projection_residual"] = max_proj;
    r.measured["max_decomposition_residual"] = max_dec;
    r.status = spread < tol.lift_spread ? Status::pass : Status::fail;
    return r;
}

inline VerificationReport cross_path_torus(const torus::Backend& b, const TorusFixture& f, const Tolerances& tol)
{
    VerificationReport r;
    r.check = "crosspath";
    r.backend = "torus";
    r.fixture = torus_fixture_json(b, f);
    r.fixture["tolerance"] = tol.cross_path;
    auto rs = relation_space(b, 2);
    double worst = 0.0;
    int cells = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (auto P : f.points) {
            auto img = gauss_rho(b, rs.basis[qi], b.schiffer(P, 1, f.radius), 1);
            double e = detail::rel_diff(img.coordinates, torus::eta_path_image(b, rs.basis[qi], P));
            worst = std::max(worst, e);
            ++cells;
            r.rows.push_back({"crosspath", "torus", b.degree(), b.geometry().N, static_cast<int>(qi),
                              format_complex(P), "relative_difference", format_double(e)});
        }
    r.measured["cells"] = cells;
    r.measured["max_relative_difference"] = worst;
    r.status = cells == 0 ? Status::inconclusive : (worst < tol.cross_path ? Status::pass : Status::fail);
    return r;
}

// Representative perturbation, bump radius r -> 3r/2 (from 2/3 of the chart default),
// and metric scale c in {2, 1/3}.
inline VerificationReport welldefined_torus(const torus::Backend& b, const TorusFixture& f, const Tolerances& tol,
                                            unsigned seed = 17)
{
    VerificationReport r;
    r.check = "welldefined";
    r.backend = "torus";
    r.fixture = torus_fixture_json(b, f);
    r.fixture["radius_factor"] = 1.5;
    r.fixture["metric_scales"] = json::array({1.0, 2.0, 1.0 / 3.0});
    r.fixture["seed"] = seed;
    r.fixture["tolerance"] = tol.welldefined;
    r.fixture["metric_tolerance"] = tol.metric_scale;
    auto rs = relation_space(b, 2);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double perturb = 0.0, radius = 0.0, metric = 0.0;
    int cells = 0;
    const auto& g = b.geometry();
    std::vector<torus::Backend> scaled = {b.with_metric_scale(2.0), b.with_metric_scale(1.0 / 3.0)};
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (auto P : f.points) {
            const auto& Q = rs.basis[qi];
            const double r1 = f.radius > 0.0 ? f.radius : g.default_bump_radius(P);
            const double r0 = r1 / 1.5;
            auto xi = b.schiffer(P, 1, r1);
            auto base = gauss_rho(b, Q, xi, 1).coordinates;

            std::vector<std::vector<cplx>> coeffs(3, std::vector<cplx>(3));
            for (auto& row : coeffs)
                for (auto& c : row)
                    c = cplx(u(rng), u(rng));
            auto chi = b.bump_perturbation(P, r1, xi.twist, coeffs);
            torus::Form01 moved{xi.twist, xi.coeff + chi.coeff};
            double dp = detail::rel_diff(gauss_rho(b, Q, moved, 1).coordinates, base);
            double dr = detail::rel_diff(gauss_rho(b, Q, b.schiffer(P, 1, r0), 1).coordinates, base);
            double dm = 0.0;
            for (const auto& bc : scaled)
                dm = std::max(dm, detail::rel_diff(gauss_rho(bc, Q, bc.schiffer(P, 1, r1), 1).coordinates, base));
            perturb = std::max(perturb, dp);
            radius = std::max(radius, dr);
            metric = std::max(metric, dm);
            ++cells;
            const std::string pt = format_complex(P);
            r.rows.push_back({"welldefined", "torus", b.degree(), g.N, static_cast<int>(qi), pt, "perturbation",
                              format_double(dp)});
            r.rows.push_back({"welldefined", "torus", b.degree(), g.N, static_cast<int>(qi), pt, "radius",
                              format_double(dr)});
            r.rows.push_back({"welldefined", "torus", b.degree(), g.N, static_cast<int>(qi), pt, "metric_scale",
                              format_double(dm)});
        }
    r.measured["cells"] = cells;
    r.measured["max_perturbation_drift"] = perturb;
    r.measured["max_radius_drift"] = radius;
    r.measured["max_metric_scale_drift"] = metric;
    r.status = cells == 0 ? Status::inconclusive
                          : (perturb < tol.welldefined && radius < tol.welldefined && metric < tol.metric_scale
                                 ? Status::pass
                                 : Status::fail);
    return r;
}

inline VerificationReport closedness_torus(const torus::Backend& b, const TorusFixture& f, const Tolerances& tol)
{
    VerificationReport r;
    r.check = "closedness";
    r.backend = "torus";
    r.fixture = torus_fixture_json(b, f);
    r.fixture["tolerance"] = tol.closedness;
    auto rs = relation_space(b, 2);
    double worst = 0.0;
    int cells = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (auto P : f.points) {
            auto img = gauss_rho(b, rs.basis[qi], b.schiffer(P, 1, f.radius), 1);
            worst = std::max(worst, img.closedness_residual);
            ++cells;
            r.rows.push_back({"closedness", "torus", b.degree(), b.geometry().N, static_cast<int>(qi),
                              format_complex(P), "closedness_residual", format_double(img.closedness_residual)});
        }
    double zero = b.closedness_residual(b.zero_form10(1));
    r.measured["cells"] = cells;
    r.measured["max_closedness_residual"] = worst;
    r.measured["zero_input_residual"] = zero;
    r.status = cells == 0 ? Status::inconclusive
                          : (worst < tol.closedness && zero == 0.0 ? Status::pass : Status::fail);
    return r;
}

inline VerificationReport symmetry_torus(const torus::Backend& b, const TorusFixture& f, const Tolerances& tol)
{
    VerificationReport r;
    r.check = "symmetry";
    r.backend = "torus";
    r.fixture = torus_fixture_json(b, f);
    r.fixture["tolerance"] = tol.symmetry;
    auto rs = relation_space(b, 2);
    double worst = 0.0;
    int pairs = 0;
    for (std::size_t qi = 0; qi < rs.basis.size(); ++qi)
        for (std::size_t i = 0; i < f.points.size(); ++i)
            for (std::size_t j = i + 1; j < f.points.size(); ++j) {
                auto [a, c] = symmetry_pair(b, rs.basis[qi], b.schiffer(f.points[i], 1, f.radius),
                                            b.schiffer(f.points[j], 1, f.radius));
                double e = std::abs(a - c) / std::max(std::abs(a), std::abs(c));
                worst = std::max(worst, e);
                ++pairs;
            }
    r.measured["pairs"] = pairs;
    r.measured["max_relative_difference"] = worst;
    r.status = pairs == 0 ? Status::inconclusive : (worst < tol.symmetry ? Status::pass : Status::fail);
    return r;
}

inline VerificationReport dimensions_torus(cplx tau, int N, const std::vector<int>& degrees)
{
    VerificationReport r;
    r.check = "dimensions";
    r.backend = "torus";
    r.fixture = {{"tau", to_json(tau)}, {"N", N}, {"degrees", degrees}};
    bool ok = true;
    json rows = json::array();
    for (int d : degrees) {
        torus::Backend b(torus::Geometry{tau, N}, d);
        auto rs = relation_space(b, 2);
        int expected = d >= 3 ? d * (d - 3) / 2 : 0;
        double worst = 0.0;
        for (const auto& Q : rs.basis)
            worst = std::max(worst, b.relation_residual(Q));
        ok = ok && rs.dimension() == expected && worst < 1e-8;
        rows.push_back({{"d", d},
                        {"dim", rs.dimension()},
                        {"expected", expected},
                        {"gap_ratio", std::isfinite(rs.diagnostics.gap_ratio) ? json(rs.diagnostics.gap_ratio)
                                                                              : json("inf")},
                        {"max_relation_residual", worst}});
    }
    r.measured["I2"] = rows;
    r.status = ok ? Status::pass : Status::fail;
    return r;
}

// Each entry no larger than the previous one, unless it is already below the floor.
inline bool non_increasing(const std::vector<double>& v, double floor)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > floor)
            return false;
    return true;
}

// Residuals and lifting spread against N; every sequence must be non-increasing
// (values below the floor count as converged).
inline VerificationReport convergence_torus(cplx tau, int d, const std::vector<int>& Ns, torus::FlatCharacter chi,
                                            const std::vector<cplx>& points, double radius, const Tolerances& tol)
{
    VerificationReport r;
    r.check = "convergence";
    r.backend = "torus";
    json pts = json::array();
    for (auto p : points)
        pts.push_back(to_json(p));
    r.fixture = {{"tau", to_json(tau)}, {"d", d},           {"N", Ns},
                 {"character", json::array({chi.chi1, chi.chi2})},
                 {"points", pts},       {"monotone_floor", tol.monotone_floor}};
    if (!std::is_sorted(Ns.begin(), Ns.end()))
        throw std::invalid_argument("convergence: grid list must be ascending");
    const int character = chi.trivial() ? 0 : 1;
    std::vector<double> spread, closed, cross, dec;
    json table = json::array();
    for (int N : Ns) {
        torus::Backend b(torus::Geometry{tau, N}, d, chi);
        auto rs = relation_space(b, 2);
        TorusFixture f{points, radius};
        std::vector<std::string> ignore;
        auto cells = lift_cells(b, rs, f, character, tol, ignore);
        double s = cells.empty() ? 0.0 : ratio_spread(cells).second;
        double c = 0.0, x = 0.0, h = 0.0;
        for (const auto& cell : cells) {
            c = std::max(c, cell.closedness);
            h = std::max(h, cell.decomposition);
        }
        if (chi.trivial())
            for (const auto& Q : rs.basis)
                for (auto P : points)
                    x = std::max(x, detail::rel_diff(gauss_rho(b, Q, b.schiffer(P, 1, radius), 1).coordinates,
                                                     torus::eta_path_image(b, Q, P)));
        spread.push_back(s);
        closed.push_back(c);
        cross.push_back(x);
        dec.push_back(h);
        table.push_back({{"N", N},
                         {"lift_spread", s},
                         {"closedness_residual", c},
                         {"cross_path_difference", x},
                         {"decomposition_residual", h}});
        for (auto [name, val] : std::vector<std::pair<std::string, double>>{
                 {"lift_spread", s}, {"closedness_residual", c}, {"cross_path_difference", x},
                 {"decomposition_residual", h}})
            r.rows.push_back({"convergence", "torus", d, N, -1, "", name, format_double(val)});
    }
    auto monotone = [&](const std::vector<double>& v) { return non_increasing(v, tol.monotone_floor); };
    auto orders = [&](const std::vector<double>& v) {
        json o = json::array();
        for (std::size_t i = 1; i < v.size(); ++i)
            o.push_back(v[i] > 0.0 && v[i - 1] > 0.0 ? json(std::log2(v[i - 1] / v[i]) /
                                                            std::log2(double(Ns[i]) / Ns[i - 1]))
                                                     : json(nullptr));
        return o;
    };
    bool ok = monotone(spread) && monotone(closed) && monotone(cross) && monotone(dec);
    r.measured["table"] = table;
    r.measured["empirical_order"] = {{"lift_spread", orders(spread)},
                                     {"closedness_residual", orders(closed)},
                                     {"cross_path_difference", orders(cross)},
                                     {"decomposition_residual", orders(dec)}};
    r.measured["monotone"] = ok;
    r.status = ok ? Status::pass : Status::fail;
    return r;
}

} // namespace hodgegauss::verify
