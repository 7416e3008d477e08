#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hodgegauss/core/gauss.hpp"
#include "hodgegauss/p1/backend.hpp"

using namespace hodgegauss;
using namespace hodgegauss::p1;
using GR = GaussianRational;

namespace {

GR q(std::int64_t p, std::int64_t d = 1) { return GR::ratio(p, d); }
const Rational kRadius(1, 8);

SymmetricTensor<GR> quadric_x0x2_minus_x1sq(int r)
{
    SymmetricTensor<GR> Q(r, 2);
    Q.set_monomial({1, 0, 1}, q(1));
    Q.set_monomial({0, 2, 0}, q(-1));
    return Q;
}

// omega = f(z) dz in the chart w = 1/z: -f(1/w)/w^2.
RatFun at_infinity(const RatFun& f)
{
    auto reverse = [](const Poly& p, int n) {
        std::vector<GR> c(n + 1);
        for (int k = 0; k <= p.degree(); ++k)
            c[n - k] = p.coeff(k);
        return Poly(c);
    };
    int dn = f.numerator().degree(), dd = f.denominator().degree();
    int n = std::max(dn, dd);
    // f(1/w) = Nrev(w) / Drev(w) with both reversed to degree n
    RatFun g(reverse(f.numerator(), n), reverse(f.denominator(), n));
    return -(g / RatFun(Poly::monomial(2)));
}

// Exact inverse by Gauss-Jordan (test oracle).
std::vector<std::vector<GR>> inverse(std::vector<std::vector<GR>> a)
{
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<GR>> inv(n, std::vector<GR>(n));
    for (int i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c].is_zero())
            ++p;
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        GR s = GR(1) / a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] *= s;
            inv[c][j] *= s;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero())
                continue;
            GR f = a[i][c];
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

} // namespace

TEST(P1SectionBasis, Examples)
{
    EXPECT_EQ(section_basis(0), std::vector<Poly>{Poly(q(1))});
    auto b2 = section_basis(2);
    ASSERT_EQ(b2.size(), 3u);
    EXPECT_EQ(b2[2], Poly::monomial(2));
    EXPECT_EQ(Backend(3).rank(), 4);
}

TEST(P1Eta, NormalizedSecondKindDifferential)
{
    for (GR P : {q(0), q(1)}) {
        auto eta = eta_p1(P);
        RatFun f = eta.dz_coefficient();
        EXPECT_EQ(f, RatFun::pole(P, 2, q(-1)));
        auto pp = partial_fractions(f, P);
        ASSERT_EQ(pp.principal.size(), 2u);
        EXPECT_TRUE(pp.principal[0].is_zero()); // residue
        EXPECT_EQ(pp.principal[1], q(-1));
        EXPECT_TRUE(differential_regular_at_infinity(f));
        RatFun g = at_infinity(f);
        EXPECT_EQ(g.pole_order(q(0)), 0);
    }
    // P = 0: dw / (1 - 0 w)^2 = dw
    EXPECT_EQ(at_infinity(eta_p1(q(0)).dz_coefficient()), RatFun(q(1)));
}

TEST(P1HarmonicDecompose, Examples)
{
    auto zero = harmonic_decompose_p1(Form01{0, {}});
    EXPECT_TRUE(zero.h.v.is_zero());
    EXPECT_TRUE(zero.gamma.terms.empty());

    Backend b(2);
    Form01 psi{0, {BumpTerm{Bump{q(0), kRadius}, RatFun::pole(q(0), 1), {q(0)}}}};
    auto dec = harmonic_decompose_p1(psi);
    EXPECT_TRUE(dec.gamma.terms.empty());
    Form10 dh = del(dec.h);
    // outside the bump support del h = -eta_p1(0)
    EXPECT_EQ(dh.outer, -eta_p1(q(0)).dz_coefficient());
    // inside, h = b f - g is regular: (1/z) - (1/z) = 0
    EXPECT_TRUE((dec.h.u[0] + dec.h.v).is_zero());
}

TEST(P1HarmonicDecompose, Linear)
{
    Bump bump{q(1, 2), kRadius};
    Form01 a{0, {BumpTerm{bump, RatFun::pole(q(1, 2), 2, q(3)) + RatFun(Poly::monomial(1)), {q(1, 2)}}}};
    Form01 c{0, {BumpTerm{bump, RatFun::pole(q(1, 2), 1, GR::i()), {q(1, 2)}}}};
    auto ha = harmonic_decompose_p1(a).h, hc = harmonic_decompose_p1(c).h;
    auto hs = harmonic_decompose_p1(add(scale(q(2), a), c)).h;
    EXPECT_EQ(hs.v, RatFun(q(2)) * ha.v + hc.v);
    EXPECT_EQ(hs.u[0], RatFun(q(2)) * ha.u[0] + hc.u[0]);
}

TEST(P1HarmonicDecompose, RejectsPoleOnAnnulus)
{
    Form01 psi{0, {BumpTerm{Bump{q(0), kRadius}, RatFun::pole(q(3, 16), 1), {q(3, 16)}}}};
    EXPECT_THROW(harmonic_decompose_p1(psi), std::invalid_argument);
}

TEST(P1RhoSchiffer, DegreeTwoExample)
{
    Backend b(2);
    auto Q = quadric_x0x2_minus_x1sq(3);
    EXPECT_EQ(Q.entry({0, 2}), q(1, 2));
    EXPECT_EQ(Q.entry({2, 0}), q(1, 2));
    EXPECT_EQ(Q.entry({1, 1}), q(-1));
    auto img = rho_schiffer_exact(b, Q, q(0));
    // oracle: numerator sum a_ij phi_i(0) phi_j(z) = z^2/2, divided by z^2
    ASSERT_EQ(img.coordinates.size(), 1u);
    EXPECT_EQ(img.coordinates[0], q(1, 2));
    // the same class through the Hodge decomposition
    auto via_solver = gauss_rho(b, Q, b.schiffer(q(0), 1, kRadius), 1);
    EXPECT_EQ(via_solver.coordinates, img.coordinates);
}

TEST(P1RhoSchiffer, ZeroAndLinear)
{
    Backend b(4);
    auto rs = relation_space(b, 2);
    SymmetricTensor<GR> zero(5, 2);
    EXPECT_TRUE(rho_schiffer_exact(b, zero, q(2)).is_zero());
    auto Q = rs.basis[0] + q(3) * rs.basis[2];
    auto lhs = rho_schiffer_exact(b, Q, q(1, 3));
    auto a = rho_schiffer_exact(b, rs.basis[0], q(1, 3)).coordinates;
    auto c = rho_schiffer_exact(b, rs.basis[2], q(1, 3)).coordinates;
    for (std::size_t n = 0; n < a.size(); ++n)
        EXPECT_EQ(lhs.coordinates[n], a[n] + q(3) * c[n]);
}

TEST(P1RhoSchiffer, RejectsNonRelation)
{
    Backend b(2);
    SymmetricTensor<GR> Q(3, 2);
    Q.set_monomial({1, 0, 1}, q(1));
    // x0x2 at P = 1: (z^2 + 1)/2 is not divisible by (z-1)^2
    EXPECT_THROW(rho_schiffer_exact(b, Q, q(1)), std::domain_error);
}

TEST(P1PairSchiffer, Examples)
{
    EXPECT_EQ(pair_schiffer(q(3), RatFun(q(1))), q(1));
    EXPECT_EQ(pair_schiffer(q(2), RatFun(Poly::monomial(1))), q(2));
    EXPECT_THROW(pair_schiffer(q(2), RatFun::pole(q(2), 1)), std::domain_error);

    Backend b(2);
    auto img = rho_schiffer_exact(b, quadric_x0x2_minus_x1sq(3), q(0));
    auto xi = b.schiffer(q(0), 1, kRadius);
    // residue pairing and the direct evaluation agree
    EXPECT_EQ(b.pair(xi, img), pair_schiffer(q(0), RatFun(Poly(img.coordinates))));
    EXPECT_EQ(b.pair(xi, img), q(1, 2));
}

TEST(P1Properties, OrderTwoVanishingAndRegularityAtInfinity)
{
    const std::vector<GR> points = {q(0), q(1), q(-1), q(2), q(1, 2), GR::i(), GR(Rational(1), Rational(-2, 3))};
    for (int d = 2; d <= 6; ++d) {
        Backend b(d);
        auto rs = relation_space(b, 2);
        ASSERT_EQ(rs.dimension(), d * (d - 1) / 2);
        for (const auto& Q : rs.basis)
            for (const auto& P : points) {
                GaussImage<GR> img;
                ASSERT_NO_THROW(img = rho_schiffer_exact(b, Q, P));
                EXPECT_EQ(static_cast<int>(img.coordinates.size()), d - 1); // H0(O(d-2))
            }
    }
}

TEST(P1Properties, BasisIndependence)
{
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> num(-3, 3);
    for (int d = 2; d <= 4; ++d) {
        const int r = d + 1;
        std::vector<std::vector<GR>> B;
        do {
            B.assign(r, std::vector<GR>(r));
            for (auto& row : B)
                for (auto& x : row)
                    x = GR(Rational(num(rng), 1 + (num(rng) + 3) % 3), Rational(num(rng)));
            exact::ExactMatrix m(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    m(i, j) = B[i][j];
            if (exact::exact_rank(m) == r)
                break;
        } while (true);
        // psi_i = sum_j B_ij z^j; z^i = sum_j A_ij psi_j with A = B^{-1}
        std::vector<Poly> psi;
        for (int i = 0; i < r; ++i) {
            Poly p;
            for (int j = 0; j < r; ++j)
                p += Poly::monomial(j, B[i][j]);
            psi.push_back(p);
        }
        auto A = inverse(B);
        Backend std_b(d), new_b(d, psi);
        auto rs = relation_space(std_b, 2);
        for (const auto& Q : rs.basis) {
            std::map<Tuple, GR> entries;
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    GR acc;
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < r; ++j)
                            acc += Q.entry({i, j}) * A[i][k] * A[j][l];
                    entries[{k, l}] = acc;
                }
            auto Qn = SymmetricTensor<GR>::from_entries(r, 2, entries);
            EXPECT_TRUE(new_b.relation_value(Qn).is_zero());
            for (GR P : {q(0), q(2, 3), GR::i()}) {
                auto xi = std_b.schiffer(P, 1, kRadius);
                EXPECT_EQ(gauss_rho(std_b, Q, xi, 1).coordinates, gauss_rho(new_b, Qn, xi, 1).coordinates);
                EXPECT_EQ(rho_schiffer_exact(std_b, Q, P).coordinates, rho_schiffer_exact(new_b, Qn, P).coordinates);
                EXPECT_EQ(wahl_value(std_b, Q, P), wahl_value(new_b, Qn, P));
            }
        }
    }
}

TEST(P1Properties, SymmetryOfPairing)
{
    Backend b(3);
    auto rs = relation_space(b, 2);
    ASSERT_EQ(rs.dimension(), 3);
    const std::vector<GR> pts = {q(0), q(1), q(-2), GR(Rational(1, 2), Rational(1)), q(5, 3)};
    for (const auto& Q : rs.basis)
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                auto [a, c] = symmetry_pair(b, Q, b.schiffer(pts[i], 1, kRadius), b.schiffer(pts[j], 1, kRadius));
                EXPECT_EQ(a, c);
            }
}

TEST(P1Schiffer, Preconditions)
{
    Backend b(1);
    EXPECT_THROW(b.schiffer(q(0), 1, kRadius), std::invalid_argument); // md < 2
    Backend b2(2);
    EXPECT_THROW(b2.schiffer(q(0), 0, kRadius), std::invalid_argument);
    EXPECT_NO_THROW(b2.schiffer(q(0), 1, kRadius));
    // overlapping bumps are rejected during decomposition
    auto xi = add(b2.schiffer(q(0), 1, kRadius), b2.schiffer(q(1, 4), 1, kRadius));
    EXPECT_THROW(gauss_rho(b2, relation_space(b2, 2).basis[0], xi, 1), std::invalid_argument);
}
