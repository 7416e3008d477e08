#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hodgegauss/core/gauss.hpp"
#include "hodgegauss/p1/backend.hpp"
#include "hodgegauss/p1/pair_relations.hpp"
#include "hodgegauss/torus/backend.hpp"

using namespace hodgegauss;
using GR = exact::GaussianRational;
using exact::Rational;

namespace {

GR q(std::int64_t p, std::int64_t d = 1) { return GR::ratio(p, d); }
const Rational kRadius(1, 8);

SymmetricTensor<GR> random_combination(const RelationSpace<GR>& rs, std::mt19937& rng)
{
    std::uniform_int_distribution<int> c(-4, 4);
    SymmetricTensor<GR> Q(rs.r, rs.k);
    for (const auto& b : rs.basis)
        Q += GR(Rational(c(rng), 1 + (c(rng) + 4) % 3), Rational(c(rng))) * b;
    return Q;
}

// Oracle: naive rank over the field (Gauss-Jordan, no fraction-free tricks).
int naive_rank(std::vector<std::vector<GR>> a)
{
    int rank = 0;
    const int R = static_cast<int>(a.size()), C = R ? static_cast<int>(a[0].size()) : 0;
    for (int c = 0; c < C && rank < R; ++c) {
        int p = rank;
        while (p < R && a[p][c].is_zero())
            ++p;
        if (p == R)
            continue;
        std::swap(a[rank], a[p]);
        for (int i = 0; i < R; ++i)
            if (i != rank && !a[i][c].is_zero()) {
                GR f = a[i][c] / a[rank][c];
                for (int j = c; j < C; ++j)
                    a[i][j] -= f * a[rank][j];
            }
        ++rank;
    }
    return rank;
}

// Oracle for dim R2: conditions G(t,t) = 0 and dG/dw(t,t) = 0 imposed by point
// evaluation at a+b+1 distinct integers t per component pair, rank by naive elimination.
int r2_dimension_by_evaluation(const p1::SplitBundle& E, const p1::SplitBundle& F)
{
    const int nE = E.h0(), nF = F.h0();
    std::vector<std::vector<GR>> rows;
    for (int c = 0; c < E.rank(); ++c)
        for (int cp = 0; cp < F.rank(); ++cp) {
            int s = E.degrees[c] + F.degrees[cp];
            for (int t = 0; t <= s; ++t) {
                std::vector<GR> val(nE * nF), der(nE * nF);
                GR T = q(t + 1);
                for (int i = 0; i < nE; ++i)
                    for (int j = 0; j < nF; ++j) {
                        auto [ci, p] = E.section(i);
                        auto [cj, e] = F.section(j);
                        if (ci != c || cj != cp)
                            continue;
                        GR tp(1), te(1), te1(1);
                        for (int k = 0; k < p; ++k)
                            tp *= T;
                        for (int k = 0; k < e; ++k)
                            te *= T;
                        for (int k = 0; k + 1 < e; ++k)
                            te1 *= T;
                        val[i * nF + j] = tp * te;
                        der[i * nF + j] = e > 0 ? tp * te1 * q(e) : GR();
                    }
                rows.push_back(val);
                rows.push_back(der);
            }
        }
    return nE * nF - naive_rank(rows);
}

p1::PairTensor as_pair_tensor(const SymmetricTensor<GR>& Q)
{
    p1::PairTensor t(Q.rank(), std::vector<GR>(Q.rank()));
    for (int i = 0; i < Q.rank(); ++i)
        for (int j = 0; j < Q.rank(); ++j)
            t[i][j] = Q.entry({i, j});
    return t;
}

} // namespace

TEST(RelationSpace, P1DimensionsMatchCounts)
{
    for (int d = 0; d <= 6; ++d) {
        p1::Backend b(d);
        auto rs = relation_space(b, 2);
        // oracle: number of monomials z^i z^j (i <= j) minus the distinct degrees i + j
        std::set<int> degrees;
        int pairs = 0;
        for (int i = 0; i <= d; ++i)
            for (int j = i; j <= d; ++j) {
                ++pairs;
                degrees.insert(i + j);
            }
        EXPECT_EQ(rs.dimension(), pairs - static_cast<int>(degrees.size()));
        EXPECT_EQ(rs.dimension(), d * (d - 1) / 2);
        for (const auto& Q : rs.basis)
            EXPECT_TRUE(b.relation_value(Q).is_zero());
    }
    p1::Backend b2(2);
    auto rs = relation_space(b2, 2);
    ASSERT_EQ(rs.dimension(), 1);
    // x0x2 - x1^2 up to the normalization of the first nonzero entry
    EXPECT_EQ(rs.basis[0].monomial({1, 0, 1}), q(1));
    EXPECT_EQ(rs.basis[0].monomial({0, 2, 0}), q(-1));
}

TEST(RelationSpace, HigherOrderP1)
{
    for (int d = 1; d <= 4; ++d)
        for (int k = 2; k <= 4; ++k) {
            p1::Backend b(d);
            auto rs = relation_space(b, k);
            // oracle: C(d+k, k) monomials minus h0(O(kd)) = kd + 1 (multiplication is onto)
            std::int64_t monomials = factorial(d + k) / (factorial(k) * factorial(d));
            EXPECT_EQ(rs.dimension(), monomials - (k * d + 1));
            for (const auto& Q : rs.basis)
                EXPECT_TRUE(b.relation_value(Q).is_zero());
        }
    EXPECT_THROW(relation_space(p1::Backend(2), 0), std::invalid_argument);
}

TEST(RelationSpace, TensorsAreSymmetric)
{
    p1::Backend b(3);
    for (const auto& Q : relation_space(b, 3).basis) {
        std::map<Tuple, GR> entries;
        for (const auto& J : all_tuples(4, 3))
            entries[J] = Q.entry(J);
        EXPECT_EQ(SymmetricTensor<GR>::from_entries(4, 3, entries), Q);
    }
}

TEST(RelationSpace, TorusDimensions)
{
    for (int d = 3; d <= 5; ++d) {
        torus::Backend b(torus::Geometry{{0.0, 1.0}, 128}, d);
        auto rs = relation_space(b, 2);
        EXPECT_EQ(rs.dimension(), d * (d - 3) / 2) << "d=" << d;
        EXPECT_EQ(rs.dimension(), d * (d + 1) / 2 - 2 * d);
        EXPECT_GE(rs.diagnostics.gap_ratio, 1e3);
        for (const auto& Q : rs.basis)
            EXPECT_LT(b.relation_residual(Q), 1e-8);
    }
    torus::Backend b(torus::Geometry{{0.3, 1.1}, 128}, 4);
    EXPECT_EQ(relation_space(b, 2).dimension(), 2);
}

TEST(WahlMu2, Examples)
{
    p1::Backend b(2);
    auto Q = relation_space(b, 2).basis[0];
    auto w = wahl_mu2(b, Q);
    ASSERT_EQ(w.coordinates.size(), 1u);
    EXPECT_EQ(w.coordinates[0], q(1));
    EXPECT_TRUE(wahl_mu2(b, SymmetricTensor<GR>(3, 2)).coordinates[0].is_zero());
}

TEST(WahlMu2, LinearAndConsistentWithPointValues)
{
    std::mt19937 rng(4);
    for (int d = 2; d <= 5; ++d) {
        p1::Backend b(d);
        auto rs = relation_space(b, 2);
        auto Q1 = random_combination(rs, rng), Q2 = random_combination(rs, rng);
        GR s = q(3, 7), t(Rational(-2), Rational(1, 2));
        auto lhs = wahl_mu2(b, s * Q1 + t * Q2).coordinates;
        auto a = wahl_mu2(b, Q1).coordinates, c = wahl_mu2(b, Q2).coordinates;
        ASSERT_EQ(static_cast<int>(lhs.size()), 2 * d - 3); // H0(O(2d-4))
        for (std::size_t n = 0; n < lhs.size(); ++n)
            EXPECT_EQ(lhs[n], s * a[n] + t * c[n]);
        for (GR P : {q(0), q(2), GR::i(), q(-1, 3)})
            EXPECT_EQ(p1::Poly(a)(P), wahl_value(b, Q1, P));
    }
}

TEST(GaussRho, ZeroInputs)
{
    p1::Backend b(3);
    auto rs = relation_space(b, 2);
    auto xi = b.schiffer(q(1), 1, kRadius);
    EXPECT_TRUE(gauss_rho(b, SymmetricTensor<GR>(4, 2), xi, 1).is_zero());
    EXPECT_TRUE(gauss_rho(b, rs.basis[0], p1::Form01{-3, {}}, 1).is_zero());
    EXPECT_THROW(gauss_rho(b, rs.basis[0], xi, 0), std::invalid_argument);
    EXPECT_THROW(gauss_rho(b, rs.basis[0], xi, 3), std::invalid_argument);
}

TEST(GaussRho, SolverPathMatchesClosedFormExactly)
{
    const std::vector<GR> points = {q(0), q(1), q(-1), q(2), q(1, 2), GR::i()};
    for (int d = 2; d <= 6; ++d) {
        p1::Backend b(d);
        for (const auto& Q : relation_space(b, 2).basis)
            for (const auto& P : points)
                EXPECT_EQ(gauss_rho(b, Q, b.schiffer(P, 1, kRadius), 1).coordinates,
                          p1::rho_schiffer_exact(b, Q, P).coordinates);
    }
}

TEST(GaussRho, LinearInRelationAndClass)
{
    std::mt19937 rng(8);
    p1::Backend b(4);
    auto rs = relation_space(b, 2);
    auto Q1 = random_combination(rs, rng), Q2 = random_combination(rs, rng);
    auto x1 = b.schiffer(q(0), 1, kRadius), x2 = b.schiffer(q(1), 1, kRadius);
    GR s(Rational(2, 3), Rational(1)), t = q(-5);
    auto xi = p1::add(p1::scale(s, x1), p1::scale(t, x2));
    auto combo = gauss_rho(b, Q1, xi, 1).coordinates;
    auto a = gauss_rho(b, Q1, x1, 1).coordinates, c = gauss_rho(b, Q1, x2, 1).coordinates;
    for (std::size_t n = 0; n < combo.size(); ++n)
        EXPECT_EQ(combo[n], s * a[n] + t * c[n]);
    auto qsum = gauss_rho(b, s * Q1 + t * Q2, x1, 1).coordinates;
    auto c2 = gauss_rho(b, Q2, x1, 1).coordinates;
    for (std::size_t n = 0; n < qsum.size(); ++n)
        EXPECT_EQ(qsum[n], s * a[n] + t * c2[n]);
    // constants act linearly (the only nontrivial H^{s,t} action on curves)
    auto scaled = gauss_rho(b, Q1, p1::scale(s, x1), 1).coordinates;
    for (std::size_t n = 0; n < scaled.size(); ++n)
        EXPECT_EQ(scaled[n], s * a[n]);
}

TEST(GaussRho, DerivativeFormAgreesExactly)
{
    std::mt19937 rng(9);
    const std::vector<std::pair<int, int>> km = {{2, 1}, {3, 1}, {3, 2}, {4, 2}};
    for (int d = 2; d <= 4; ++d) {
        p1::Backend b(d);
        for (auto [k, m] : km) {
            auto rs = relation_space(b, k);
            if (rs.dimension() == 0)
                continue;
            // spanning set of H1(O(-md)): md - 1 Schiffer points
            std::vector<p1::Form01> classes;
            for (int p = 0; p < std::min(m * d - 1, 3); ++p)
                classes.push_back(b.schiffer(q(p, 1) + GR(Rational(0), Rational(p, 3)), m, kRadius));
            classes.push_back(p1::add(classes.front(), p1::scale(q(2), classes.back())));
            std::vector<SymmetricTensor<GR>> Qs(rs.basis.begin(), rs.basis.begin() + std::min(rs.dimension(), 3));
            Qs.push_back(random_combination(rs, rng));
            for (const auto& Q : Qs)
                for (const auto& xi : classes) {
                    auto lit = gauss_rho(b, Q, xi, m);
                    auto der = gauss_rho_derivative_form(b, Q, xi, m);
                    EXPECT_EQ(lit.coordinates, der.coordinates) << "d=" << d << " k=" << k << " m=" << m;
                }
        }
    }
}

TEST(GaussRho, DerivativeFormOnTorus)
{
    torus::Backend b(torus::Geometry{{0.0, 1.0}, 128}, 4);
    for (const auto& Q : relation_space(b, 2).basis) {
        auto xi = b.schiffer({0.5, 0.5}, 1);
        auto lit = gauss_rho(b, Q, xi, 1).coordinates;
        auto der = gauss_rho_derivative_form(b, Q, xi, 1).coordinates;
        double num = 0.0, den = 0.0;
        for (std::size_t n = 0; n < lit.size(); ++n) {
            num = std::max(num, std::abs(lit[n] - der[n]));
            den = std::max(den, std::abs(lit[n]));
        }
        EXPECT_LT(num / den, 1e-12);
    }
}

TEST(MultiIndex, MultinomialWeights)
{
    for (int r = 1; r <= 4; ++r)
        for (int m = 1; m <= 4; ++m) {
            std::map<Exponent, std::int64_t> count;
            for (const auto& T : all_tuples(r, m))
                ++count[exponent_of(T, r)];
            for (const auto& I : exponents(r, m))
                EXPECT_EQ(count[I], factorial(m) / exponent_factorial(I));
            EXPECT_EQ(count.size(), exponents(r, m).size());
        }
}

TEST(Symmetry, SamePointIsTriviallyEqual)
{
    p1::Backend b(3);
    auto Q = relation_space(b, 2).basis[1];
    auto xi = b.schiffer(q(2), 1, kRadius);
    auto [a, c] = symmetry_pair(b, Q, xi, xi);
    EXPECT_EQ(a, c);
}

TEST(Symmetry, TorusPairingsAgree)
{
    torus::Backend b(torus::Geometry{{0.0, 1.0}, 256}, 4);
    const torus::cplx P1(0.35, 0.6), P2(0.62, 0.38);
    for (const auto& Q : relation_space(b, 2).basis) {
        auto [a, c] = symmetry_pair(b, Q, b.schiffer(P1, 1), b.schiffer(P2, 1));
        EXPECT_LT(std::abs(a - c) / std::max(std::abs(a), std::abs(c)), 1e-6);
    }
}

TEST(PairRelations, Examples)
{
    p1::SplitBundle O2{{2}}, O0{{0}}, O1{{1}};
    auto R = p1::pair_relation_space(O2, O2);
    EXPECT_EQ(R.jet_rows, 9);
    EXPECT_EQ(R.dimension(), 9 - R.jet_rank);
    EXPECT_EQ(R.dimension(), 1);
    for (const auto& Q : relation_space(p1::Backend(2), 2).basis)
        EXPECT_TRUE(p1::in_pair_relation_space(O2, O2, as_pair_tensor(Q)));

    EXPECT_EQ(p1::pair_relation_space(O0, O0).dimension(), 0);

    // x0 (x) x1 - x1 (x) x0 vanishes on the diagonal but not to order 2
    p1::PairTensor anti = {{q(0), q(1)}, {q(-1), q(0)}};
    EXPECT_FALSE(p1::in_pair_relation_space(O1, O1, anti));
    auto m = p1::jet_matrix(O1, O1);
    std::vector<GR> v = {q(0), q(1), q(-1), q(0)};
    auto image = m.apply(v);
    // value rows (3) vanish, a first-derivative row does not
    for (int r = 0; r < 3; ++r)
        EXPECT_TRUE(image[r].is_zero());
    bool derivative_nonzero = false;
    for (int r = 3; r < m.rows(); ++r)
        derivative_nonzero = derivative_nonzero || !image[r].is_zero();
    EXPECT_TRUE(derivative_nonzero);
}

TEST(PairRelations, DimensionsMatchJetOracle)
{
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) {
            p1::SplitBundle E{{a}}, F{{b}};
            auto R = p1::pair_relation_space(E, F);
            EXPECT_EQ(R.dimension(), r2_dimension_by_evaluation(E, F)) << a << "," << b;
            EXPECT_EQ(R.dimension(), std::max(a - 1, 0) * std::max(b - 1, 0));
        }
    p1::SplitBundle E{{1, 2}}, F{{2, 3}};
    EXPECT_EQ(p1::pair_relation_space(E, F).dimension(), r2_dimension_by_evaluation(E, F));
}

TEST(RhoPair, ZeroAndLineBundleReduction)
{
    for (int d = 2; d <= 4; ++d) {
        p1::Backend b(d);
        p1::SplitBundle L{{d}};
        auto R = p1::pair_relation_space(L, L);
        p1::PairTensor zero(d + 1, std::vector<GR>(d + 1));
        p1::ComponentSchiffer xi{q(1, 2), 0, kRadius};
        auto z = p1::rho_pair(R, zero, xi);
        for (const auto& c : z[0])
            EXPECT_TRUE(c.is_zero());
        for (const auto& Q : relation_space(b, 2).basis) {
            auto viaPair = p1::rho_pair(R, as_pair_tensor(Q), xi);
            EXPECT_EQ(viaPair[0], gauss_rho(b, Q, b.schiffer(xi.point, 1, kRadius), 1).coordinates);
        }
    }
}

TEST(RhoPair, BilinearAndMatchesClosedForm)
{
    p1::SplitBundle E{{2, 3}}, F{{2, 2}};
    auto R = p1::pair_relation_space(E, F);
    ASSERT_GE(R.dimension(), 2);
    for (int comp = 0; comp < 2; ++comp)
        for (GR P : {q(0), q(3, 2), GR::i()}) {
            p1::ComponentSchiffer xi{P, comp, kRadius};
            for (const auto& A : R.basis)
                EXPECT_EQ(p1::rho_pair(R, A, xi), p1::rho_pair_exact(R, A, xi));
            GR s = q(4, 5);
            p1::PairTensor combo = R.basis[0];
            for (std::size_t i = 0; i < combo.size(); ++i)
                for (std::size_t j = 0; j < combo[i].size(); ++j)
                    combo[i][j] += s * R.basis[1][i][j];
            auto lhs = p1::rho_pair(R, combo, xi);
            auto a = p1::rho_pair(R, R.basis[0], xi), c = p1::rho_pair(R, R.basis[1], xi);
            for (std::size_t f = 0; f < lhs.size(); ++f)
                for (std::size_t n = 0; n < lhs[f].size(); ++n)
                    EXPECT_EQ(lhs[f][n], a[f][n] + s * c[f][n]);
        }
}
