#include <gtest/gtest.h>

#include <sstream>

#include "hodgegauss/verify/checks.hpp"

using namespace hodgegauss;
using namespace hodgegauss::verify;
using G = exact::GaussianRational;
using torus::cplx;

TEST(Report, StatusStringsAndExitCodes)
{
    EXPECT_STREQ(to_string(Status::pass), "PASS");
    EXPECT_STREQ(to_string(Status::fail), "FAIL");
    EXPECT_STREQ(to_string(Status::inconclusive), "INCONCLUSIVE");
    EXPECT_EQ(exit_code(Status::pass), 0);
    EXPECT_EQ(exit_code(Status::fail), 2);
    EXPECT_EQ(exit_code(Status::inconclusive), 3);
    EXPECT_EQ(combine(Status::pass, Status::inconclusive), Status::inconclusive);
    EXPECT_EQ(combine(Status::inconclusive, Status::fail), Status::fail);
    EXPECT_EQ(combine(Status::pass, Status::pass), Status::pass);
}

TEST(Report, JsonCarriesSchemaAndOptionalTime)
{
    VerificationReport r;
    r.check = "lift";
    r.backend = "p1";
    r.status = Status::pass;
    r.wall_seconds = 1.5;
    auto j = r.to_json();
    EXPECT_EQ(j["schema_version"], schema_version);
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_FALSE(j.contains("wall_seconds"));
    EXPECT_EQ(r.to_json(true)["wall_seconds"], 1.5);
    // key order is insertion order, so dumps are stable
    EXPECT_EQ(j.begin().key(), "schema_version");
}

TEST(Report, CsvQuoting)
{
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
    EXPECT_EQ(csv_field("cr\r"), "\"cr\r\"");

    VerificationReport r;
    r.rows.push_back({"lift", "p1", 3, 0, 1, "1+i", "ratio", "1/2"});
    r.rows.push_back({"lift", "torus", 4, 256, 0, "0.5,0.5", "ratio", "0.5+0i"});
    std::ostringstream os;
    write_csv(os, {r});
    EXPECT_EQ(os.str(), "check,backend,d,N,q_index,point,quantity,value\r\n"
                        "lift,p1,3,0,1,1+i,ratio,1/2\r\n"
                        "lift,torus,4,256,0,\"0.5,0.5\",ratio,0.5+0i\r\n");
}

TEST(Report, Formatting)
{
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_complex(cplx(0.5, -0.25)), "0.5-0.25i");
    EXPECT_EQ(format_complex(cplx(1.0, 0.0)), "1+0i");
}

TEST(Monotone, FloorSemantics)
{
    EXPECT_TRUE(non_increasing({1e-2, 1e-4, 1e-8}, 1e-13));
    EXPECT_FALSE(non_increasing({1e-2, 1e-4, 1e-3}, 1e-13));
    // round-off jitter below the floor is accepted
    EXPECT_TRUE(non_increasing({1e-2, 3e-14, 5e-14}, 1e-13));
    EXPECT_FALSE(non_increasing({1e-2, 3e-14, 5e-13}, 1e-13));
    EXPECT_TRUE(non_increasing({}, 1e-13));
}

TEST(VerifyP1, LiftConstantIsCommonAndEqualsOneHalf)
{
    for (int d : {2, 3, 4}) {
        auto r = lift_p1(p1::Backend(d), default_p1_points(), default_p1_radius());
        EXPECT_EQ(r.status, Status::pass) << d;
        EXPECT_EQ(r.measured["relation_dimension"], d * (d - 1) / 2);
        EXPECT_EQ(r.measured["constant"], "1/2");
        EXPECT_EQ(static_cast<int>(r.rows.size()), r.measured["cells_used"].get<int>());
    }
}

TEST(VerifyP1, LiftIsInconclusiveWhenRelationSpaceIsZero)
{
    auto r = lift_p1(p1::Backend(1), default_p1_points(), default_p1_radius());
    EXPECT_EQ(r.status, Status::inconclusive);
    ASSERT_FALSE(r.notes.empty());
    EXPECT_EQ(r.notes[0], "relation space is zero");
}

TEST(VerifyP1, LiftReportIsDeterministic)
{
    auto a = lift_p1(p1::Backend(3), default_p1_points(), default_p1_radius()).to_json().dump();
    auto b = lift_p1(p1::Backend(3), default_p1_points(), default_p1_radius()).to_json().dump();
    EXPECT_EQ(a, b);
}

TEST(VerifyP1, CrossPathWelldefinedSymmetry)
{
    p1::Backend b(3);
    auto pts = default_p1_points();
    EXPECT_EQ(cross_path_p1(b, pts, default_p1_radius()).status, Status::pass);
    auto w = welldefined_p1(b, pts, default_p1_radius());
    EXPECT_EQ(w.status, Status::pass);
    EXPECT_EQ(w.measured["perturbation_moves"], 0);
    EXPECT_EQ(w.measured["radius_moves"], 0);
    auto s = symmetry_p1(b, pts, default_p1_radius());
    EXPECT_EQ(s.status, Status::pass);
    EXPECT_EQ(s.measured["pairs"], 3 * 8 * 7 / 2);
}

TEST(VerifyP1, ClosednessIdentityDetectsNonRelations)
{
    p1::Backend b(2);
    // x0 x1 is not a relation: sum a_ST phi_S dphi_T = (1/2)(1 * 1 + z * 0) = 1/2
    SymmetricTensor<G> Q(3, 2);
    Q.set_monomial({1, 1, 0}, G(1));
    auto p = closedness_identity(b, Q, 1);
    EXPECT_EQ(p, p1::Poly(G::ratio(1, 2)));
    // x0 x2 - x1^2 is: phi = (1, z, z^2)
    SymmetricTensor<G> R(3, 2);
    R.set_monomial({1, 0, 1}, G(1));
    R.set_monomial({0, 2, 0}, G(-1));
    EXPECT_TRUE(closedness_identity(b, R, 1).is_zero());
}

TEST(VerifyP1, ClosednessEquivalenceDimensionsPass)
{
    EXPECT_EQ(closedness_p1({2, 3}, {2, 3}, G(1), default_p1_radius()).status, Status::pass);
    EXPECT_EQ(equivalence_p1({2, 3}, {{2, 1}, {3, 1}, {3, 2}}, {G(1)}, default_p1_radius()).status, Status::pass);
    auto dims = dimensions_p1({1, 2, 3, 4}, 3);
    EXPECT_EQ(dims.status, Status::pass);
    EXPECT_EQ(dims.measured["R2"].size(), 16u);
}

TEST(VerifyTorus, LiftConstantNearOneHalf)
{
    const cplx tau(0.0, 1.0);
    torus::Backend b(torus::Geometry{tau, 256}, 4);
    auto r = lift_torus(b, {default_torus_points(tau), 0.0}, Tolerances{});
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(r.measured["relation_dimension"], 2);
    auto c = r.measured["constant"];
    EXPECT_NEAR(c[0].get<double>(), 0.5, 1e-9);
    EXPECT_NEAR(c[1].get<double>(), 0.0, 1e-9);
    EXPECT_LT(r.measured["spread"].get<double>(), 1e-5);
}

TEST(VerifyTorus, LiftInconclusiveBelowDegreeFour)
{
    const cplx tau(0.0, 1.0);
    auto r = lift_torus(torus::Backend(torus::Geometry{tau, 64}, 3), {default_torus_points(tau), 0.0}, Tolerances{});
    EXPECT_EQ(r.status, Status::inconclusive);
}

TEST(VerifyTorus, TrivialCharacterReproducesUntwistedReport)
{
    const cplx tau(0.0, 1.0);
    TorusFixture f{default_torus_points(tau), 0.0};
    torus::Backend plain(torus::Geometry{tau, 128}, 4);
    torus::Backend trivial(torus::Geometry{tau, 128}, 4, torus::FlatCharacter{0.0, 0.0});
    auto a = lift_torus(plain, f, Tolerances{});
    auto b = lift_torus(trivial, f, Tolerances{}, 1);
    EXPECT_EQ(a.measured.dump(), b.measured.dump());
}

TEST(VerifyTorus, OppositeCharactersShareTheConstant)
{
    const cplx tau(0.0, 1.0);
    TorusFixture f{default_torus_points(tau), 0.0};
    auto plus = lift_torus(torus::Backend(torus::Geometry{tau, 256}, 4, {0.5, 0.0}), f, Tolerances{}, 1);
    auto minus = lift_torus(torus::Backend(torus::Geometry{tau, 256}, 4, {-0.5, 0.0}), f, Tolerances{}, 1);
    ASSERT_EQ(plus.status, Status::pass);
    ASSERT_EQ(minus.status, Status::pass);
    for (int k : {0, 1})
        EXPECT_NEAR(plus.measured["constant"][k].get<double>(), minus.measured["constant"][k].get<double>(), 1e-9);
}

TEST(VerifyTorus, ClosednessAtCentre)
{
    const cplx tau(0.0, 1.0);
    torus::Backend b(torus::Geometry{tau, 256}, 4);
    auto r = closedness_torus(b, {central_torus_points(tau), 0.0}, Tolerances{});
    EXPECT_EQ(r.status, Status::pass);
    EXPECT_EQ(r.measured["zero_input_residual"], 0.0);
}

TEST(VerifyTorus, ConvergenceRejectsUnsortedGrids)
{
    const cplx tau(0.0, 1.0);
    EXPECT_THROW(convergence_torus(tau, 4, {128, 64}, {}, default_torus_points(tau), 0.0, Tolerances{}),
                 std::invalid_argument);
}

TEST(VerifyTorus, ConvergenceIsMonotone)
{
    const cplx tau(0.0, 1.0);
    auto r = convergence_torus(tau, 4, {64, 128, 256}, {}, default_torus_points(tau), 0.0, Tolerances{});
    EXPECT_EQ(r.status, Status::pass);
    ASSERT_EQ(r.measured["table"].size(), 3u);
    // every lift spread in the table is at or below the one before it
    const auto& t = r.measured["table"];
    for (std::size_t i = 1; i < t.size(); ++i)
        EXPECT_LE(t[i]["lift_spread"].get<double>(), t[i - 1]["lift_spread"].get<double>());
}
