#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hodgegauss/cli/config.hpp"
#include "hodgegauss/core/gauss.hpp"
#include "hodgegauss/p1/backend.hpp"
#include "hodgegauss/p1/pair_relations.hpp"
#include "hodgegauss/torus/backend.hpp"
#include "hodgegauss/verify/checks.hpp"

namespace hodgegauss::cli {

using exact::GaussianRational;
using torus::cplx;
using verify::Status;
using verify::VerificationReport;

// What a command hands back to the driver: documents to write, text to print.
struct Outcome {
    std::string name; // file stem
    json doc;
    std::string text;
    std::string csv;
    int exit = 0;
};

namespace detail {

inline json header(const std::string& command, const RunConfig& c)
{
    return json{{"schema_version", verify::schema_version}, {"command", command}, {"config", config_json(c)}};
}

template <class S>
json tensor_json(const SymmetricTensor<S>& Q)
{
    json a = json::array();
    for (const auto& [e, c] : Q.monomials())
        a.push_back({{"exponent", e}, {"coefficient", verify::to_json(c)}});
    return a;
}

template <class S>
std::string scalar_text(const S& s)
{
    if constexpr (std::is_same_v<S, GaussianRational>)
        return s.str();
    else
        return verify::format_complex(s);
}

template <class S>
std::string vector_text(const std::vector<S>& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + scalar_text(v[i]);
    return out + "]";
}

template <class S>
const SymmetricTensor<S>& pick(const RelationSpace<S>& rs, int q)
{
    if (rs.dimension() == 0)
        throw std::invalid_argument("relation space is zero");
    if (q >= rs.dimension())
        throw ConfigError("config: q = " + std::to_string(q) + " is out of range, the relation space has dimension " +
                          std::to_string(rs.dimension()));
    return rs.basis[q];
}

inline torus::Backend torus_backend(const Resolved& r, int N)
{
    return torus::Backend(torus::Geometry{r.tau, N}, r.cfg.degree,
                          torus::FlatCharacter{r.cfg.character[0], r.cfg.character[1]});
}

inline GaussianRational p1_point(const Resolved& r)
{
    return r.cfg.point.empty() ? r.p1_points.front() : exact::parse_gaussian(r.cfg.point, false);
}

inline cplx torus_point(const Resolved& r)
{
    return r.cfg.point.empty() ? r.torus_points.front() : exact::parse_gaussian(r.cfg.point).to_complex();
}

template <class S>
json image_json(const GaussImage<S>& img)
{
    return {{"power", img.power},
            {"character", img.character},
            {"coordinates", verify::to_json(img.coordinates)},
            {"decomposition_residual", img.decomposition_residual},
            {"closedness_residual", img.closedness_residual},
            {"projection_residual", img.projection_residual}};
}

} // namespace detail

// ------------------------------------------------------------------ ik

template <class B>
void fill_ik(Outcome& o, const B& b, int k)
{
    auto rs = relation_space(b, k);
    o.doc["relation_dimension"] = rs.dimension();
    o.doc["provenance"] = rs.provenance;
    json basis = json::array();
    for (const auto& Q : rs.basis)
        basis.push_back(detail::tensor_json(Q));
    o.doc["basis"] = basis;
    if (!rs.diagnostics.singular_values.empty()) {
        o.doc["diagnostics"] = {{"rank", rs.diagnostics.rank},
                                {"rows", rs.diagnostics.rows},
                                {"cols", rs.diagnostics.cols},
                                {"singular_values", rs.diagnostics.singular_values},
                                {"gap_ratio", std::isfinite(rs.diagnostics.gap_ratio) ? json(rs.diagnostics.gap_ratio)
                                                                                      : json("inf")}};
    }
    o.text = "dim I_" + std::to_string(k) + " = " + std::to_string(rs.dimension()) + "  (" + b.name() +
             ", d = " + std::to_string(b.degree()) + ")\n";
}

inline Outcome cmd_ik(const Resolved& r)
{
    Outcome o{"ik", detail::header("ik", r.cfg), "", "", 0};
    if (r.cfg.backend == "p1")
        fill_ik(o, p1::Backend(r.cfg.degree), r.cfg.k);
    else
        fill_ik(o, detail::torus_backend(r, r.cfg.grid.front()), r.cfg.k);
    return o;
}

// ------------------------------------------------------------------ wahl

template <class B, class Pt>
void fill_wahl(Outcome& o, const B& b, int q, const std::vector<Pt>& points)
{
    auto rs = relation_space(b, 2);
    const auto& Q = detail::pick(rs, q);
    auto w = wahl_mu2(b, Q);
    o.doc["relation_dimension"] = rs.dimension();
    o.doc["q"] = q;
    o.doc["mu2"] = {{"coordinates", verify::to_json(w.coordinates)}};
    json vals = json::array();
    std::ostringstream t;
    t << "mu2(Q" << q << ") = " << detail::vector_text(w.coordinates) << "\n";
    for (const auto& P : points) {
        auto v = wahl_value(b, Q, P);
        vals.push_back({{"point", detail::scalar_text(P)}, {"value", verify::to_json(v)}});
        t << "v_P at " << detail::scalar_text(P) << " = " << detail::scalar_text(v) << "\n";
    }
    o.doc["values"] = vals;
    o.text = t.str();
}

inline Outcome cmd_wahl(const Resolved& r)
{
    if (r.cfg.k != 2)
        throw ConfigError("config: wahl needs k = 2, got k = " + std::to_string(r.cfg.k));
    Outcome o{"wahl", detail::header("wahl", r.cfg), "", "", 0};
    if (r.cfg.backend == "p1")
        fill_wahl(o, p1::Backend(r.cfg.degree), r.cfg.q, r.p1_points);
    else
        fill_wahl(o, detail::torus_backend(r, r.cfg.grid.front()), r.cfg.q, r.torus_points);
    return o;
}

// ------------------------------------------------------------------ rho

inline Outcome cmd_rho(const Resolved& r)
{
    Outcome o{"rho", detail::header("rho", r.cfg), "", "", 0};
    const int k = r.cfg.k, m = r.cfg.m;
    auto finish = [&](const auto& rs, const auto& img, const std::string& pt) {
        o.doc["relation_dimension"] = rs.dimension();
        o.doc["q"] = r.cfg.q;
        o.doc["point"] = pt;
        o.doc["image"] = detail::image_json(img);
        o.text = "rho(Q" + std::to_string(r.cfg.q) + ") at " + pt + " = " + detail::vector_text(img.coordinates) + "\n";
    };
    if (r.cfg.backend == "p1") {
        p1::Backend b(r.cfg.degree);
        auto rs = relation_space(b, k);
        const auto& Q = detail::pick(rs, r.cfg.q);
        auto P = detail::p1_point(r);
        finish(rs, gauss_rho(b, Q, b.schiffer(P, m, r.p1_radius), m), P.str());
    } else {
        auto b = detail::torus_backend(r, r.cfg.grid.front());
        auto rs = relation_space(b, k);
        const auto& Q = detail::pick(rs, r.cfg.q);
        auto P = detail::torus_point(r);
        finish(rs, gauss_rho(b, Q, b.schiffer(P, m, r.torus_radius), m), verify::format_complex(P));
    }
    return o;
}

// ------------------------------------------------------------------ pair (R_2(E, F) on P^1)

inline Outcome cmd_pair(const Resolved& r)
{
    if (r.cfg.backend != "p1")
        throw ConfigError("config: the pair command needs backend p1 (split bundles on the projective line)");
    Outcome o{"pair", detail::header("pair", r.cfg), "", "", 0};
    p1::SplitBundle E{r.cfg.E}, F{r.cfg.F};
    auto R = p1::pair_relation_space(E, F);
    o.doc["E"] = E.str();
    o.doc["F"] = F.str();
    o.doc["relation_dimension"] = R.dimension();
    o.doc["jet_rank"] = R.jet_rank;
    o.doc["jet_rows"] = R.jet_rows;
    json basis = json::array();
    for (const auto& a : R.basis) {
        json t = json::array();
        for (const auto& row : a)
            t.push_back(verify::to_json(row));
        basis.push_back(t);
    }
    o.doc["basis"] = basis;
    std::ostringstream t;
    t << "dim R2(" << E.str() << ", " << F.str() << ") = " << R.dimension() << "  (2-jet rank " << R.jet_rank
      << ")\n";
    if (R.dimension() > 0) {
        if (r.cfg.q >= R.dimension())
            throw ConfigError("config: q = " + std::to_string(r.cfg.q) +
                              " is out of range, the relation space has dimension " + std::to_string(R.dimension()));
        p1::ComponentSchiffer xi{detail::p1_point(r), r.cfg.component, r.p1_radius};
        auto solver = p1::rho_pair(R, R.basis[r.cfg.q], xi);
        auto closed = p1::rho_pair_exact(R, R.basis[r.cfg.q], xi);
        json comps = json::array();
        for (const auto& c : solver)
            comps.push_back(verify::to_json(c));
        o.doc["rho"] = {{"q", r.cfg.q},
                        {"point", xi.point.str()},
                        {"component", xi.component},
                        {"coordinates", comps},
                        {"closed_form_agrees", solver == closed}};
        for (std::size_t c = 0; c < solver.size(); ++c)
            t << "rho(a" << r.cfg.q << ") on O(" << F.degrees[c] << ") = " << detail::vector_text(solver[c]) << "\n";
    }
    o.text = t.str();
    return o;
}

// ------------------------------------------------------------------ verify

inline std::vector<std::string> selected_suites(const Resolved& r)
{
    if (r.cfg.suite != "all") {
        if (r.cfg.backend == "p1" && (r.cfg.suite == "twisted" || r.cfg.suite == "convergence"))
            throw ConfigError("config: suite '" + r.cfg.suite + "' needs backend torus");
        return {r.cfg.suite};
    }
    if (r.cfg.backend == "p1")
        return {"dimensions", "lift", "crosspath", "welldefined", "closedness", "symmetry", "equivalence"};
    return {"dimensions", "lift", "twisted", "crosspath", "welldefined", "closedness", "symmetry", "convergence"};
}

inline VerificationReport run_suite_p1(const Resolved& r, const std::string& s)
{
    const auto& c = r.cfg;
    p1::Backend b(c.degree);
    if (s == "lift")
        return verify::lift_p1(b, r.p1_points, r.p1_radius);
    if (s == "crosspath")
        return verify::cross_path_p1(b, r.p1_points, r.p1_radius);
    if (s == "welldefined")
        return verify::welldefined_p1(b, r.p1_points, r.p1_radius);
    if (s == "closedness") {
        std::vector<int> ks;
        for (int k = 2; k <= std::max(2, c.k); ++k)
            ks.push_back(k);
        return verify::closedness_p1({c.degree}, ks, r.p1_points.front(), r.p1_radius);
    }
    if (s == "symmetry")
        return verify::symmetry_p1(b, r.p1_points, r.p1_radius);
    if (s == "equivalence") {
        std::vector<GaussianRational> pts(r.p1_points.begin(),
                                          r.p1_points.begin() + std::min<std::size_t>(3, r.p1_points.size()));
        return verify::equivalence_p1({c.degree}, {{2, 1}, {3, 1}, {3, 2}, {4, 2}}, pts, r.p1_radius);
    }
    std::vector<int> ds;
    for (int d = 1; d <= std::max(6, c.degree); ++d)
        ds.push_back(d);
    return verify::dimensions_p1(ds, 3);
}

inline VerificationReport run_suite_torus(const Resolved& r, const std::string& s)
{
    const auto& c = r.cfg;
    const verify::Tolerances& tol = c.tolerances;
    verify::TorusFixture f{r.torus_points, r.torus_radius};
    if (s == "convergence") {
        std::vector<int> Ns = c.grid.size() >= 2 ? c.grid : std::vector<int>{64, 128, 256, 512};
        return verify::convergence_torus(r.tau, c.degree, Ns, torus::FlatCharacter{c.character[0], c.character[1]},
                                         r.torus_points, r.torus_radius, tol);
    }
    if (s == "dimensions") {
        std::vector<int> ds{3, 4, 5};
        if (c.degree > 5)
            ds.push_back(c.degree);
        return verify::dimensions_torus(r.tau, c.grid.front(), ds);
    }
    auto b = detail::torus_backend(r, c.grid.front());
    if (s == "twisted") {
        auto rep = verify::lift_torus(b, f, tol, 1);
        if (b.character().trivial())
            rep.notes.push_back("character is trivial: the twisted suite reduces to the untwisted lift");
        return rep;
    }
    // the remaining suites use the untwisted bundle
    auto plain = b.with_character({});
    if (s == "lift")
        return verify::lift_torus(plain, f, tol);
    if (s == "crosspath")
        return verify::cross_path_torus(plain, f, tol);
    if (s == "welldefined")
        return verify::welldefined_torus(plain, f, tol, c.seed);
    if (s == "closedness")
        return verify::closedness_torus(
            plain, {r.points_given ? r.torus_points : verify::central_torus_points(r.tau), r.torus_radius}, tol);
    if (s == "symmetry")
        return verify::symmetry_torus(plain, f, tol);
    throw ConfigError("config: suite '" + s + "' is not available on the torus backend");
}

inline Outcome cmd_verify(const Resolved& r)
{
    Outcome o{"verify", detail::header("verify", r.cfg), "", "", 0};
    std::vector<VerificationReport> reports;
    Status overall = Status::pass;
    json arr = json::array();
    std::ostringstream t;
    for (const auto& s : selected_suites(r)) {
        auto rep = verify::timed([&] {
            return r.cfg.backend == "p1" ? run_suite_p1(r, s) : run_suite_torus(r, s);
        });
        overall = verify::combine(overall, rep.status);
        arr.push_back(rep.to_json(r.cfg.with_time));
        t << verify::to_string(rep.status) << "  " << rep.check << " (" << rep.backend << ")";
        if (rep.measured.contains("constant")) {
            const auto& cst = rep.measured["constant"];
            t << "  constant " << (cst.is_string() ? cst.get<std::string>() : cst.dump());
        }
        if (rep.measured.contains("spread"))
            t << "  spread " << verify::format_double(rep.measured["spread"].get<double>());
        t << "\n";
        for (const auto& n : rep.notes)
            t << "    note: " << n << "\n";
        reports.push_back(std::move(rep));
    }
    o.doc["status"] = verify::to_string(overall);
    o.doc["reports"] = arr;
    std::ostringstream csv;
    verify::write_csv(csv, reports);
    o.csv = csv.str();
    t << "overall " << verify::to_string(overall) << "\n";
    o.text = t.str();
    o.exit = verify::exit_code(overall);
    return o;
}

// ------------------------------------------------------------------ report

inline Outcome cmd_report(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("report: cannot read file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("report: '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("schema_version"))
        throw ConfigError("report: '" + path + "' has no schema_version field");
    if (doc["schema_version"] != verify::schema_version)
        throw ConfigError("report: schema_version " + doc["schema_version"].dump() + " is not supported (expected " +
                          std::to_string(verify::schema_version) + ")");
    Outcome o{"", doc, "", "", 0};
    std::ostringstream t;
    t << "command: " << doc.value("command", std::string("?")) << "\n";
    if (doc.contains("reports")) {
        Status overall = Status::pass;
        for (const auto& rep : doc["reports"]) {
            const std::string st = rep.value("status", std::string("INCONCLUSIVE"));
            Status s = st == "PASS" ? Status::pass : st == "FAIL" ? Status::fail : Status::inconclusive;
            overall = verify::combine(overall, s);
            t << st << "  " << rep.value("check", std::string("?")) << " (" << rep.value("backend", std::string("?"))
              << ")\n";
            for (const auto& [key, val] : rep["measured"].items())
                if (!val.is_array() || val.size() <= 4)
                    t << "    " << key << ": " << val.dump() << "\n";
        }
        t << "overall " << verify::to_string(overall) << "\n";
        o.exit = verify::exit_code(overall);
    } else {
        t << doc.dump(2) << "\n";
    }
    o.text = t.str();
    return o;
}

} // namespace hodgegauss::cli
