#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "hodgegauss/exact/gaussian_rational.hpp"
#include "hodgegauss/torus/geometry.hpp"
#include "hodgegauss/verify/checks.hpp"
#include "hodgegauss/verify/report.hpp"

namespace hodgegauss::cli {

using verify::json;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string backend = "p1";
    int degree = 2;
    int k = 2;
    int m = 1;
    std::string tau = "0+1i";
    std::vector<int> grid = {256};
    std::array<double, 2> character = {0.0, 0.0};
    std::vector<std::string> points; // empty: backend defaults
    std::string bump_radius;         // empty: backend default
    verify::Tolerances tolerances;
    std::string output = "hodgegauss-out";
    std::string suite = "all";
    int q = 0;
    std::string point; // rho / pair; empty: first of `points`
    std::vector<int> E = {2};
    std::vector<int> F = {2};
    int component = 0;
    unsigned seed = 17;
    bool with_time = false;
};

// Everything parsed and checked against the backend's constraints.
struct Resolved {
    RunConfig cfg;
    torus::cplx tau;
    std::vector<exact::GaussianRational> p1_points;
    exact::Rational p1_radius;
    std::vector<torus::cplx> torus_points;
    double torus_radius = 0.0;
    bool points_given = false;
};

namespace detail {

template <class T>
T scalar(const YAML::Node& n, const std::string& key, const char* what)
{
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("config: '" + key + "' must be " + what);
    }
}

inline std::vector<int> int_list(const YAML::Node& n, const std::string& key)
{
    if (n.IsScalar())
        return {scalar<int>(n, key, "an integer or a list of integers")};
    if (!n.IsSequence())
        throw ConfigError("config: '" + key + "' must be an integer or a list of integers");
    std::vector<int> out;
    for (const auto& x : n)
        out.push_back(scalar<int>(x, key, "an integer or a list of integers"));
    return out;
}

inline std::vector<std::string> string_list(const YAML::Node& n, const std::string& key)
{
    if (n.IsScalar())
        return {n.as<std::string>()};
    if (!n.IsSequence())
        throw ConfigError("config: '" + key + "' must be a list of complex literals");
    std::vector<std::string> out;
    for (const auto& x : n)
        out.push_back(scalar<std::string>(x, key, "a list of complex literals"));
    return out;
}

inline void set_tolerance(verify::Tolerances& t, const std::string& name, double v)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ConfigError("config: tolerance '" + name + "' must be a positive finite number");
    if (name == "lift_spread")
        t.lift_spread = v;
    else if (name == "cross_path")
        t.cross_path = v;
    else if (name == "welldefined")
        t.welldefined = v;
    else if (name == "metric_scale")
        t.metric_scale = v;
    else if (name == "closedness")
        t.closedness = v;
    else if (name == "symmetry")
        t.symmetry = v;
    else if (name == "degenerate")
        t.degenerate = v;
    else if (name == "monotone_floor")
        t.monotone_floor = v;
    else
        throw ConfigError("config: unknown tolerance '" + name + "'");
}

} // namespace detail

// "name=value"
inline void apply_tolerance_override(verify::Tolerances& t, const std::string& spec)
{
    auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config: tolerance override '" + spec + "' must have the form name=value");
    double v;
    try {
        std::size_t used = 0;
        v = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1)
            throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("config: tolerance override '" + spec + "' has a non-numeric value");
    }
    detail::set_tolerance(t, spec.substr(0, eq), v);
}

inline void apply_yaml(RunConfig& c, const YAML::Node& root)
{
    if (!root || root.IsNull())
        return;
    if (!root.IsMap())
        throw ConfigError("config: top level must be a mapping of keys to values");
    using detail::scalar;
    for (const auto& kv : root) {
        const std::string key = kv.first.as<std::string>();
        const YAML::Node& v = kv.second;
        if (key == "backend")
            c.backend = scalar<std::string>(v, key, "a string");
        else if (key == "degree")
            c.degree = scalar<int>(v, key, "an integer");
        else if (key == "k")
            c.k = scalar<int>(v, key, "an integer");
        else if (key == "m")
            c.m = scalar<int>(v, key, "an integer");
        else if (key == "tau")
            c.tau = scalar<std::string>(v, key, "a complex literal a+bi");
        else if (key == "grid")
            c.grid = detail::int_list(v, key);
        else if (key == "character") {
            if (!v.IsSequence() || v.size() != 2)
                throw ConfigError("config: 'character' must be a pair [chi1, chi2]");
            c.character = {scalar<double>(v[0], key, "a pair of numbers"), scalar<double>(v[1], key, "a pair of numbers")};
        } else if (key == "points")
            c.points = detail::string_list(v, key);
        else if (key == "point")
            c.point = scalar<std::string>(v, key, "a complex literal");
        else if (key == "bump_radius")
            c.bump_radius = scalar<std::string>(v, key, "a number");
        else if (key == "tolerances") {
            if (!v.IsMap())
                throw ConfigError("config: 'tolerances' must be a mapping name: value");
            for (const auto& t : v)
                detail::set_tolerance(c.tolerances, t.first.as<std::string>(),
                                      scalar<double>(t.second, "tolerances." + t.first.as<std::string>(), "a number"));
        } else if (key == "output")
            c.output = scalar<std::string>(v, key, "a path");
        else if (key == "suite")
            c.suite = scalar<std::string>(v, key, "a suite name");
        else if (key == "q")
            c.q = scalar<int>(v, key, "an integer");
        else if (key == "seed")
            c.seed = scalar<unsigned>(v, key, "a non-negative integer");
        else if (key == "with_time")
            c.with_time = scalar<bool>(v, key, "true or false");
        else if (key == "pair") {
            if (!v.IsMap())
                throw ConfigError("config: 'pair' must be a mapping with E, F, component");
            for (const auto& p : v) {
                const std::string pk = p.first.as<std::string>();
                if (pk == "E")
                    c.E = detail::int_list(p.second, "pair.E");
                else if (pk == "F")
                    c.F = detail::int_list(p.second, "pair.F");
                else if (pk == "component")
                    c.component = scalar<int>(p.second, "pair.component", "an integer");
                else
                    throw ConfigError("config: unknown key 'pair." + pk + "'");
            }
        } else
            throw ConfigError("config: unknown key '" + key + "'");
    }
}

inline RunConfig load_config_file(const std::string& path)
{
    RunConfig c;
    YAML::Node root;
    try {
        root = YAML::LoadFile(path);
    } catch (const YAML::BadFile&) {
        throw ConfigError("config: cannot read file '" + path + "'");
    } catch (const YAML::ParserException& e) {
        throw ConfigError("config: '" + path + "' is not valid YAML: " + e.msg);
    }
    apply_yaml(c, root);
    return c;
}

inline const std::set<std::string>& suite_names()
{
    static const std::set<std::string> s{"lift",     "twisted",     "welldefined", "closedness", "symmetry",
                                         "convergence", "crosspath", "equivalence", "dimensions", "all"};
    return s;
}

inline Resolved resolve(const RunConfig& c)
{
    Resolved r;
    r.cfg = c;
    if (c.backend != "p1" && c.backend != "torus")
        throw ConfigError("config: backend must be 'p1' or 'torus', got '" + c.backend + "'");
    if (c.degree < 1)
        throw ConfigError("config: degree must be >= 1, got " + std::to_string(c.degree));
    if (c.k < 1)
        throw ConfigError("config: k must be >= 1, got " + std::to_string(c.k));
    if (c.m < 1 || c.m > c.k)
        throw ConfigError("config: m must satisfy 0 < m <= k, got m = " + std::to_string(c.m));
    if (c.q < 0)
        throw ConfigError("config: q (relation index) must be >= 0");
    if (!suite_names().count(c.suite))
        throw ConfigError("config: unknown suite '" + c.suite +
                          "' (lift, twisted, welldefined, closedness, symmetry, convergence, crosspath, equivalence, "
                          "dimensions, all)");
    for (int e : c.E)
        if (e < 0)
            throw ConfigError("config: pair.E degrees must be >= 0");
    for (int e : c.F)
        if (e < 0)
            throw ConfigError("config: pair.F degrees must be >= 0");
    if (c.E.empty() || c.F.empty())
        throw ConfigError("config: pair.E and pair.F need at least one summand");
    if (c.component < 0 || c.component >= static_cast<int>(c.E.size()))
        throw ConfigError("config: pair.component must index a summand of E");
    if (!std::isfinite(c.character[0]) || !std::isfinite(c.character[1]))
        throw ConfigError("config: character entries must be finite");

    r.points_given = !c.points.empty();
    if (c.backend == "p1") {
        if (c.character[0] != 0.0 || c.character[1] != 0.0)
            throw ConfigError("config: character must be [0, 0] on the p1 backend (flat twists live on the torus)");
        auto exact_point = [](const std::string& s) {
            try {
                return exact::parse_gaussian(s, false);
            } catch (const std::invalid_argument&) {
                throw ConfigError("config: p1 points must be exact rationals a+bi (integers or p/q), got '" + s + "'");
            }
        };
        for (const auto& s : c.points)
            r.p1_points.push_back(exact_point(s));
        if (r.p1_points.empty())
            r.p1_points = verify::default_p1_points();
        for (std::size_t i = 0; i < r.p1_points.size(); ++i)
            for (std::size_t j = i + 1; j < r.p1_points.size(); ++j)
                if (r.p1_points[i] == r.p1_points[j])
                    throw ConfigError("config: points must be distinct, '" + r.p1_points[i].str() + "' repeats");
        if (!c.point.empty())
            (void)exact_point(c.point);
        if (c.bump_radius.empty())
            r.p1_radius = verify::default_p1_radius();
        else {
            exact::GaussianRational g;
            try {
                g = exact::parse_gaussian(c.bump_radius, false);
            } catch (const std::invalid_argument&) {
                throw ConfigError("config: bump_radius must be an exact positive rational on p1, got '" +
                                  c.bump_radius + "'");
            }
            if (!g.is_real() || !(g.re() > 0))
                throw ConfigError("config: bump_radius must be an exact positive rational on p1, got '" +
                                  c.bump_radius + "'");
            r.p1_radius = g.re();
        }
        return r;
    }

    // torus
    try {
        r.tau = exact::parse_gaussian(c.tau).to_complex();
    } catch (const std::invalid_argument&) {
        throw ConfigError("config: tau must be a complex literal a+bi, got '" + c.tau + "'");
    }
    if (!(r.tau.imag() > 0.0))
        throw ConfigError("config: tau must have positive imaginary part, got '" + c.tau + "'");
    if (c.grid.empty())
        throw ConfigError("config: grid needs at least one N");
    for (int N : c.grid)
        if (N < 8 || (N & (N - 1)) != 0)
            throw ConfigError("config: grid N must be a power of two >= 8, got " + std::to_string(N));
    torus::Geometry g{r.tau, c.grid.front()};
    if (!c.bump_radius.empty()) {
        try {
            std::size_t used = 0;
            r.torus_radius = std::stod(c.bump_radius, &used);
            if (used != c.bump_radius.size())
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("config: bump_radius must be a number, got '" + c.bump_radius + "'");
        }
        if (!(r.torus_radius > 0.0))
            throw ConfigError("config: bump_radius must be positive");
    }
    auto torus_point = [&](const std::string& s) {
        torus::cplx z;
        try {
            z = exact::parse_gaussian(s).to_complex();
        } catch (const std::invalid_argument&) {
            throw ConfigError("config: torus point must be a complex literal a+bi, got '" + s + "'");
        }
        auto [x, y] = g.lattice(z);
        if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
            throw ConfigError("config: point " + s + " lies outside the open fundamental cell (lattice coordinates " +
                              verify::format_double(x) + ", " + verify::format_double(y) + ")");
        if (r.torus_radius > 0.0 && !(2.0 * r.torus_radius < g.chart_margin(z)))
            throw ConfigError("config: bump of radius " + c.bump_radius + " about " + s +
                              " touches the chart boundary (needs 2r < " + verify::format_double(g.chart_margin(z)) +
                              ")");
        return z;
    };
    for (const auto& s : c.points)
        r.torus_points.push_back(torus_point(s));
    if (r.torus_points.empty())
        r.torus_points = verify::default_torus_points(r.tau);
    if (!c.point.empty())
        (void)torus_point(c.point);
    return r;
}

inline json config_json(const RunConfig& c)
{
    json t = verify::tolerances_json(c.tolerances);
    return {{"backend", c.backend},
            {"degree", c.degree},
            {"k", c.k},
            {"m", c.m},
            {"tau", c.tau},
            {"grid", c.grid},
            {"character", {c.character[0], c.character[1]}},
            {"points", c.points},
            {"point", c.point},
            {"bump_radius", c.bump_radius},
            {"tolerances", t},
            {"suite", c.suite},
            {"q", c.q},
            {"seed", c.seed},
            {"pair", {{"E", c.E}, {"F", c.F}, {"component", c.component}}}};
}

} // namespace hodgegauss::cli
