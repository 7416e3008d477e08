#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hodgegauss/cli/commands.hpp"

namespace hg = hodgegauss::cli;
namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config;
    std::string backend, tau, point, bump_radius, out, suite;
    int degree = 0, k = 0, m = 0, q = 0, component = 0;
    unsigned seed = 0;
    std::vector<int> grid, E, F;
    std::vector<double> character;
    std::vector<std::string> points, tolerances;
    bool with_time = false;
    std::string report_file;
};

void add_common(CLI::App* sub, Flags& f, std::vector<std::pair<CLI::Option*, std::string>>& opts)
{
    auto add = [&](CLI::Option* o, const std::string& key) { opts.emplace_back(o, key); };
    sub->add_option("--config,-c", f.config, "YAML run configuration");
    add(sub->add_option("--backend", f.backend, "p1 or torus"), "backend");
    add(sub->add_option("--degree,-d", f.degree, "degree d of L"), "degree");
    add(sub->add_option("--k", f.k, "relation degree k"), "k");
    add(sub->add_option("--m", f.m, "twist m, 0 < m <= k"), "m");
    add(sub->add_option("--tau", f.tau, "modulus a+bi, Im > 0"), "tau");
    add(sub->add_option("--grid,-N", f.grid, "grid size(s), comma separated")->delimiter(','), "grid");
    add(sub->add_option("--character", f.character, "flat character chi1,chi2")->delimiter(',')->expected(2), "character");
    add(sub->add_option("--points", f.points, "sample points, comma separated complex literals")->delimiter(','),
        "points");
    add(sub->add_option("--point", f.point, "single point for rho / pair"), "point");
    add(sub->add_option("--bump-radius", f.bump_radius, "Schiffer bump radius"), "bump_radius");
    add(sub->add_option("--tol", f.tolerances, "tolerance override name=value (repeatable)"), "tolerances");
    add(sub->add_option("--out,-o", f.out, "output directory"), "output");
    add(sub->add_option("--q", f.q, "index of the relation in the computed basis"), "q");
    add(sub->add_option("--seed", f.seed, "seed for random perturbations"), "seed");
    add(sub->add_option("--E", f.E, "degrees of the summands of E")->delimiter(','), "E");
    add(sub->add_option("--F", f.F, "degrees of the summands of F")->delimiter(','), "F");
    add(sub->add_option("--component", f.component, "summand of E carrying the Schiffer class"), "component");
    add(sub->add_flag("--with-time", f.with_time, "record wall time in the JSON"), "with_time");
}

hg::RunConfig build_config(const Flags& f, const std::vector<std::pair<CLI::Option*, std::string>>& opts)
{
    hg::RunConfig c = f.config.empty() ? hg::RunConfig{} : hg::load_config_file(f.config);
    for (const auto& [o, key] : opts) {
        if (o->count() == 0)
            continue;
        if (key == "backend")
            c.backend = f.backend;
        else if (key == "degree")
            c.degree = f.degree;
        else if (key == "k")
            c.k = f.k;
        else if (key == "m")
            c.m = f.m;
        else if (key == "tau")
            c.tau = f.tau;
        else if (key == "grid")
            c.grid = f.grid;
        else if (key == "character")
            c.character = {f.character.at(0), f.character.at(1)};
        else if (key == "points")
            c.points = f.points;
        else if (key == "point")
            c.point = f.point;
        else if (key == "bump_radius")
            c.bump_radius = f.bump_radius;
        else if (key == "tolerances")
            for (const auto& t : f.tolerances)
                hg::apply_tolerance_override(c.tolerances, t);
        else if (key == "output")
            c.output = f.out;
        else if (key == "q")
            c.q = f.q;
        else if (key == "seed")
            c.seed = f.seed;
        else if (key == "E")
            c.E = f.E;
        else if (key == "F")
            c.F = f.F;
        else if (key == "component")
            c.component = f.component;
        else if (key == "with_time")
            c.with_time = f.with_time;
    }
    return c;
}

void write_outcome(const hg::Outcome& o, const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw hg::ConfigError("config: output directory '" + dir + "' cannot be created: " + ec.message());
    const fs::path json_path = fs::path(dir) / (o.name + ".json");
    std::ofstream js(json_path, std::ios::binary);
    js << o.doc.dump(2) << "\n";
    if (!js)
        throw hg::ConfigError("config: cannot write '" + json_path.string() + "'");
    std::cout << o.text << "wrote " << json_path.string() << "\n";
    if (!o.csv.empty()) {
        const fs::path csv_path = fs::path(dir) / (o.name + ".csv");
        std::ofstream cs(csv_path, std::ios::binary);
        cs << o.csv;
        std::cout << "wrote " << csv_path.string() << "\n";
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hodge-Gaussian maps: relation spaces, Wahl maps, rho and verification suites"};
    app.require_subcommand(1);
    Flags f;
    std::vector<std::pair<CLI::Option*, std::string>> opts;

    struct Cmd {
        const char* name;
        const char* help;
        CLI::App* app = nullptr;
    };
    std::vector<Cmd> cmds = {{"ik", "relation space I_k(L)"},
                             {"wahl", "Wahl map mu_2 of a quadric relation"},
                             {"rho", "Hodge-Gaussian image of a Schiffer class"},
                             {"pair", "R_2(E, F) for split bundles on P^1 and its rho"},
                             {"verify", "run verification suites"}};
    for (auto& c : cmds) {
        c.app = app.add_subcommand(c.name, c.help);
        std::vector<std::pair<CLI::Option*, std::string>> sub_opts;
        add_common(c.app, f, sub_opts);
        if (std::string(c.name) == "verify")
            sub_opts.emplace_back(c.app->add_option("--suite", f.suite,
                                                    "lift | twisted | welldefined | closedness | symmetry | "
                                                    "convergence | crosspath | equivalence | dimensions | all"),
                                  "suite");
        opts.insert(opts.end(), sub_opts.begin(), sub_opts.end());
    }
    auto* report = app.add_subcommand("report", "pretty-print a JSON report");
    report->add_option("file", f.report_file, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (report->parsed()) {
            auto o = hg::cmd_report(f.report_file);
            std::cout << o.text;
            return o.exit;
        }
        // only the options of the parsed subcommand have a count
        std::vector<std::pair<CLI::Option*, std::string>> active;
        for (auto& [o, key] : opts)
            if (o->count() > 0)
                active.emplace_back(o, key);
        // --suite is stored separately from the common keys
        hg::RunConfig cfg = build_config(f, active);
        for (auto& [o, key] : active)
            if (key == "suite")
                cfg.suite = f.suite;
        hg::Resolved r = hg::resolve(cfg);

        hg::Outcome o;
        for (auto& c : cmds) {
            if (!c.app->parsed())
                continue;
            const std::string n = c.name;
            o = n == "ik" ? hg::cmd_ik(r)
                : n == "wahl" ? hg::cmd_wahl(r)
                : n == "rho"  ? hg::cmd_rho(r)
                : n == "pair" ? hg::cmd_pair(r)
                              : hg::cmd_verify(r);
        }
        write_outcome(o, r.cfg.output);
        return o.exit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
