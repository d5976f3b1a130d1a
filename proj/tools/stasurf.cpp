#include "stasurf/analysis.hpp"
#include "stasurf/errors.hpp"
#include "stasurf/gallery.hpp"
#include "stasurf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace stasurf;
using nlohmann::ordered_json;

namespace {

struct Flags {
    std::string grid, window, loops, targets, format = "json", out;
    std::optional<double> tol;
    bool count_omitted = false;
    bool serial = false;
};

RunOptions options(const Flags& f) {
    RunOptions o;
    if (!f.grid.empty())
        o.grid_size = parse_grid_size(f.grid);
    if (!f.window.empty())
        o.window = parse_window(f.window);
    if (!f.loops.empty()) {
        ordered_json j;
        try {
            j = ordered_json::parse(f.loops);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("--loops: ") + e.what());
        }
        if (!j.is_array())
            throw ParseError("--loops: expected a JSON array");
        std::vector<Contour> loops;
        for (std::size_t i = 0; i < j.size(); ++i)
            loops.push_back(parse_loop(j[i], "--loops/" + std::to_string(i)));
        o.loops = loops;
    }
    if (!f.targets.empty())
        o.targets = parse_point_list(f.targets);
    if (f.tol) {
        if (!(*f.tol > 0.0))
            throw ParseError("--tol: must be positive");
        o.tol = f.tol;
    }
    o.count_omitted = f.count_omitted;
    o.exec = f.serial ? Exec::Serial : Exec::Parallel;
    return o;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os)
        throw ParseError(out + ": cannot write");
    os << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* c, Flags& f) {
    c->add_option("--grid", f.grid, "grid size NxM");
    c->add_option("--domain-window", f.window, "rectangle u0,u1,v0,v1");
    c->add_option("--out", f.out, "output path (default: stdout)");
    c->add_flag("--serial", f.serial, "run the serial reference kernels");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Space-like stationary surfaces in R^{3,1}: construction and audits"};
    app.require_subcommand(1);
    Flags f;
    std::string config, config2, gallery_dir = "gallery-out";

    auto* an = app.add_subcommand("analyze", "run regularity, period, E_f and value-distribution checks");
    an->add_option("config", config, "surface config (JSON)")->required();
    add_common(an, f);
    an->add_option("--loops", f.loops, "JSON array of loops for the period check");
    an->add_option("--targets", f.targets, "comma-separated target values, e.g. 0,1,-1,inf");
    an->add_option("--tol", f.tol, "period residual tolerance");

    auto* sa = app.add_subcommand("sample", "sample the surface on a grid");
    sa->add_option("config", config, "surface config (JSON)")->required();
    add_common(sa, f);
    sa->add_option("--format", f.format, "csv, obj or json")->check(CLI::IsMember({"csv", "obj", "json"}));

    auto* sh = app.add_subcommand("share", "shared values of two surfaces on one parameter domain");
    sh->add_option("config", config, "first surface config")->required();
    sh->add_option("config2", config2, "second surface config")->required();
    sh->add_option("--out", f.out, "output path (default: stdout)");
    sh->add_flag("--count-omitted", f.count_omitted, "count values omitted by both as shared");

    auto* ga = app.add_subcommand("gallery", "shipped example surfaces");
    ga->require_subcommand(1);
    auto* gl = ga->add_subcommand("list", "list the entries");
    auto* gr = ga->add_subcommand("run", "analyze and sample every entry, run the shipped probes");
    gr->add_option("--out", gallery_dir, "output directory");
    gr->add_flag("--serial", f.serial, "run the serial reference kernels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (an->parsed()) {
            const RunResult r = analyze(load_config(config), options(f));
            emit(dump(r.report), f.out);
            return r.exit_code;
        }
        if (sa->parsed()) {
            const SampleResult s = sample(load_config(config), options(f));
            for (const auto& w : s.warnings)
                std::cerr << "warning: " << w << "\n";
            std::ostringstream os;
            if (f.format == "csv")
                write_csv(os, s.mesh);
            else if (f.format == "obj")
                write_obj(os, s.mesh);
            else
                os << dump({{"samples", to_json(s.mesh)}, {"skipped", to_json(s.mesh.skipped)}});
            emit(os.str(), f.out);
            return kExitOk;
        }
        if (sh->parsed()) {
            const RunResult r = share(load_config(config), load_config(config2), options(f));
            emit(dump(r.report), f.out);
            return r.exit_code;
        }
        if (gl->parsed()) {
            for (const auto& e : gallery())
                std::cout << e.name << "  " << e.description << "\n";
            return kExitOk;
        }
        if (gr->parsed()) {
            const GalleryRun run = run_gallery(gallery_dir, f.serial ? Exec::Serial : Exec::Parallel);
            for (const auto& p : run.problems)
                std::cerr << "unexpected: " << p << "\n";
            return run.exit_code;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitInput;
}
