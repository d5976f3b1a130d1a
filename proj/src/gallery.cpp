#include "stasurf/gallery.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/report.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace stasurf {

using nlohmann::ordered_json;

namespace {

GalleryEntry entry(std::string name, std::string description, const char* json, GalleryExpectation e) {
    return {std::move(name), std::move(description), ordered_json::parse(json), e};
}

std::vector<GalleryEntry> build() {
    std::vector<GalleryEntry> g;
    const double pi = std::numbers::pi;

    GalleryExpectation cat;
    cat.ef_kind = EfKind::Empty;
    cat.ef_count = ExtendedCount::finite(0);
    cat.klass = DegeneracyType::Elliptic;
    cat.class_parameter = pi / 2;
    cat.theorem_a = Verdict::Pass;
    cat.embedding = +1;
    g.push_back(entry("catenoid-r3", "catenoid of R^3 inside x4 = 0", R"({
        "name": "catenoid-r3",
        "psi1": [[0, 0], [1, 0]],
        "f": {"num": [[-1, 0]], "den": [[0, 0], [1, 0]]},
        "dh": {"num": [[1, 0]], "den": [[0, 0], [1, 0]]},
        "domain": {"kind": "plane-minus-points", "punctures": [[0, 0]]},
        "complete": "asserted",
        "loops": [{"circle": {"center": [0, 0], "radius": 1}}],
        "grid": {"kind": "polar", "center": [0, 0], "r": [0.5, 2], "t": [0, 6.283185307179586], "n": [17, 9]},
        "targets": [[0, 0], "inf", [1, 0]]
    })", cat));

    GalleryExpectation enn = cat;
    enn.class_parameter = pi / 2;
    g.push_back(entry("enneper-like", "Enneper surface of R^3 inside x4 = 0", R"({
        "name": "enneper-like",
        "psi1": [[0, 0], [1, 0]],
        "f": {"num": [[-1, 0]], "den": [[0, 0], [1, 0]]},
        "dh": [[0, 0], [1, 0]],
        "domain": {"kind": "plane"},
        "complete": "asserted",
        "grid": {"kind": "rectangle", "u": [-1, 1], "v": [-1, 1], "n": [21, 21]},
        "targets": ["inf", [0, 0]]
    })", enn));

    GalleryExpectation maxi;
    maxi.ef_kind = EfKind::Curve;
    maxi.ef_count = ExtendedCount::infinite();
    maxi.klass = DegeneracyType::Identity;
    maxi.embedding = -1;
    g.push_back(entry("maximal-disk", "maximal surface in the Lorentz space x3 = 0 (psi2 = 1/psi1)", R"({
        "name": "maximal-disk",
        "psi1": [[0, 0], [1, 0]],
        "f": {"num": [[1, 0]], "den": [[0, 0], [1, 0]]},
        "dh": [[0, 0], [1, 0]],
        "domain": {"kind": "disk", "radius": 0.9},
        "grid": {"kind": "polar", "center": [0, 0], "r": [0.1, 0.85], "t": [0, 6.283185307179586], "n": [17, 8]}
    })", maxi));

    GalleryExpectation id;
    id.ef_kind = EfKind::Curve;
    id.ef_count = ExtendedCount::infinite();
    id.klass = DegeneracyType::Identity;
    g.push_back(entry("identity-class", "1-degenerate, f = z: psi1 keeps off the real axis", R"({
        "name": "identity-class",
        "psi1": [[0, 2], [1, 0]],
        "f": [[0, 0], [1, 0]],
        "dh": [[1, 0]],
        "domain": {"kind": "disk", "radius": 1},
        "grid": {"kind": "rectangle", "u": [-0.6, 0.6], "v": [-0.6, 0.6], "n": [13, 13]}
    })", id));

    GalleryExpectation hyp;
    hyp.ef_kind = EfKind::FinitePoints;
    hyp.ef_count = ExtendedCount::finite(2);
    hyp.klass = DegeneracyType::Hyperbolic;
    g.push_back(entry("hyperbolic-class", "1-degenerate, f = e^2 z with E_f = {0, inf}", R"({
        "name": "hyperbolic-class",
        "psi1": [[0, 0], [1, 0]],
        "f": [[0, 0], [7.38905609893065, 0]],
        "dh": [[1, 0]],
        "domain": {"kind": "plane-minus-points", "punctures": [[0, 0]]},
        "loops": [{"circle": {"center": [0, 0], "radius": 1}}],
        "grid": {"kind": "polar", "center": [0, 0], "r": [0.5, 2], "t": [0, 6.283185307179586], "n": [17, 9]}
    })", hyp));

    GalleryExpectation ell;
    ell.ef_kind = EfKind::Empty;
    ell.ef_count = ExtendedCount::finite(0);
    ell.klass = DegeneracyType::Elliptic;
    ell.class_parameter = pi / 4;
    g.push_back(entry("elliptic-class", "1-degenerate, f = (z - 1)/(z + 1), elliptic with angle pi/4", R"({
        "name": "elliptic-class",
        "psi1": [[0, 0], [1, 0]],
        "f": {"num": [[-1, 0], [1, 0]], "den": [[1, 0], [1, 0]]},
        "dh": [[1, 0], [1, 0]],
        "domain": {"kind": "plane"},
        "grid": {"kind": "rectangle", "u": [-2, 2], "v": [-2, 2], "n": [20, 20]}
    })", ell));

    GalleryExpectation par;
    par.ef_kind = EfKind::FinitePoints;
    par.ef_count = ExtendedCount::finite(1);
    par.klass = DegeneracyType::Parabolic;
    par.theorem_a = Verdict::Pass;
    g.push_back(entry("parabolic-graph", "1-degenerate, f = z + 1; the metric dominates |dz|^2, so complete", R"({
        "name": "parabolic-graph",
        "psi1": [[0, 0], [1, 0]],
        "f": [[1, 0], [1, 0]],
        "dh": [[1, 0]],
        "domain": {"kind": "plane"},
        "complete": "asserted",
        "grid": {"kind": "rectangle", "u": [-2, 2], "v": [-2, 2], "n": [21, 21]},
        "targets": [[0, 0], [1, 0], [-1, 0]]
    })", par));

    GalleryExpectation graph;
    graph.ef_kind = EfKind::FinitePoints;
    graph.ef_count = ExtendedCount::finite(1);
    graph.theorem_a = Verdict::Pass;
    g.push_back(entry("entire-graph-m0", "2-degenerate, psi2 = 1 constant: a graph", R"({
        "name": "entire-graph-m0",
        "psi1": [[0, 0], [1, 0]],
        "f": [[1, 0]],
        "dh": [[1, 0]],
        "domain": {"kind": "plane-minus-points", "punctures": [[1, 0]]},
        "loops": [{"circle": {"center": [1, 0], "radius": 0.5}}],
        "grid": {"kind": "rectangle", "u": [-2, 2], "v": [-2, 2], "n": [20, 20]},
        "targets": [[0, 0], "inf"]
    })", graph));

    GalleryExpectation broken;
    broken.periods = Verdict::Fail;
    broken.embedding = +1;
    broken.exit_code = kExitVerdict;
    g.push_back(entry("broken-period", "catenoid data with dh = dz/z^2: the first period does not close", R"({
        "name": "broken-period",
        "psi1": [[0, 0], [1, 0]],
        "psi2": {"num": [[-1, 0]], "den": [[0, 0], [1, 0]]},
        "dh": {"num": [[1, 0]], "den": [[0, 0], [0, 0], [1, 0]]},
        "domain": {"kind": "plane-minus-points", "punctures": [[0, 0]]},
        "loops": [{"circle": {"center": [0, 0], "radius": 1}}],
        "grid": {"kind": "polar", "center": [0, 0], "r": [0.5, 2], "t": [0, 6.283185307179586], "n": [17, 9]}
    })", broken));
    return g;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ParseError(p.string() + ": cannot write");
    out << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

const std::vector<GalleryEntry>& gallery() {
    static const std::vector<GalleryEntry> g = build();
    return g;
}

const GalleryEntry& gallery_entry(const std::string& name) {
    for (const auto& e : gallery())
        if (e.name == name)
            return e;
    throw ParseError("no gallery entry named \"" + name + "\"");
}

std::vector<ShippedProbe> shipped_probes() {
    const ExtendedComplex inf = ExtendedComplex::infinity();
    const cplx i{0.0, 1.0};
    std::vector<ShippedProbe> out;

    NegCurvatureProbeConfig a;
    a.f = RationalFunction::identity();
    a.f_hat = RationalFunction(Polynomial{0.0, -1.0});
    a.targets = {ExtendedComplex(0.0), inf, ExtendedComplex(1.0), ExtendedComplex(-1.0), ExtendedComplex(i)};
    a.eps = 0.05;
    a.grid = Grid::rectangle(-2.0, 2.0, -2.0, 2.0, 21, 21);
    a.domain = Domain::plane_minus({1.0, -1.0, i, -i});
    out.push_back({"z-vs-minus-z", a});

    NegCurvatureProbeConfig b;
    b.f = RationalFunction::identity();
    b.f_hat = RationalFunction(Polynomial{0.0, 0.0, 1.0});
    b.targets = {ExtendedComplex(0.0), inf, ExtendedComplex(2.0), ExtendedComplex(-2.0), ExtendedComplex(3.0)};
    b.eps = 0.05;
    b.grid = Grid::polar(0.0, 0.05, 0.9, 12, 0.0, 2.0 * std::numbers::pi, 24);
    b.domain = Domain::disk(1.0);
    out.push_back({"z-vs-z2-disk", b});
    return out;
}

std::vector<std::string> check_expectation(const GalleryEntry& e, const RunResult& r) {
    std::vector<std::string> bad;
    const ordered_json& rep = r.report;
    const GalleryExpectation& x = e.expect;
    const auto want = [&](bool ok, const std::string& what) {
        if (!ok)
            bad.push_back(e.name + ": " + what);
    };
    want(rep["regularity"]["verdict"] == to_string(x.regularity), "regularity verdict");
    want(rep["periods"]["verdict"] == to_string(x.periods), "period verdict");
    want(r.exit_code == x.exit_code, "exit code " + std::to_string(r.exit_code));
    if (x.ef_kind || x.ef_count || x.klass) {
        if (!rep.contains("relation")) {
            want(false, "no relation in report");
        } else {
            const ordered_json& rel = rep["relation"];
            if (x.ef_kind)
                want(rel["ef"]["kind"] == to_string(*x.ef_kind), "E_f kind");
            if (x.ef_count)
                want(rel["ef"]["count"] == (x.ef_count->is_infinite() ? ordered_json("inf")
                                                                       : ordered_json(x.ef_count->value())),
                     "E_f count");
            if (x.klass)
                want(rel.contains("class") && rel["class"]["type"] == to_string(*x.klass), "classification");
            if (x.class_parameter)
                want(rel.contains("class") &&
                         std::abs(rel["class"]["parameter"].get<double>() - *x.class_parameter) < 1e-9,
                     "class parameter");
        }
    }
    if (x.theorem_a)
        want(rep.contains("value_distribution") && rep["value_distribution"].contains("theorem_A") &&
                 rep["value_distribution"]["theorem_A"]["verdict"] == to_string(*x.theorem_a),
             "theorem A verdict");
    if (x.embedding != 0) {
        const ordered_json& spread = rep["frame"]["audit"]["x_spread"];
        const double s = spread[x.embedding > 0 ? 3 : 2].get<double>();
        want(s < 1e-10, "embedding spread " + std::to_string(s));
    }
    want(rep["frame"]["verdict"] != to_string(Verdict::Fail), "frame checks");
    for (const char* key : {"theorem_A", "rami"})
        if (rep.contains("value_distribution") && rep["value_distribution"].contains(key))
            want(rep["value_distribution"][key]["verdict"] != to_string(Verdict::Contradiction),
                 std::string(key) + " contradiction");
    return bad;
}

GalleryRun run_gallery(const std::filesystem::path& dir, Exec exec) {
    std::filesystem::create_directories(dir);
    GalleryRun run;
    RunOptions opt;
    opt.exec = exec;
    ordered_json summary = ordered_json::array();
    for (const auto& e : gallery()) {
        const SurfaceConfig cfg = e.parsed();
        const RunResult r = analyze(cfg, opt);
        write_file(dir / (e.name + ".report.json"), dump(r.report));
        const SampleResult s = sample(cfg, opt);
        std::ostringstream csv, obj;
        write_csv(csv, s.mesh);
        write_obj(obj, s.mesh);
        write_file(dir / (e.name + ".csv"), csv.str());
        write_file(dir / (e.name + ".obj"), obj.str());
        const auto bad = check_expectation(e, r);
        run.problems.insert(run.problems.end(), bad.begin(), bad.end());
        summary.push_back({{"name", e.name},
                           {"description", e.description},
                           {"verdict", r.report["verdict"]},
                           {"exit_code", r.exit_code},
                           {"expected_exit_code", e.expect.exit_code},
                           {"as_expected", bad.empty()}});
    }
    for (const auto& p : shipped_probes()) {
        const NegCurvatureReport rep = neg_curvature_probe(p.config, exec);
        ordered_json j{{"name", p.name},
                       {"f", to_json(p.config.f)},
                       {"f_hat", to_json(p.config.f_hat)},
                       {"eps", p.config.eps},
                       {"domain", to_json(p.config.domain)},
                       {"grid", to_json(p.config.grid)}};
        j["targets"] = ordered_json::array();
        for (const auto& t : p.config.targets)
            j["targets"].push_back(to_json(t));
        j["probe"] = to_json(rep);
        write_file(dir / ("probe-" + p.name + ".json"), dump(j));
        if (rep.verdict != Verdict::Pass)
            run.problems.push_back("probe " + p.name + ": " + to_string(rep.verdict));
        summary.push_back({{"name", "probe-" + p.name}, {"verdict", to_string(rep.verdict)}});
    }
    write_file(dir / "gallery.json", dump({{"entries", summary}, {"problems", run.problems}}));
    run.exit_code = run.problems.empty() ? kExitOk : kExitVerdict;
    return run;
}

} // namespace stasurf
