#include "stasurf/analysis.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/report.hpp"

#include <algorithm>
#include <sstream>

namespace stasurf {

using nlohmann::ordered_json;

namespace {

// frame checks on sampled meshes
constexpr double kNullTol = 1e-12;
constexpr double kMetricTol = 1e-5;
constexpr double kConformalTol = 1e-4;
constexpr double kHarmonicTol = 1e-4;
constexpr double kGaussTol = 1e-10;

cplx coeff(const Polynomial& p, int k) {
    const auto& c = p.coefficients();
    return k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : cplx{};
}

MobiusTransform as_mobius(const RationalFunction& f) {
    return {coeff(f.numerator(), 1), coeff(f.numerator(), 0), coeff(f.denominator(), 1), coeff(f.denominator(), 0)};
}

int severity(Verdict v) {
    switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Inapplicable: return 1;
    case Verdict::HypothesisNotMet: return 2;
    case Verdict::Fail: return 3;
    case Verdict::Contradiction: return 4;
    }
    return 4;
}

struct Verdicts {
    std::vector<Verdict> all;
    void add(Verdict v) { all.push_back(v); }
    Verdict worst() const {
        Verdict w = Verdict::Pass;
        for (const Verdict v : all)
            if (severity(v) > severity(w))
                w = v;
        return w;
    }
    int exit_code() const {
        return std::all_of(all.begin(), all.end(), acceptable) ? kExitOk : kExitVerdict;
    }
};

void retolerance(PeriodReport& per, double tol) {
    per.verdict = Verdict::Pass;
    for (auto& l : per.loops) {
        const auto& r = l.exact ? *l.exact : l.quadrature;
        l.verdict = std::all_of(r.begin(), r.end(), [&](double v) { return v < tol; }) ? Verdict::Pass : Verdict::Fail;
        if (l.verdict == Verdict::Fail)
            per.verdict = Verdict::Fail;
    }
}

ordered_json frame_checks(const WeierstrassData& d, const Grid& grid, Exec exec, Verdicts& v) {
    const Mesh mesh = sample_mesh(d, grid, exec);
    const MeshAudit a = audit_mesh(d, mesh, exec);
    ordered_json j{{"sampled", a.points}, {"skipped", to_json(mesh.skipped)}, {"audit", to_json(a)}};
    if (a.points == 0) {
        j["verdict"] = to_string(Verdict::Inapplicable);
        return j;
    }
    std::vector<std::string> bad;
    if (!(a.max_null < kNullTol))
        bad.push_back("null residual");
    if (!(a.min_spacelike > 0.0))
        bad.push_back("space-like norm");
    if (!(a.max_metric_rel < kMetricTol))
        bad.push_back("metric");
    if (!(a.max_conformal_rel < kConformalTol))
        bad.push_back("conformality");
    if (!(a.max_harmonic_rel < kHarmonicTol))
        bad.push_back("harmonicity");
    if (!(a.max_gauss_chordal < kGaussTol))
        bad.push_back("Gauss round trip");
    j["failed"] = bad;
    const Verdict verdict = bad.empty() ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = to_string(verdict);
    v.add(verdict);
    return j;
}

} // namespace

Grid effective_grid(const SurfaceConfig& cfg, const RunOptions& opt) {
    Grid g = cfg.grid.value_or(Grid::rectangle(-1.0, 1.0, -1.0, 1.0, 21, 21));
    if (opt.window) {
        const auto& w = *opt.window;
        g = Grid::rectangle(w[0], w[1], w[2], w[3], g.na, g.nb);
    }
    if (opt.grid_size) {
        const auto [n, m] = *opt.grid_size;
        g = g.kind == Grid::Kind::Rectangle ? Grid::rectangle(g.a0, g.a1, g.b0, g.b1, n, m)
                                            : Grid::polar(g.center, g.b0, g.b1, m, g.a0, g.a1, n);
    }
    return g;
}

RunResult analyze(const SurfaceConfig& cfg, const RunOptions& opt) {
    const WeierstrassData& d = cfg.data;
    const Grid grid = effective_grid(cfg, opt);
    Verdicts v;
    ordered_json rep;
    rep["name"] = cfg.name;
    rep["input"] = cfg.source;
    rep["grid"] = to_json(grid);
    rep["completeness"] = cfg.complete_asserted ? "asserted" : "unknown";

    const RegularityReport reg = check_regularity(d, grid, opt.exec);
    v.add(reg.verdict);
    rep["regularity"] = to_json(reg);

    PeriodReport per = check_periods(d, opt.loops ? *opt.loops : cfg.loops);
    if (opt.tol)
        retolerance(per, *opt.tol);
    v.add(per.verdict);
    rep["periods"] = to_json(per);
    if (opt.tol)
        rep["periods"]["tolerance"] = *opt.tol;

    std::optional<EfSet> ef;
    if (d.relation()) {
        const RationalFunction& f = *d.relation();
        ef = ef_solve(f);
        ordered_json rel{{"f", to_json(f)}, {"m", f.degree()}, {"ef", to_json(*ef)}};
        if (f.degree() == 1)
            rel["class"] = to_json(classify_conjugate_similarity(as_mobius(f)));
        else if (f.degree() == 0)
            rel["class"] = {{"type", "constant"}, {"note", "2-degenerate: an entire graph when complete"}};
        const AdmissibilityReport adm = admissibility_check(f.degree(), ef->cardinality);
        for (const BoundCheck* b : {&adm.degree_bound, &adm.ef_bounds, &adm.budget})
            v.add(b->verdict);
        rel["admissibility"] = to_json(adm);
        rep["relation"] = rel;

        if (f.is_constant()) {
            rep["aux_metric"] = {{"verdict", to_string(Verdict::Inapplicable)}, {"reason", "the relation is constant"}};
        } else if (ef->kind == EfKind::FinitePoints && !ef->points.empty()) {
            const AuxMetricReport aux = aux_metric_bound(d, grid, opt.exec);
            v.add(aux.verdict);
            rep["aux_metric"] = to_json(aux);
        } else {
            rep["aux_metric"] = {{"verdict", to_string(Verdict::Inapplicable)},
                                 {"reason", ef->kind == EfKind::Curve ? "E_f is a curve" : "E_f is empty"}};
        }
    }

    const auto& targets = opt.targets ? *opt.targets : cfg.targets;
    if (!targets.empty()) {
        ordered_json vd;
        vd["targets"] = ordered_json::array();
        for (const auto& t : targets)
            vd["targets"].push_back(to_json(t));
        if (!d.psi1().is_rational()) {
            vd["verdict"] = to_string(Verdict::Inapplicable);
            vd["reason"] = "psi1 is not rational";
        } else {
            const RamificationReport r1 = ramification_profile({d.psi1().rational(), d.domain(), targets});
            vd["psi1"] = to_json(r1);
            if (d.psi2().is_rational() && !d.psi2().rational().is_constant()) {
                const RamificationReport r2 = ramification_profile({d.psi2().rational(), d.domain(), targets});
                vd["psi2"] = to_json(r2);
                const RamiAudit ra = audit_theorem_rami(r1, r2);
                v.add(ra.verdict);
                vd["rami"] = to_json(ra);
            }
            if (ef) {
                const TheoremAAudit ta = audit_theorem_A(*d.relation(), *ef, r1, cfg.complete_asserted);
                v.add(ta.verdict);
                vd["theorem_A"] = to_json(ta);
            }
        }
        rep["value_distribution"] = vd;
    }

    rep["frame"] = frame_checks(d, grid, opt.exec, v);
    rep["verdict"] = to_string(v.worst());
    return {rep, v.exit_code()};
}

RunResult share(const SurfaceConfig& a, const SurfaceConfig& b, const RunOptions& opt) {
    const Domain& da = a.data.domain();
    const Domain& db = b.data.domain();
    bool same = da.kind == db.kind && da.punctures.size() == db.punctures.size() &&
                (da.kind != DomainKind::Disk || da.radius == db.radius);
    for (std::size_t i = 0; same && i < da.punctures.size(); ++i)
        same = chordal(da.punctures[i], db.punctures[i]) <= 1e-12;
    if (!same)
        throw ParseError("share: the two surfaces must share one parameter domain");
    if (!a.data.psi1().is_rational() || !b.data.psi1().is_rational())
        throw DomainError("share: psi1 must be rational for both surfaces");

    Verdicts v;
    ordered_json rep;
    rep["inputs"] = {a.source, b.source};
    rep["identification"] = "identity on the shared parameter domain";
    const SharedValueReport s =
        shared_values(a.data.psi1().rational(), b.data.psi1().rational(), da, opt.count_omitted);
    rep["shared_values"] = to_json(s);
    if (a.data.relation()) {
        const EfSet ef = ef_solve(*a.data.relation());
        if (b.data.relation() && !a.data.relation()->approx_equal(*b.data.relation()))
            rep["note"] = "the relations differ; the threshold uses the first surface's f";
        const TheoremBAudit tb =
            audit_theorem_B(*a.data.relation(), ef, s, a.complete_asserted && b.complete_asserted);
        v.add(tb.verdict);
        rep["theorem_B"] = to_json(tb);
    } else {
        rep["theorem_B"] = {{"verdict", to_string(Verdict::Inapplicable)}, {"reason", "no relation psi2 = f(psi1)"}};
    }
    rep["verdict"] = to_string(v.worst());
    return {rep, v.exit_code()};
}

SampleResult sample(const SurfaceConfig& cfg, const RunOptions& opt) {
    SampleResult out;
    out.mesh = sample_mesh(cfg.data, effective_grid(cfg, opt), opt.exec);
    if (out.mesh.samples().empty())
        out.warnings.push_back("no grid node could be sampled; output is empty");
    else if (!out.mesh.skipped.empty())
        out.warnings.push_back(std::to_string(out.mesh.skipped.size()) + " grid nodes skipped (see report)");
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const NumericError*>(&e))
        return kExitNumeric;
    return kExitInput;
}

std::array<double, 4> parse_window(const std::string& s) {
    std::array<double, 4> w{};
    std::stringstream ss(s);
    std::string item;
    int k = 0;
    try {
        while (std::getline(ss, item, ',')) {
            if (k == 4)
                throw std::invalid_argument(s);
            std::size_t used = 0;
            w[static_cast<std::size_t>(k++)] = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument(s);
        }
    } catch (const std::exception&) {
        k = -1;
    }
    if (k != 4 || !(w[0] < w[1]) || !(w[2] < w[3]))
        throw ParseError("--domain-window: expected u0,u1,v0,v1 with u0 < u1 and v0 < v1, got \"" + s + "\"");
    return w;
}

} // namespace stasurf
