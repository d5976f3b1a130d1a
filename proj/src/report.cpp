#include "stasurf/report.hpp"

namespace stasurf {

using nlohmann::ordered_json;

namespace {

ordered_json num(double v) { return clean(v); }

template <class T, class F>
ordered_json list(const std::vector<T>& v, F&& f) {
    ordered_json a = ordered_json::array();
    for (const auto& x : v)
        a.push_back(f(x));
    return a;
}

ordered_json count(const ExtendedCount& c) {
    return c.is_infinite() ? ordered_json("inf") : ordered_json(c.value());
}

ordered_json bound(const BoundCheck& b) { return {{"verdict", to_string(b.verdict)}, {"detail", b.detail}}; }

} // namespace

ordered_json to_json(const RegularityReport& r) {
    return {{"condition1", to_string(r.condition1)},
            {"condition2", to_string(r.condition2)},
            {"verdict", to_string(r.verdict)},
            {"sampled", r.sampled},
            {"min_chordal", num(r.min_chordal)},
            {"argmin", to_json(r.argmin)},
            {"issues", r.issues}};
}

ordered_json to_json(const PeriodReport& r) {
    ordered_json loops = ordered_json::array();
    for (const auto& l : r.loops) {
        ordered_json j{{"loop", to_json(l.loop)}};
        j["exact"] = l.exact ? ordered_json::array({num((*l.exact)[0]), num((*l.exact)[1]), num((*l.exact)[2])})
                             : ordered_json(nullptr);
        j["quadrature"] = {num(l.quadrature[0]), num(l.quadrature[1]), num(l.quadrature[2])};
        j["verdict"] = to_string(l.verdict);
        loops.push_back(j);
    }
    return {{"verdict", to_string(r.verdict)}, {"loops", loops}};
}

ordered_json to_json(const EfSet& e) {
    ordered_json j{{"kind", to_string(e.kind)},
                   {"count", count(e.cardinality)},
                   {"points", list(e.points, [](const ExtendedComplex& p) { return to_json(p); })}};
    if (e.locus) {
        const EfLocus& l = *e.locus;
        j["locus"] = l.is_line
                         ? ordered_json{{"line", {{"point", to_json(l.center)}, {"direction", to_json(l.direction)}}}}
                         : ordered_json{{"circle", {{"center", to_json(l.center)}, {"radius", num(l.radius)}}}};
    }
    j["worst_accepted"] = num(e.worst_accepted);
    j["best_rejected"] = num(e.best_rejected);
    return j;
}

ordered_json to_json(const AdmissibilityReport& a) {
    ordered_json j{{"m", a.m},
                   {"ef_count", count(a.ef_count)},
                   {"degree_bound", bound(a.degree_bound)},
                   {"ef_bounds", bound(a.ef_bounds)},
                   {"budget", bound(a.budget)}};
    j["exceptional_budget"] = a.exceptional_budget ? ordered_json(*a.exceptional_budget) : ordered_json(nullptr);
    return j;
}

ordered_json to_json(const DegeneracyClass& c) {
    return {{"type", to_string(c.type)}, {"parameter", num(c.parameter)}, {"invariant", num(c.invariant)}};
}

ordered_json to_json(const RamificationReport& r) {
    return {{"targets", list(r.targets,
                             [](const TargetProfile& t) {
                                 return ordered_json{
                                     {"a", to_json(t.a)}, {"e", count(t.e)}, {"preimages", t.preimages}};
                             })},
            {"gamma", num(r.gamma)}};
}

ordered_json to_json(const RamiAudit& a) {
    return {{"gamma1", num(a.gamma1)}, {"gamma2", num(a.gamma2)}, {"verdict", to_string(a.verdict)}};
}

ordered_json to_json(const TheoremAAudit& a) {
    return {{"route", a.route},
            {"m", a.m},
            {"ef_count", a.ef_count},
            {"q", a.q},
            {"gamma", num(a.gamma)},
            {"bound", num(a.bound)},
            {"hypothesis", {{"q_must_exceed", a.hypothesis_min}, {"met", a.hypothesis_met}}},
            {"route_value", num(a.route_value)},
            {"route_bound", num(a.route_bound)},
            {"exceptional", {{"count", a.omitted}, {"bound", a.omitted_bound}, {"ok", a.omitted_ok}}},
            {"verdict", to_string(a.verdict)}};
}

ordered_json to_json(const DefectReport& d) {
    return {{"degree", d.degree},
            {"values", list(d.values,
                            [](const CriticalValue& c) {
                                return ordered_json{
                                    {"a", to_json(c.a)},
                                    {"e", c.e},
                                    {"critical_points", list(c.critical_points, [](const auto& p) {
                                         return ordered_json{{"z", to_json(p.first)}, {"local_degree", p.second}};
                                     })}};
                            })},
            {"sum", num(d.sum)},
            {"riemann_hurwitz", {{"total", d.rh_total}, {"expected", d.rh_expected}}},
            {"verdict", to_string(d.verdict)}};
}

ordered_json to_json(const SharedValueReport& s) {
    const auto pts = [](const ExtendedComplex& p) { return to_json(p); };
    return {{"identical", s.identical},
            {"shared", list(s.shared, pts)},
            {"both_omitted", list(s.both_omitted, pts)},
            {"omitted_counted", s.omitted_counted},
            {"q", s.q}};
}

ordered_json to_json(const TheoremBAudit& b) {
    return {{"route", b.route},         {"m", b.m}, {"ef_count", b.ef_count}, {"q", b.q},
            {"threshold", b.threshold}, {"verdict", to_string(b.verdict)}};
}

ordered_json to_json(const NegCurvatureReport& r) {
    return {{"a0", num(r.a0)},
            {"mu2_scale", num(r.mu2_scale)},
            {"samples", r.samples},
            {"negative", r.negative},
            {"max_curvature", r.samples > 0 ? ordered_json(num(r.max_curvature)) : ordered_json(nullptr)},
            {"argmax", to_json(r.argmax)},
            {"shrink", list(r.shrink,
                            [](const ShrinkSequence& s) {
                                return ordered_json{{"point", to_json(s.point)},
                                                    {"shared", s.shared},
                                                    {"radii", s.radii},
                                                    {"mu2", s.mu2},
                                                    {"decreasing", s.decreasing},
                                                    {"below", s.below}};
                            })},
            {"verdict", to_string(r.verdict)}};
}

ordered_json to_json(const AuxMetricReport& r) {
    ordered_json j;
    if (r.normalization) {
        const MobiusTransform& s = *r.normalization;
        j["normalization"] = {to_json(s.a()), to_json(s.b()), to_json(s.c()), to_json(s.d())};
    } else {
        j["normalization"] = nullptr;
    }
    j["m"] = r.m;
    j["l"] = r.l;
    j["s"] = r.s;
    j["C"] = num(r.c);
    j["samples"] = r.samples;
    j["min_residual"] = num(r.min_residual);
    j["argmin"] = to_json(r.argmin);
    j["verdict"] = to_string(r.verdict);
    return j;
}

ordered_json to_json(const MeshAudit& a) {
    return {{"points", a.points},
            {"max_null_residual", num(a.max_null)},
            {"min_spacelike", num(a.min_spacelike)},
            {"max_metric_rel", num(a.max_metric_rel)},
            {"max_conformal_rel", num(a.max_conformal_rel)},
            {"max_harmonic_rel", num(a.max_harmonic_rel)},
            {"max_gauss_chordal", num(a.max_gauss_chordal)},
            {"max_r4_null_residual", num(a.max_r4_null)},
            {"x_spread", {num(a.x_spread[0]), num(a.x_spread[1]), num(a.x_spread[2]), num(a.x_spread[3])}},
            {"fd_skipped", a.fd_skipped}};
}

ordered_json to_json(const std::vector<SkippedNode>& s) {
    return list(s, [](const SkippedNode& n) {
        return ordered_json{{"index", n.index}, {"z", to_json(n.z)}, {"reason", n.reason}};
    });
}

ordered_json to_json(const Mesh& m) {
    ordered_json a = ordered_json::array();
    for (const auto& n : m.nodes)
        if (n)
            a.push_back({{"z", to_json(n->z)},
                         {"x", {num(n->x[0]), num(n->x[1]), num(n->x[2]), num(n->x[3])}},
                         {"lambda2", num(n->lambda2)}});
    return a;
}

} // namespace stasurf
