#include "stasurf/config.hpp"

#include "stasurf/errors.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace stasurf {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void only_fields(const ordered_json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        fail(where, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key))
            fail(where + "/" + key, "unknown field");
}

const ordered_json& need(const ordered_json& j, const char* key, const std::string& where) {
    if (!j.contains(key))
        fail(where, std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double number(const ordered_json& j, const std::string& where) {
    if (!j.is_number())
        fail(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        fail(where, "expected a finite number");
    return v;
}

int count(const ordered_json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 100000)
        fail(where, "expected a positive integer");
    return j.get<int>();
}

std::pair<double, double> range(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(where, "expected [lo, hi]");
    return {number(j[0], where + "/0"), number(j[1], where + "/1")};
}

std::pair<double, double> interval(const ordered_json& j, const std::string& where) {
    const auto r = range(j, where);
    if (!(r.first < r.second))
        fail(where, "expected [lo, hi] with lo < hi");
    return r;
}

std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

} // namespace

double clean(double v) { return v == 0.0 ? 0.0 : v; }

cplx parse_complex(const ordered_json& j, const std::string& where) {
    if (j.is_number())
        return {number(j, where), 0.0};
    if (!j.is_array() || j.size() != 2)
        fail(where, "expected a number or [re, im]");
    return {number(j[0], where + "/0"), number(j[1], where + "/1")};
}

ExtendedComplex parse_point(const ordered_json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf")
            return ExtendedComplex::infinity();
        fail(where, "expected \"inf\", a number or [re, im]");
    }
    return ExtendedComplex(parse_complex(j, where));
}

Polynomial parse_polynomial(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        fail(where, "expected a nonempty coefficient list, ascending degree");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < j.size(); ++i)
        c.push_back(parse_complex(j[i], at(where, i)));
    return Polynomial(std::move(c));
}

RationalFunction parse_rational(const ordered_json& j, const std::string& where) {
    if (j.is_array())
        return RationalFunction(parse_polynomial(j, where));
    only_fields(j, where, {"num", "den"});
    const Polynomial num = parse_polynomial(need(j, "num", where), where + "/num");
    const Polynomial den = j.contains("den") ? parse_polynomial(j.at("den"), where + "/den") : Polynomial{1.0};
    if (den.degree() == kZeroDegree)
        fail(where + "/den", "zero denominator");
    return RationalFunction(num, den);
}

Domain parse_domain(const ordered_json& j, const std::string& where) {
    only_fields(j, where, {"kind", "radius", "punctures"});
    const ordered_json& kind = need(j, "kind", where);
    if (!kind.is_string())
        fail(where + "/kind", "expected a string");
    const std::string k = kind.get<std::string>();
    std::vector<ExtendedComplex> punct;
    if (j.contains("punctures")) {
        const ordered_json& p = j.at("punctures");
        if (!p.is_array())
            fail(where + "/punctures", "expected a list of points");
        for (std::size_t i = 0; i < p.size(); ++i)
            punct.push_back(parse_point(p[i], at(where + "/punctures", i)));
    }
    try {
        if (k == "disk") {
            if (!punct.empty())
                fail(where + "/punctures", "disks carry no punctures");
            return Domain::disk(number(need(j, "radius", where), where + "/radius"));
        }
        if (j.contains("radius"))
            fail(where + "/radius", "only disks have a radius");
        if (k == "plane" || k == "plane-minus-points") {
            std::vector<cplx> fin;
            for (std::size_t i = 0; i < punct.size(); ++i) {
                if (punct[i].is_infinite())
                    fail(at(where + "/punctures", i), "infinity is not in the plane");
                fin.push_back(punct[i].value());
            }
            return fin.empty() ? Domain::plane() : Domain::plane_minus(fin);
        }
        if (k == "sphere-minus-points")
            return Domain::sphere_minus(punct);
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where + "/kind", "unknown domain kind \"" + k + "\" (plane, plane-minus-points, sphere-minus-points, disk)");
}

Grid parse_grid(const ordered_json& j, const std::string& where) {
    const ordered_json& kind = need(j, "kind", where);
    if (!kind.is_string())
        fail(where + "/kind", "expected a string");
    const std::string k = kind.get<std::string>();
    const auto sizes = [&]() {
        const ordered_json& n = need(j, "n", where);
        if (!n.is_array() || n.size() != 2)
            fail(where + "/n", "expected [inner, outer] node counts");
        return std::pair{count(n[0], where + "/n/0"), count(n[1], where + "/n/1")};
    };
    if (k == "rectangle") {
        only_fields(j, where, {"kind", "u", "v", "n"});
        const auto [u0, u1] = interval(need(j, "u", where), where + "/u");
        const auto [v0, v1] = interval(need(j, "v", where), where + "/v");
        const auto [nu, nv] = sizes();
        return Grid::rectangle(u0, u1, v0, v1, nu, nv);
    }
    if (k == "polar") {
        only_fields(j, where, {"kind", "center", "r", "t", "n"});
        const cplx c = j.contains("center") ? parse_complex(j.at("center"), where + "/center") : cplx{};
        const auto [r0, r1] = interval(need(j, "r", where), where + "/r");
        const auto [t0, t1] = interval(need(j, "t", where), where + "/t");
        if (r0 < 0.0 || r1 < r0)
            fail(where + "/r", "expected 0 <= r0 <= r1");
        const auto [nt, nr] = sizes();
        return Grid::polar(c, r0, r1, nr, t0, t1, nt);
    }
    fail(where + "/kind", "unknown grid kind \"" + k + "\" (rectangle, polar)");
}

Contour parse_loop(const ordered_json& j, const std::string& where) {
    if (!j.is_object() || j.size() != 1)
        fail(where, "expected {\"circle\": ...} or {\"polyline\": ...}");
    if (j.contains("circle")) {
        const ordered_json& c = j.at("circle");
        const std::string w = where + "/circle";
        only_fields(c, w, {"center", "radius"});
        const double r = number(need(c, "radius", w), w + "/radius");
        if (!(r > 0.0))
            fail(w + "/radius", "expected a positive radius");
        return Circle{parse_complex(need(c, "center", w), w + "/center"), r};
    }
    if (j.contains("polyline")) {
        const ordered_json& p = j.at("polyline");
        const std::string w = where + "/polyline";
        if (!p.is_array() || p.size() < 3)
            fail(w, "expected at least three vertices");
        Polyline line;
        for (std::size_t i = 0; i < p.size(); ++i)
            line.vertices.push_back(parse_complex(p[i], at(w, i)));
        if (!line.closed())
            fail(w, "loop is not closed (first vertex must equal the last)");
        return line;
    }
    fail(where + "/" + j.begin().key(), "unknown field");
}

SurfaceConfig parse_config(const ordered_json& doc, const std::string& origin) {
    const std::string root = origin + ": ";
    try {
        only_fields(doc, "", {"name", "psi1", "psi2", "f", "dh", "domain", "complete", "loops", "grid", "targets"});
        std::string name;
        if (doc.contains("name")) {
            if (!doc.at("name").is_string())
                fail("/name", "expected a string");
            name = doc.at("name").get<std::string>();
        }
        if (doc.contains("psi2") == doc.contains("f"))
            fail("", "exactly one of \"psi2\" and \"f\" is required");
        const RationalFunction psi1 = parse_rational(need(doc, "psi1", ""), "/psi1");
        const RationalFunction dh = parse_rational(need(doc, "dh", ""), "/dh");
        const Domain domain = parse_domain(need(doc, "domain", ""), "/domain");

        bool complete = false;
        if (doc.contains("complete")) {
            const ordered_json& c = doc.at("complete");
            if (!c.is_string() || (c.get<std::string>() != "asserted" && c.get<std::string>() != "unknown"))
                fail("/complete", "expected \"asserted\" or \"unknown\"");
            complete = c.get<std::string>() == "asserted";
        }
        std::vector<Contour> loops;
        if (doc.contains("loops")) {
            const ordered_json& l = doc.at("loops");
            if (!l.is_array())
                fail("/loops", "expected a list");
            for (std::size_t i = 0; i < l.size(); ++i)
                loops.push_back(parse_loop(l[i], at("/loops", i)));
        }
        std::optional<Grid> grid;
        if (doc.contains("grid"))
            grid = parse_grid(doc.at("grid"), "/grid");
        std::vector<ExtendedComplex> targets;
        if (doc.contains("targets")) {
            const ordered_json& t = doc.at("targets");
            if (!t.is_array())
                fail("/targets", "expected a list of points");
            for (std::size_t i = 0; i < t.size(); ++i)
                targets.push_back(parse_point(t[i], at("/targets", i)));
        }

        auto data = [&] {
            try {
                return doc.contains("f")
                           ? WeierstrassData::related(psi1, parse_rational(doc.at("f"), "/f"), dh, domain)
                           : WeierstrassData::direct(psi1, parse_rational(doc.at("psi2"), "/psi2"), dh, domain);
            } catch (const std::invalid_argument& e) {
                fail("", e.what());
            }
        }();
        data.completeness_asserted = complete;
        return SurfaceConfig{name, std::move(data), complete, std::move(loops), grid, std::move(targets), doc};
    } catch (const ParseError& e) {
        throw ParseError(root + e.what());
    }
}

SurfaceConfig parse_config_text(const std::string& text, const std::string& origin) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
    return parse_config(doc, origin);
}

SurfaceConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string() + ": cannot read");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.string());
}

ExtendedComplex parse_point_literal(const std::string& raw) {
    std::string s;
    for (const char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s == "inf" || s == "infinity")
        return ExtendedComplex::infinity();
    if (s.empty())
        throw ParseError("empty point literal");
    // split at the sign that starts the second term (not an exponent sign)
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            split = i;
    const auto term = [&](const std::string& t, bool& imag) -> cplx {
        if (t.empty())
            throw ParseError("bad point literal \"" + raw + "\"");
        imag = t.back() == 'i';
        std::string body = imag ? t.substr(0, t.size() - 1) : t;
        if (imag && (body.empty() || body == "+" || body == "-"))
            body += "1";
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(body, &used);
        } catch (const std::exception&) {
            throw ParseError("bad point literal \"" + raw + "\"");
        }
        if (used != body.size() || !std::isfinite(v))
            throw ParseError("bad point literal \"" + raw + "\"");
        return imag ? cplx{0.0, v} : cplx{v, 0.0};
    };
    bool ia = false, ib = false;
    if (split == std::string::npos)
        return ExtendedComplex(term(s, ia));
    const cplx a = term(s.substr(0, split), ia), b = term(s.substr(split), ib);
    if (ia || !ib)
        throw ParseError("bad point literal \"" + raw + "\"");
    return ExtendedComplex(a + b);
}

std::vector<ExtendedComplex> parse_point_list(const std::string& s) {
    std::vector<ExtendedComplex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_point_literal(item));
    if (out.empty())
        throw ParseError("empty point list");
    return out;
}

std::pair<int, int> parse_grid_size(const std::string& s) {
    const auto x = s.find('x');
    try {
        if (x == std::string::npos)
            throw std::invalid_argument(s);
        std::size_t u1 = 0, u2 = 0;
        const int n = std::stoi(s.substr(0, x), &u1);
        const int m = std::stoi(s.substr(x + 1), &u2);
        if (u1 != x || u2 != s.size() - x - 1 || n < 1 || m < 1)
            throw std::invalid_argument(s);
        return {n, m};
    } catch (const std::exception&) {
        throw ParseError("--grid: expected NxM with positive N, M, got \"" + s + "\"");
    }
}

ordered_json to_json(cplx z) { return ordered_json::array({clean(z.real()), clean(z.imag())}); }

ordered_json to_json(const ExtendedComplex& z) { return z.is_infinite() ? ordered_json("inf") : to_json(z.value()); }

ordered_json to_json(const Polynomial& p) {
    ordered_json a = ordered_json::array();
    for (const cplx c : p.coefficients())
        a.push_back(to_json(c));
    if (a.empty())
        a.push_back(to_json(cplx{}));
    return a;
}

ordered_json to_json(const RationalFunction& f) {
    return {{"num", to_json(f.numerator())}, {"den", to_json(f.denominator())}};
}

ordered_json to_json(const Domain& d) {
    ordered_json j{{"kind", to_string(d.kind)}};
    if (d.kind == DomainKind::Disk)
        j["radius"] = d.radius;
    if (!d.punctures.empty()) {
        ordered_json p = ordered_json::array();
        for (const auto& x : d.punctures)
            p.push_back(to_json(x));
        j["punctures"] = p;
    }
    return j;
}

ordered_json to_json(const Grid& g) {
    if (g.kind == Grid::Kind::Rectangle)
        return {{"kind", "rectangle"}, {"u", {g.a0, g.a1}}, {"v", {g.b0, g.b1}}, {"n", {g.na, g.nb}}};
    return {{"kind", "polar"}, {"center", to_json(g.center)}, {"r", {g.b0, g.b1}}, {"t", {g.a0, g.a1}},
            {"n", {g.na, g.nb}}};
}

ordered_json to_json(const Contour& c) {
    if (const auto* circle = std::get_if<Circle>(&c))
        return {{"circle", {{"center", to_json(circle->center)}, {"radius", circle->radius}}}};
    ordered_json v = ordered_json::array();
    for (const cplx z : std::get<Polyline>(c).vertices)
        v.push_back(to_json(z));
    return {{"polyline", v}};
}

} // namespace stasurf
