#include "stasurf/mesh.hpp"

#include "stasurf/errors.hpp"
#include "stasurf/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace stasurf {

namespace {

Vec4 two_re(const PhiForms& p) { return {2.0 * p[0].real(), 2.0 * p[1].real(), 2.0 * p[2].real(), 2.0 * p[3].real()}; }

Vec4 add(Vec4 a, const Vec4& b) {
    for (int k = 0; k < 4; ++k)
        a[k] += b[k];
    return a;
}

std::optional<Vec4> try_path(const WeierstrassData& data, std::initializer_list<cplx> pts) {
    try {
        Vec4 acc{};
        const cplx* prev = nullptr;
        for (const cplx& p : pts) {
            if (prev)
                acc = add(acc, two_re(integrate_phi(data, *prev, p)));
            prev = &p;
        }
        return acc;
    } catch (const DomainError&) {
        return std::nullopt;
    } catch (const NumericError&) {
        return std::nullopt;
    }
}

// x(b) - x(a): straight, else around a bump on either side.
std::optional<Vec4> step(const WeierstrassData& data, cplx a, cplx b) {
    if (auto d = try_path(data, {a, b}))
        return d;
    const cplx mid = 0.5 * (a + b);
    const cplx normal = cplx{0.0, 1.0} * (b - a);
    for (const double s : {0.5, -0.5, 1.0, -1.0})
        if (auto d = try_path(data, {a, mid + s * normal, b}))
            return d;
    return std::nullopt;
}

std::optional<std::string> unusable(const WeierstrassData& data, cplx z) {
    const Domain& dom = data.domain();
    if (!dom.contains(z))
        return "outside the domain";
    for (const auto& p : dom.punctures)
        if (p.is_finite() && std::abs(z - p.value()) < kPoleClearance)
            return "at a puncture";
    for (const cplx p : data.integrand_poles())
        if (std::abs(z - p) < kPoleClearance)
            return "at a pole of the integrand";
    try {
        phi_forms(data, z);
    } catch (const DomainError&) {
        return "at a pole of the integrand";
    }
    return std::nullopt;
}

} // namespace

std::vector<ImmersionSample> Mesh::samples() const {
    std::vector<ImmersionSample> out;
    for (const auto& n : nodes)
        if (n)
            out.push_back(*n);
    return out;
}

Mesh sample_mesh(const WeierstrassData& data, const Grid& grid, Exec exec) {
    Mesh mesh;
    mesh.grid = grid;
    const int n = grid.size();
    mesh.nodes.assign(static_cast<std::size_t>(n), std::nullopt);
    if (n == 0)
        return mesh;

    std::vector<std::string> reason(static_cast<std::size_t>(n));
    for_each_index(n, exec, [&](int k) {
        if (auto r = unusable(data, grid.node(k)))
            reason[static_cast<std::size_t>(k)] = *r;
    });
    const auto usable = [&](int k) { return reason[static_cast<std::size_t>(k)].empty(); };

    // Row anchors, chained serially from the first usable node.
    std::vector<int> anchor(static_cast<std::size_t>(grid.nb), -1);
    std::vector<Vec4> anchor_x(static_cast<std::size_t>(grid.nb));
    std::optional<std::pair<cplx, Vec4>> prev;
    for (int i = 0; i < grid.nb; ++i) {
        for (int j = 0; j < grid.na; ++j) {
            const int k = i * grid.na + j;
            if (!usable(k))
                continue;
            const cplx z = grid.node(k);
            std::optional<Vec4> x;
            if (!prev)
                x = Vec4{};
            else if (auto d = step(data, prev->first, z))
                x = add(prev->second, *d);
            if (x) {
                anchor[static_cast<std::size_t>(i)] = j;
                anchor_x[static_cast<std::size_t>(i)] = *x;
                prev = {z, *x};
                break;
            }
        }
    }

    for_each_index(grid.nb, exec, [&](int i) {
        const int j0 = anchor[static_cast<std::size_t>(i)];
        if (j0 < 0)
            return;
        const auto walk = [&](int dir) {
            int last = j0;
            Vec4 x = anchor_x[static_cast<std::size_t>(i)];
            for (int j = j0 + dir; j >= 0 && j < grid.na; j += dir) {
                const int k = i * grid.na + j;
                if (!usable(k))
                    continue;
                const auto d = step(data, grid.node(i, last), grid.node(i, j));
                if (!d)
                    continue;
                x = add(x, *d);
                last = j;
                const cplx z = grid.node(k);
                mesh.nodes[static_cast<std::size_t>(k)] = ImmersionSample{z, x, induced_metric(data, z)};
            }
        };
        const int k0 = i * grid.na + j0;
        const cplx z0 = grid.node(k0);
        mesh.nodes[static_cast<std::size_t>(k0)] =
            ImmersionSample{z0, anchor_x[static_cast<std::size_t>(i)], induced_metric(data, z0)};
        walk(+1);
        walk(-1);
    });

    for (int k = 0; k < n; ++k) {
        if (mesh.nodes[static_cast<std::size_t>(k)])
            continue;
        const std::string& r = reason[static_cast<std::size_t>(k)];
        mesh.skipped.push_back({k, grid.node(k), r.empty() ? "unreachable from the base point" : r});
    }
    return mesh;
}

FrameResiduals frame_residuals(const WeierstrassData& data, cplx z) {
    const double h = fd_step(z);
    const cplx dirs[4] = {{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}};
    Vec4 d[4];
    for (int s = 0; s < 4; ++s)
        d[s] = two_re(integrate_phi(data, z, z + dirs[s]));
    Vec4 xu, xv, lap;
    for (int k = 0; k < 4; ++k) {
        xu[k] = (d[0][k] - d[1][k]) / (2.0 * h);
        xv[k] = (d[2][k] - d[3][k]) / (2.0 * h);
        lap[k] = (d[0][k] + d[1][k] + d[2][k] + d[3][k]) / (h * h);
    }
    FrameResiduals r;
    r.lambda2 = induced_metric(data, z);
    const double e = minkowski(xu, xu), g = minkowski(xv, xv), f = minkowski(xu, xv);
    r.lambda2_fd = 0.25 * (e + g);
    r.metric_rel = std::abs(r.lambda2 - r.lambda2_fd) / r.lambda2;
    r.conformal_rel = std::max(std::abs(e - g), std::abs(f)) / r.lambda2;
    double grad = 0.0, lmax = 0.0;
    for (int k = 0; k < 4; ++k) {
        grad = std::max(grad, std::hypot(xu[k], xv[k]));
        lmax = std::max(lmax, std::abs(lap[k]));
    }
    r.harmonic_rel = grad > 0.0 ? lmax / (grad / (1.0 + std::abs(z))) : lmax;
    return r;
}

MeshAudit audit_mesh(const WeierstrassData& data, const Mesh& mesh, Exec exec) {
    struct Node {
        bool present = false, fd_ok = false;
        double null = 0, spacelike = 0, gauss = 0, r4 = 0;
        FrameResiduals fr;
    };
    const int n = static_cast<int>(mesh.nodes.size());
    std::vector<Node> out(static_cast<std::size_t>(n));
    for_each_index(n, exec, [&](int k) {
        const auto& s = mesh.nodes[static_cast<std::size_t>(k)];
        if (!s)
            return;
        Node& o = out[static_cast<std::size_t>(k)];
        o.present = true;
        const PhiForms p = phi_forms(data, s->z);
        double scale = 0.0;
        for (const cplx c : p)
            scale = std::max(scale, std::abs(c));
        const double s2 = scale * scale;
        o.null = s2 > 0.0 ? std::abs(null_residual(p)) / s2 : 0.0;
        o.spacelike = spacelike_norm(p);
        const PhiForms star = to_minimal_r4(p);
        const cplx sq = star[0] * star[0] + star[1] * star[1] + star[2] * star[2] + star[3] * star[3];
        o.r4 = s2 > 0.0 ? std::abs(sq) / s2 : 0.0;
        if (s2 > 0.0) {
            const auto [g1, g2] = gauss_from_phi(p);
            o.gauss = std::max(chordal(g1, data.psi1()(s->z)), chordal(g2, data.psi2()(s->z)));
        }
        try {
            o.fr = frame_residuals(data, s->z);
            o.fd_ok = true;
        } catch (const DomainError&) {
        } catch (const NumericError&) {
        }
    });

    MeshAudit a;
    Vec4 lo, hi;
    lo.fill(INFINITY);
    hi.fill(-INFINITY);
    a.min_spacelike = INFINITY;
    for (int k = 0; k < n; ++k) {
        const Node& o = out[static_cast<std::size_t>(k)];
        if (!o.present)
            continue;
        ++a.points;
        a.max_null = std::max(a.max_null, o.null);
        a.min_spacelike = std::min(a.min_spacelike, o.spacelike);
        a.max_gauss_chordal = std::max(a.max_gauss_chordal, o.gauss);
        a.max_r4_null = std::max(a.max_r4_null, o.r4);
        const Vec4& x = mesh.nodes[static_cast<std::size_t>(k)]->x;
        for (int i = 0; i < 4; ++i) {
            lo[i] = std::min(lo[i], x[i]);
            hi[i] = std::max(hi[i], x[i]);
        }
        if (!o.fd_ok) {
            ++a.fd_skipped;
            continue;
        }
        a.max_metric_rel = std::max(a.max_metric_rel, o.fr.metric_rel);
        a.max_conformal_rel = std::max(a.max_conformal_rel, o.fr.conformal_rel);
        a.max_harmonic_rel = std::max(a.max_harmonic_rel, o.fr.harmonic_rel);
    }
    if (a.points == 0)
        a.min_spacelike = 0.0;
    else
        for (int i = 0; i < 4; ++i)
            a.x_spread[i] = hi[i] - lo[i];
    return a;
}

void write_csv(std::ostream& os, const Mesh& mesh) {
    os << "u,v,x1,x2,x3,x4,lambda2\n";
    for (const auto& n : mesh.nodes) {
        if (!n)
            continue;
        os << fmt(n->z.real()) << ',' << fmt(n->z.imag());
        for (const double c : n->x)
            os << ',' << fmt(c);
        os << ',' << fmt(n->lambda2) << '\n';
    }
}

void write_obj(std::ostream& os, const Mesh& mesh) {
    std::vector<int> id(mesh.nodes.size(), 0);
    int next = 1;
    for (std::size_t k = 0; k < mesh.nodes.size(); ++k) {
        const auto& n = mesh.nodes[k];
        if (!n)
            continue;
        id[k] = next++;
        os << "# x4 " << fmt(n->x[3]) << '\n';
        os << "v " << fmt(n->x[0]) << ' ' << fmt(n->x[1]) << ' ' << fmt(n->x[2]) << '\n';
    }
    const Grid& g = mesh.grid;
    for (int i = 0; i + 1 < g.nb; ++i)
        for (int j = 0; j + 1 < g.na; ++j) {
            const int a = id[static_cast<std::size_t>(i * g.na + j)];
            const int b = id[static_cast<std::size_t>(i * g.na + j + 1)];
            const int c = id[static_cast<std::size_t>((i + 1) * g.na + j + 1)];
            const int d = id[static_cast<std::size_t>((i + 1) * g.na + j)];
            if (a && b && c && d)
                os << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
        }
}

} // namespace stasurf
