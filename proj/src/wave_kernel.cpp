#include "levywave/wave_kernel.hpp"

#include <cmath>
#include <numbers>

#include "levywave/errors.hpp"

namespace levywave {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

double green(double t, double x, double s, double y) {
    if (s < 0.0 || s > t) return 0.0;
    return std::abs(y - x) <= t - s ? 0.5 : 0.0;
}

bool preceq(const ConePoint& a, const ConePoint& b) { return a.t <= b.t && std::abs(a.x - b.x) <= b.t - a.t; }

RotatedPoint rotate(const ConePoint& p, const ConePoint& origin) {
    const double dt = p.t - origin.t, dx = p.x - origin.x;
    return {kInvSqrt2 * (dt - dx), kInvSqrt2 * (dt + dx)};
}

ConePoint unrotate(const RotatedPoint& v, const ConePoint& origin) {
    return {origin.t + kInvSqrt2 * (v.v1 + v.v2), origin.x + kInvSqrt2 * (v.v2 - v.v1)};
}

RotatedPoint j_map(const ConePoint& p, const ConePoint& origin, double scale) {
    const RotatedPoint v = rotate(p, origin);
    return {scale * v.v1, scale * v.v2};
}

double green_power_integral(double t, int p) { return std::pow(0.5, p) * t * t; }

ConePoint RotatedLattice::node(std::size_t i, std::size_t j) const {
    return from_rotated({spacing * static_cast<double>(i), spacing * static_cast<double>(j)});
}

NodeIndex RotatedLattice::upper_node(const ConePoint& p) const {
    const RotatedPoint v = to_rotated(p);
    auto snap = [this](double c, std::size_t n) {
        const double r = c / spacing;
        double k = std::ceil(r);
        if (std::abs(r - std::round(r)) < 1e-9) k = std::round(r);
        if (k < 0.0 || k > static_cast<double>(n)) throw Error(ErrorCode::OutOfDomain, "point outside lattice");
        return static_cast<std::size_t>(k);
    };
    return {snap(v.v1, n1), snap(v.v2, n2)};
}

std::size_t apex_index(const Domain& domain, double spacing) {
    const double w = 0.5 * (domain.x_hi - domain.x_lo);
    return static_cast<std::size_t>(std::ceil((domain.T + w) / (std::numbers::sqrt2 * spacing) - 1e-12));
}

RotatedLattice make_lattice(const Domain& domain, double spacing) {
    if (!(spacing > 0.0)) throw Error(ErrorCode::ShapeMismatch, "lattice spacing must be positive");
    const double w = 0.5 * (domain.x_hi - domain.x_lo);
    const double c = 0.5 * (domain.x_hi + domain.x_lo);
    const std::size_t m = apex_index(domain, spacing);
    const double t0 = domain.T - std::numbers::sqrt2 * spacing * static_cast<double>(m);
    const auto n = static_cast<std::size_t>(std::floor(static_cast<double>(m) + w / (std::numbers::sqrt2 * spacing))) + 1;
    return RotatedLattice{{t0, c}, spacing, n, n};
}

Polygon cell_preimage(const RotatedLattice& lattice, std::size_t i, std::size_t j) {
    const double a = lattice.spacing * static_cast<double>(i), b = lattice.spacing * static_cast<double>(j);
    const double d = lattice.spacing;
    // counter-clockwise in (t, x)
    return {lattice.from_rotated({a, b}), lattice.from_rotated({a + d, b}), lattice.from_rotated({a + d, b + d}),
            lattice.from_rotated({a, b + d})};
}

Polygon clip_to_domain(const Polygon& poly, const Domain& domain) {
    // Sutherland-Hodgman against the four half-planes of the rectangle
    struct Edge {
        bool on_t;
        double bound;
        bool keep_above;
    };
    const Edge edges[4] = {{true, 0.0, true}, {true, domain.T, false}, {false, domain.x_lo, true},
                           {false, domain.x_hi, false}};
    Polygon out = poly;
    for (const Edge& e : edges) {
        if (out.empty()) break;
        auto coord = [&e](const ConePoint& p) { return e.on_t ? p.t : p.x; };
        auto inside = [&](const ConePoint& p) { return e.keep_above ? coord(p) >= e.bound : coord(p) <= e.bound; };
        Polygon in = std::move(out);
        out.clear();
        for (std::size_t k = 0; k < in.size(); ++k) {
            const ConePoint& cur = in[k];
            const ConePoint& prev = in[(k + in.size() - 1) % in.size()];
            const bool ci = inside(cur), pi = inside(prev);
            if (ci != pi) {
                const double s = (e.bound - coord(prev)) / (coord(cur) - coord(prev));
                ConePoint q{prev.t + s * (cur.t - prev.t), prev.x + s * (cur.x - prev.x)};
                if (e.on_t)
                    q.t = e.bound;
                else
                    q.x = e.bound;
                out.push_back(q);
            }
            if (ci) out.push_back(cur);
        }
    }
    return out;
}

double polygon_area(const Polygon& poly) {
    double a = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const ConePoint& p = poly[k];
        const ConePoint& q = poly[(k + 1) % poly.size()];
        a += p.t * q.x - q.t * p.x;
    }
    return std::abs(0.5 * a);
}

ConePoint polygon_centroid(const Polygon& poly) {
    double a = 0.0, ct = 0.0, cx = 0.0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const ConePoint& p = poly[k];
        const ConePoint& q = poly[(k + 1) % poly.size()];
        const double cr = p.t * q.x - q.t * p.x;
        a += cr;
        ct += (p.t + q.t) * cr;
        cx += (p.x + q.x) * cr;
    }
    if (a == 0.0) {
        ConePoint m{};
        for (const auto& p : poly) {
            m.t += p.t / static_cast<double>(poly.size());
            m.x += p.x / static_cast<double>(poly.size());
        }
        return m;
    }
    return {ct / (3.0 * a), cx / (3.0 * a)};
}

std::shared_ptr<const CellGeometry> make_cell_geometry(const RotatedLattice& lattice, const Domain& domain) {
    auto g = std::make_shared<CellGeometry>();
    g->lattice = lattice;
    g->domain = domain;
    g->area.assign(lattice.cells(), 0.0);
    g->centroid.assign(lattice.cells(), ConePoint{});
    for (std::size_t i = 0; i < lattice.n1; ++i)
        for (std::size_t j = 0; j < lattice.n2; ++j) {
            const Polygon diamond = cell_preimage(lattice, i, j);
            const Polygon clipped = clip_to_domain(diamond, domain);
            const std::size_t k = g->index(i, j);
            if (clipped.size() < 3) {
                g->centroid[k] = polygon_centroid(diamond);
                continue;
            }
            g->area[k] = polygon_area(clipped);
            g->centroid[k] = polygon_centroid(clipped);
        }
    return g;
}

}  // namespace levywave
