#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace levywave {

struct ConePoint {
    double t = 0.0;
    double x = 0.0;

    bool operator==(const ConePoint&) const = default;
};

struct RotatedPoint {
    double v1 = 0.0;
    double v2 = 0.0;
};

// Space-time rectangle [0, T] x [x_lo, x_hi].
struct Domain {
    double T = 1.0;
    double x_lo = -1.0;
    double x_hi = 2.0;

    double area() const { return T * (x_hi - x_lo); }
    bool contains(const ConePoint& p) const { return p.t >= 0.0 && p.t <= T && p.x >= x_lo && p.x <= x_hi; }
};

// Wave Green's function: 1/2 on the closed backward cone of (t, x), restricted to s >= 0.
double green(double t, double x, double s, double y);

// a ≼ b: a lies in the closed backward cone of b.
bool preceq(const ConePoint& a, const ConePoint& b);

// H (p - origin), H = (1/sqrt2) [[1, -1], [1, 1]].
RotatedPoint rotate(const ConePoint& p, const ConePoint& origin);
ConePoint unrotate(const RotatedPoint& v, const ConePoint& origin);

// scale * H (p - origin); with origin (-3/2, 1/2) and scale sqrt2/3 it maps the
// order interval between (-3/2, 1/2) and (3/2, 1/2) onto the unit square.
RotatedPoint j_map(const ConePoint& p, const ConePoint& origin, double scale);

// Exact value of ∫_0^t ∫ G(t, x, s, y)^p dy ds.
double green_power_integral(double t, int p);

struct NodeIndex {
    std::size_t i = 0;
    std::size_t j = 0;
};

// Square cells [iΔ, (i+1)Δ) x [jΔ, (j+1)Δ) in rotated coordinates; nodes 0..n1 x 0..n2.
struct RotatedLattice {
    ConePoint origin;
    double spacing = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;

    RotatedPoint to_rotated(const ConePoint& p) const { return rotate(p, origin); }
    ConePoint from_rotated(const RotatedPoint& v) const { return unrotate(v, origin); }
    ConePoint node(std::size_t i, std::size_t j) const;
    std::size_t cells() const { return n1 * n2; }

    // Componentwise smallest node ⪰ p; throws OutOfDomain if outside the lattice.
    NodeIndex upper_node(const ConePoint& p) const;
    bool operator==(const RotatedLattice&) const = default;
};

// Lattice covering the domain whose node (m, m) sits at (T, centre of window),
// with both axes below t = 0 over the whole window.
RotatedLattice make_lattice(const Domain& domain, double spacing);

// Index m of the apex node (T, centre) for a lattice built by make_lattice.
std::size_t apex_index(const Domain& domain, double spacing);

using Polygon = std::vector<ConePoint>;

Polygon cell_preimage(const RotatedLattice& lattice, std::size_t i, std::size_t j);
Polygon clip_to_domain(const Polygon& poly, const Domain& domain);
double polygon_area(const Polygon& poly);
ConePoint polygon_centroid(const Polygon& poly);

// Per-cell area of the pre-image diamond clipped to the domain, and its centroid.
struct CellGeometry {
    RotatedLattice lattice;
    Domain domain;
    std::vector<double> area;
    std::vector<ConePoint> centroid;

    std::size_t index(std::size_t i, std::size_t j) const { return i * lattice.n2 + j; }
};

std::shared_ptr<const CellGeometry> make_cell_geometry(const RotatedLattice& lattice, const Domain& domain);

}  // namespace levywave
