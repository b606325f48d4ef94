#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "levywave/errors.hpp"
#include "levywave/quadrature.hpp"
#include "levywave/wave_kernel.hpp"

using namespace levywave;

TEST_CASE("green function values") {
    CHECK(green(1.0, 0.0, 0.0, 0.5) == 0.5);
    CHECK(green(1.0, 0.0, 0.0, 2.0) == 0.0);
    CHECK(green(1.0, 0.0, 0.0, 1.0) == 0.5);
    CHECK(green(1.0, 0.0, 1.5, 0.0) == 0.0);
}

TEST_CASE("partial order") {
    CHECK(preceq({0.0, 0.0}, {1.0, 0.5}));
    CHECK_FALSE(preceq({0.0, 0.0}, {1.0, 1.5}));
    const ConePoint a{0.3, -0.7};
    CHECK(preceq(a, a));
}

TEST_CASE("rotation and J map") {
    const RotatedPoint v = rotate({1.0, 1.0}, {0.0, 0.0});
    CHECK(v.v1 == doctest::Approx(0.0));
    CHECK(v.v2 == doctest::Approx(std::numbers::sqrt2));

    const ConePoint u0{-1.5, 0.5};
    const double scale = std::numbers::sqrt2 / 3.0;
    const RotatedPoint a = j_map(u0, u0, scale), b = j_map({1.5, 0.5}, u0, scale);
    CHECK(a.v1 == 0.0);
    CHECK(a.v2 == 0.0);
    CHECK(b.v1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b.v2 == doctest::Approx(1.0).epsilon(1e-14));

    // unit square keeps its area
    Polygon sq;
    for (auto [p, q] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) sq.push_back(unrotate({p, q}, {0.0, 0.0}));
    CHECK(std::abs(polygon_area(sq)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rotation round trip and order isomorphism") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> t(0.0, 2.0), x(-2.0, 2.0);
    const ConePoint origin{-0.4, 0.3};
    for (int k = 0; k < 1000; ++k) {
        const ConePoint a{t(rng), x(rng)}, b{t(rng), x(rng)};
        const ConePoint back = unrotate(rotate(a, origin), origin);
        CHECK(std::abs(back.t - a.t) < 1e-12);
        CHECK(std::abs(back.x - a.x) < 1e-12);
        const RotatedPoint ra = rotate(a, origin), rb = rotate(b, origin);
        CHECK(preceq(a, b) == (ra.v1 <= rb.v1 + 1e-15 && ra.v2 <= rb.v2 + 1e-15));
    }
}

TEST_CASE("forward and backward cone duality") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const ConePoint apex{1.0 + u(rng) * 0.5, u(rng)}, p{1.0 + u(rng), u(rng)};
        CHECK(preceq(apex, p) == (green(p.t, p.x, apex.t, apex.x) > 0.0 || (p == apex)));
    }
}

TEST_CASE("integral of green powers") {
    for (int p : {1, 2})
        for (double t : {0.5, 1.0}) {
            // inner integral over y in [x-(t-s), x+(t-s)] done by breakpoints
            const double q = integrate(
                [&](double s) {
                    return integrate_pieces([&](double y) { return std::pow(green(t, 0.0, s, y), p); },
                                            {-(t - s), t - s});
                },
                0.0, t, 1e-13);
            CHECK(std::abs(q - green_power_integral(t, p)) < 1e-10);
            CHECK(green_power_integral(t, p) == doctest::Approx(std::pow(0.5, p) * t * t));
        }
}

TEST_CASE("lattice anchors the probe point at a node") {
    const Domain d{1.0, -1.0, 2.0};
    for (double spacing : {1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0}) {
        const RotatedLattice lat = make_lattice(d, spacing);
        const std::size_t m = apex_index(d, spacing);
        const ConePoint apex = lat.node(m, m);
        CHECK(std::abs(apex.t - 1.0) < 1e-12);
        CHECK(std::abs(apex.x - 0.5) < 1e-12);
        const NodeIndex idx = lat.upper_node({1.0, 0.5});
        CHECK(idx.i == m);
        CHECK(idx.j == m);
        // every corner of the window lies inside the lattice rectangle
        for (const ConePoint c : {ConePoint{0.0, -1.0}, {0.0, 2.0}, {1.0, -1.0}, {1.0, 2.0}}) {
            const RotatedPoint v = lat.to_rotated(c);
            CHECK(v.v1 >= 0.0);
            CHECK(v.v2 >= 0.0);
            CHECK(v.v1 <= spacing * lat.n1);
            CHECK(v.v2 <= spacing * lat.n2);
        }
    }
    CHECK_THROWS_AS(make_lattice(d, 0.0), Error);
}

TEST_CASE("upper node snapping") {
    const RotatedLattice lat{{0.0, 0.0}, 0.25, 8, 8};
    const ConePoint n = lat.node(3, 5);
    const NodeIndex at = lat.upper_node(n);
    CHECK(at.i == 3);
    CHECK(at.j == 5);
    const ConePoint inside = lat.from_rotated({0.25 * 3.4, 0.25 * 5.2});
    const NodeIndex up = lat.upper_node(inside);
    CHECK(up.i == 4);
    CHECK(up.j == 6);
    try {
        lat.upper_node(lat.from_rotated({-0.5, 0.1}));
        FAIL("expected OutOfDomain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfDomain);
    }
}

TEST_CASE("cell geometry partitions the window") {
    const Domain d{1.0, -1.0, 2.0};
    const auto geom = make_cell_geometry(make_lattice(d, 1.0 / 16.0), d);
    double total = 0.0;
    for (std::size_t k = 0; k < geom->area.size(); ++k) {
        CHECK(geom->area[k] >= 0.0);
        CHECK(geom->area[k] <= geom->lattice.spacing * geom->lattice.spacing * (1.0 + 1e-12));
        total += geom->area[k];
        if (geom->area[k] > 0.0) CHECK(d.contains(geom->centroid[k]));
    }
    CHECK(total == doctest::Approx(d.area()).epsilon(1e-12));
}
