#include <doctest.h>

#include <cmath>

#include "levywave/errors.hpp"
#include "levywave/hermite.hpp"
#include "levywave/vprocess.hpp"

using namespace levywave;

namespace {

const Domain window{1.0, -1.0, 2.0};

EventSolution single_jump(double s0, double y0, double z, double sigma, const Nonlinearity& f) {
    JumpRecord rec;
    rec.domain = window;
    rec.jumps.push_back({s0, y0, z});
    return solve_event_driven(rec, f, sigma);
}

}  // namespace

TEST_CASE("v coefficients without noise vanish") {
    JumpRecord rec;
    rec.domain = window;
    const EventSolution sol = solve_event_driven(rec, Affine{0.5, 1.0}, 1.0);
    const auto times = default_output_times(1.0, 9);
    for (const VPath& v : {v_coeffs_direct(sol, times, 10), v_coeffs_semimart(sol, times, 10, 1.0 / 64.0)})
        for (const auto& row : v.coeffs)
            for (double c : row) CHECK(c == 0.0);
}

TEST_CASE("single jump direct formula") {
    const double s0 = 0.3, y0 = 0.2, z = 1.4, sigma = 0.7;
    const EventSolution sol = single_jump(s0, y0, z, sigma, Affine{0.0, 1.0});
    const auto times = default_output_times(1.0, 11);
    const VPath v = v_coeffs_direct(sol, times, 12);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        for (int q = 0; q <= 12; ++q) {
            const double expect =
                t < s0 ? 0.0 : 0.5 * (hermite_eval(q, y0 + (t - s0)) + hermite_eval(q, y0 - (t - s0))) * z / sigma;
            CHECK(v.coeffs[k][q] == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
        }
    }
    // v_0 = 0
    for (double c : v.coeffs.front()) CHECK(c == 0.0);
}

TEST_CASE("semimartingale form converges to the direct form") {
    const EventSolution sol = single_jump(0.3, 0.2, 1.0, 1.0, Affine{0.0, 1.0});
    const auto times = default_output_times(1.0, 9);
    const VPath direct = v_coeffs_direct(sol, times, 16);
    double prev = 0.0;
    for (double step : {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0}) {
        const double err = max_row_dual_distance(direct, v_coeffs_semimart(sol, times, 16, step), 3.0);
        if (prev > 0.0) CHECK(std::log2(prev / err) >= 1.9);
        prev = err;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("pairing through hermite coefficients") {
    const EventSolution sol = single_jump(0.2, 0.4, 1.0, 1.0, Affine{0.0, 1.0});
    const TestFunction bump = make_bump(0.5, 0.9);
    const auto times = default_output_times(1.0, 5);
    const AtomPath path(atoms_from_event(sol), window, Affine{0.0, 1.0});
    std::vector<double> worst;
    for (int q : {16, 48, 128}) {
        const VPath v = v_coeffs_direct(sol, times, q);
        const HermiteCoeffs pc = project(bump.phi, q, 7.0);
        double w = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            w = std::max(w, std::abs(v_pair_hermite(v, k, pc) - path.v_pair(times[k], bump)));
        worst.push_back(w);
    }
    CHECK(worst[1] < worst[0]);
    CHECK(worst[2] < worst[1]);
    // the remaining gap is the truncated series of φ evaluated on the jump trace
    const HermiteCoeffs pc = project(bump.phi, 128, 7.0);
    const VPath v = v_coeffs_direct(sol, times, 128);
    auto series = [&](double x) {
        const auto h = hermite_all(128, x);
        double s = 0.0;
        for (int q = 0; q <= 128; ++q) s += pc.coeffs[q] * h[q];
        return s;
    };
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double tau = times[k] - 0.2;
        const double expect = tau < 0.0 ? 0.0 : 0.5 * (series(0.4 + tau) + series(0.4 - tau));
        CHECK(v_pair_hermite(v, k, pc) == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("magic pair identities") {
    const TestFunction phi = make_bump(0.5, 0.3);
    const double t = 0.8;
    const MagicPair mp = magic_pair(phi, t);
    for (double y = -0.5; y <= 1.5; y += 0.05) {
        CHECK(std::abs(mp.psi2(t, y)) < 1e-15);
        CHECK(mp.psi1(t, y) == doctest::Approx(phi.phi(y)).epsilon(1e-14));
    }
    const double d = 1e-4;
    double worst = 0.0, wave = 0.0;
    for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) {
            const double s = 0.05 + 0.7 * a / 19.0, y = -0.2 + 1.4 * b / 19.0;
            worst = std::max(worst, std::abs((mp.psi2(s + d, y) - mp.psi2(s - d, y)) / (2 * d) + mp.psi1(s, y)));
            const double tt = (mp.psi2(s + d, y) - 2 * mp.psi2(s, y) + mp.psi2(s - d, y)) / (d * d);
            const double xx = (mp.psi2(s, y + d) - 2 * mp.psi2(s, y) + mp.psi2(s, y - d)) / (d * d);
            wave = std::max(wave, std::abs(tt - xx));
        }
    CHECK(worst < 1e-6);
    CHECK(wave < 1e-4);

    const MagicPair zero = magic_pair(zero_test_function(), t);
    CHECK(zero.psi1(0.3, 0.1) == 0.0);
    CHECK(zero.psi2(0.3, 0.1) == 0.0);
}

TEST_CASE("weak residual") {
    const TestFunction p1 = make_bump(0.5, 0.3), p2 = make_bump(0.6, 0.25);
    JumpRecord rec;
    rec.domain = window;
    const EventSolution none = solve_event_driven(rec, Affine{1.0, 0.0}, 1.0);
    const AtomPath quiet(atoms_from_event(none), window, Affine{1.0, 0.0});
    CHECK(weak_residual(quiet, p1, p2, 1.0, 1.0 / 64.0) == 0.0);

    // jump trace misses the support of φ2 at and before t
    const EventSolution one = single_jump(0.1, -0.6, 1.0, 1.0, Affine{0.0, 1.0});
    const AtomPath path(atoms_from_event(one), window, Affine{0.0, 1.0});
    const TestFunction narrow = make_bump(1.2, 0.1);
    CHECK(std::abs(weak_residual(path, p1, narrow, 1.0, 1.0 / 128.0)) < 1e-3);

    const TestFunction outside = make_bump(1.9, 0.3);
    try {
        weak_residual(path, outside, p2, 1.0, 1.0 / 64.0);
        FAIL("expected SupportViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SupportViolation);
    }
}

TEST_CASE("grid path and atom path agree on the same record") {
    JumpRecord rec;
    rec.domain = window;
    rec.jumps = {{0.15, 0.3, 0.9}, {0.4, 0.55, -0.6}, {0.62, 0.8, 0.4}};
    const Affine f{0.5, 1.0};
    const EventSolution ev = solve_event_driven(rec, f, 1.0);
    const AtomPath atoms(atoms_from_event(ev), window, f);
    const auto geom = make_cell_geometry(make_lattice(window, 1.0 / 128.0), window);
    const CellIncrements inc = levy_cell_increments(rec, geom, 1.0);
    const GridPath grid(solve_grid(inc, f), inc, f);
    const TestFunction bump = make_bump(0.5, 0.4);
    for (double t : {0.5, 1.0}) {
        CHECK(std::abs(grid.u_pair(t, bump, 0) - atoms.u_pair(t, bump, 0)) < 0.02);
        CHECK(std::abs(grid.v_pair(t, bump) - atoms.v_pair(t, bump)) < 0.05);
    }
}

TEST_CASE("gaussian v coefficients follow the isometry") {
    const auto geom = make_cell_geometry(make_lattice(window, 1.0 / 32.0), window);
    const Affine f{0.0, 1.0};
    const double t = 1.0;
    const int qmax = 2, n = 600;
    std::vector<std::vector<double>> samples(qmax + 1);
    for (int p = 0; p < n; ++p) {
        Rng rng = make_path_rng(77, static_cast<std::uint64_t>(p));
        const CellIncrements inc = gaussian_cell_increments(geom, rng);
        const VPath v = v_coeffs_direct(solve_grid(inc, f), inc, {t}, qmax, f);
        for (int q = 0; q <= qmax; ++q) samples[q].push_back(v.coeffs[0][q]);
    }
    for (int q = 0; q <= qmax; ++q) {
        double kernel = 0.0;
        for (std::size_t k = 0; k < geom->area.size(); ++k) {
            if (geom->area[k] == 0.0 || geom->centroid[k].t > t) continue;
            const double tau = t - geom->centroid[k].t, y = geom->centroid[k].x;
            kernel += 0.25 * std::pow(hermite_eval(q, y + tau) + hermite_eval(q, y - tau), 2) * geom->area[k];
        }
        double m = 0.0, m2 = 0.0, m4 = 0.0;
        for (double x : samples[q]) m += x;
        m /= n;
        for (double x : samples[q]) {
            m2 += (x - m) * (x - m);
            m4 += std::pow(x - m, 4);
        }
        m2 /= n - 1;
        m4 /= n;
        const double se = std::sqrt((m4 - m2 * m2) / n);
        CHECK(std::abs(m2 - kernel) < 3.0 * se);
        CHECK(kernel <= t * (1.0 + 0.1));
    }
}
