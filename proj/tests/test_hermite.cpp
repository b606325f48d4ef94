#include <doctest.h>

#include <cmath>
#include <numbers>

#include "levywave/errors.hpp"
#include "levywave/hermite.hpp"
#include "levywave/quadrature.hpp"
#include "levywave/vprocess.hpp"

using namespace levywave;

namespace {
const double pi_q = std::pow(std::numbers::pi, -0.25);
}

TEST_CASE("hermite function values") {
    CHECK(hermite_eval(0, 0.0) == doctest::Approx(pi_q).epsilon(1e-15));
    CHECK(hermite_eval(0, 0.0) == doctest::Approx(0.751126).epsilon(1e-6));
    CHECK(hermite_eval(1, 0.0) == 0.0);
    CHECK(hermite_eval(1, 1.0) == doctest::Approx(std::sqrt(2.0) * pi_q * std::exp(-0.5)).epsilon(1e-14));
    CHECK(hermite_eval(1, 1.0) == doctest::Approx(0.644289).epsilon(1e-6));
    CHECK(hermite_deriv(0, 0.0) == 0.0);
    // far tails stay finite and tiny
    CHECK(std::isfinite(hermite_eval(200, 40.0)));
    CHECK(std::abs(hermite_eval(10, 60.0)) < 1e-300);
}

TEST_CASE("hermite_all matches single evaluations") {
    for (double x : {-3.7, 0.0, 0.25, 5.5}) {
        const auto h = hermite_all(40, x);
        REQUIRE(h.size() == 41);
        for (int q = 0; q <= 40; ++q) CHECK(h[q] == doctest::Approx(hermite_eval(q, x)).epsilon(1e-13));
        std::vector<double> hh, dh;
        hermite_all_with_deriv(40, x, hh, dh);
        for (int q = 0; q <= 40; ++q) CHECK(dh[q] == doctest::Approx(hermite_deriv(q, x)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("orthonormality") {
    const QuadratureGrid g = composite_gauss_legendre(-16.0, 16.0, kHermitePanel);
    std::vector<std::vector<double>> h(g.nodes.size());
    for (std::size_t k = 0; k < g.nodes.size(); ++k) h[k] = hermite_all(50, g.nodes[k]);
    double worst = 0.0;
    for (int p = 0; p <= 50; ++p)
        for (int q = p; q <= 50; ++q) {
            double s = 0.0;
            for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * h[k][p] * h[k][q];
            worst = std::max(worst, std::abs(s - (p == q ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-8);
}

TEST_CASE("derivative norms and finite differences") {
    const QuadratureGrid g = composite_gauss_legendre(-14.0, 14.0, kHermitePanel);
    for (int q = 0; q <= 20; ++q) {
        double s = 0.0;
        for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * std::pow(hermite_deriv(q, g.nodes[k]), 2);
        CHECK(std::abs(s - (q + 0.5)) < 1e-8);
    }
    const double d = 1e-5;
    for (int q = 0; q <= 10; ++q)
        for (double x : {-2.0, 0.0, 3.0})
            CHECK(std::abs((hermite_eval(q, x + d) - hermite_eval(q, x - d)) / (2 * d) - hermite_deriv(q, x)) < 1e-6);
}

TEST_CASE("oscillator equation") {
    double worst = 0.0;
    for (int q = 0; q <= 30; ++q)
        for (double x = -5.0; x <= 5.0; x += 0.137) {
            // h'' from the recursion applied twice
            const double a = std::sqrt(q / 2.0), b = std::sqrt((q + 1) / 2.0);
            const double h2 = a * (q > 0 ? hermite_deriv(q - 1, x) : 0.0) - b * hermite_deriv(q + 1, x);
            worst = std::max(worst, std::abs(h2 + (1.0 + 2.0 * q - x * x) * hermite_eval(q, x)));
        }
    CHECK(worst < 1e-6);
}

TEST_CASE("projection") {
    const HermiteCoeffs c3 = project([](double x) { return hermite_eval(3, x); }, 20, 12.0);
    for (int q = 0; q <= 20; ++q) CHECK(std::abs(c3.coeffs[q] - (q == 3 ? 1.0 : 0.0)) < 1e-8);

    const HermiteCoeffs z = project([](double) { return 0.0; }, 10, 7.0);
    for (double c : z.coeffs) CHECK(c == 0.0);

    try {
        project([](double x) { return std::exp(-0.01 * x * x); }, 5, 7.0);
        FAIL("expected WindowTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowTooSmall);
    }

    // bump on (0,1): A = -d² + x² has A h_q = (1+2q) h_q, so |c_q| (1+2q)² <= ||A²φ||
    const TestFunction bump = make_bump(0.5, 0.5);
    const HermiteCoeffs cb = project(bump.phi, 64, 7.0);
    const auto a_phi = [&](double x) { return -bump.d2(x) + x * x * bump.phi(x); };
    const double d = 1e-4;
    const auto a2_phi = [&](double x) {
        return -(a_phi(x + d) - 2.0 * a_phi(x) + a_phi(x - d)) / (d * d) + x * x * a_phi(x);
    };
    const double C = std::sqrt(integrate([&](double x) { return std::pow(a2_phi(x), 2); }, 0.0, 1.0, 1e-8));
    for (int q = 0; q <= 64; ++q) CHECK(std::abs(cb.coeffs[q]) <= C * std::pow(1.0 + 2.0 * q, -2.0));
    // Parseval for A φ bounds the weighted partial sum
    double weighted = 0.0;
    for (int q = 0; q <= 64; ++q) weighted += std::pow((1.0 + 2.0 * q) * cb.coeffs[q], 2);
    const double a_norm2 = integrate([&](double x) { return std::pow(a_phi(x), 2); }, 0.0, 1.0, 1e-10);
    CHECK(weighted <= a_norm2 * (1.0 + 1e-6));
}

TEST_CASE("norms") {
    CHECK(dual_norm(std::vector<double>{1.0, 0.0, 0.0}, 3.0) == 1.0);
    CHECK(dual_norm(std::vector<double>{0.0, 1.0, 0.0}, 3.0) == doctest::Approx(std::pow(3.0, -1.5)));
    CHECK(dual_norm(std::vector<double>{0.0, 1.0, 0.0}, 3.0) == doctest::Approx(0.19245).epsilon(1e-5));
    const std::vector<double> c{0.3, -1.2, 0.5, 2.0};
    CHECK(dual_norm(c, 0.0) == doctest::Approx(std::sqrt(0.09 + 1.44 + 0.25 + 4.0)));
    double prev = dual_norm(c, 0.0);
    for (double r = 0.25; r <= 6.0; r += 0.25) {
        const double n = dual_norm(c, r);
        CHECK(n <= prev);
        prev = n;
    }
    CHECK(primal_norm(HermiteCoeffs{{0.0, 1.0}, 3.0}, 2.0) == doctest::Approx(3.0));
    CHECK(std::isinf(dual_tail_bound(c, 2.0)));
    CHECK(dual_tail_bound(c, 3.0) > 0.0);
}
