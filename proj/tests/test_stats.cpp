#include <doctest.h>

#include <cmath>
#include <random>

#include "levywave/errors.hpp"
#include "levywave/stats.hpp"

using namespace levywave;

TEST_CASE("two sample KS statistic") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    CHECK(ks_two_sample(a, a) == 0.0);
    CHECK(ks_two_sample({0.0, 1.0}, {5.0, 6.0}) == 1.0);
    CHECK(ks_two_sample(a, {1.5, 2.5, 3.5}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{}, a), Error);
}

TEST_CASE("KS properties") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(50 + trial), b(80), c(65);
        for (double& v : a) v = z(rng);
        for (double& v : b) v = z(rng) + 0.3;
        for (double& v : c) v = 2.0 * z(rng);
        const double ab = ks_two_sample(a, b);
        CHECK(ab == ks_two_sample(b, a));
        CHECK(ab <= 1.0);
        CHECK(ab <= ks_two_sample(a, c) + ks_two_sample(c, b) + 1e-15);
        auto tr = [](std::vector<double> v) {
            for (double& x : v) x = std::exp(x) + x * x * x;
            return v;
        };
        CHECK(ks_two_sample(tr(a), tr(b)) == doctest::Approx(ab).epsilon(1e-15));
    }
}

TEST_CASE("moment report") {
    SampleSet constant{std::vector<double>(10, 2.5), "c", 0};
    const StatsReport c = moment_report(constant);
    CHECK(c.get("mean").value == 2.5);
    CHECK(c.get("variance").value == 0.0);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    SampleSet normal{{}, "n", 1};
    for (int k = 0; k < 100000; ++k) normal.values.push_back(z(rng));
    const StatsReport r = moment_report(normal);
    const StatEntry& var = r.get("variance");
    REQUIRE(var.std_error.has_value());
    CHECK(std::abs(var.value - 1.0) < 3.0 * *var.std_error);
    CHECK(*var.std_error == doctest::Approx(std::sqrt(2.0 / 1e5)).epsilon(0.05));
    CHECK(std::abs(r.get("skewness").value) < 3.0 * *r.get("skewness").std_error);
    CHECK(std::abs(r.get("excess_kurtosis").value) < 3.0 * *r.get("excess_kurtosis").std_error);
    CHECK(r.to_json()["statistics"].size() == r.entries.size());

    CHECK_THROWS_AS(moment_report(SampleSet{{1.0}, "one", 0}), Error);
    CHECK_THROWS_AS(r.get("median"), Error);
}

TEST_CASE("martingale orthogonality") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    std::vector<double> inc(10000), past(10000);
    for (std::size_t k = 0; k < inc.size(); ++k) {
        inc[k] = z(rng);
        past[k] = z(rng);
    }
    const auto indep = martingale_orthogonality(inc, past);
    CHECK(indep.pass);
    CHECK(indep.n == 10000);

    const auto leak = martingale_orthogonality(inc, inc);
    CHECK(leak.correlation == doctest::Approx(1.0));
    CHECK(leak.z > 3.0);
    CHECK_FALSE(leak.pass);

    // constant functional turns into a mean test
    const std::vector<double> ones(inc.size(), 1.0);
    CHECK(martingale_orthogonality(inc, ones).pass);
    std::vector<double> shifted = inc;
    for (double& v : shifted) v += 0.5;
    CHECK_FALSE(martingale_orthogonality(shifted, ones).pass);

    CHECK_THROWS_AS(martingale_orthogonality(inc, std::vector<double>(5, 0.0)), Error);
}

namespace {

const Domain window{1.0, -1.0, 2.0};

AtomPath one_jump_path(const Nonlinearity& f) {
    JumpRecord rec;
    rec.domain = window;
    rec.jumps.push_back({0.3, 0.5, 0.8});
    return AtomPath(atoms_from_event(solve_event_driven(rec, f, 1.0)), window, f, 1.0 / 64.0);
}

}  // namespace

TEST_CASE("jump compensator density") {
    const LevyMeasureSpec pm{PointMass{1.0, 2.0}, 2.0};
    CompensatorSetup s;
    s.spec = &pm;
    s.floor = 0.5;
    for (double theta : {0.1, 0.7, 2.0}) {
        const auto v = jump_compensator_density(s, theta);
        CHECK(v.real() == doctest::Approx(2.0 * (std::cos(theta) - 1.0)).epsilon(1e-13));
        CHECK(v.imag() == doctest::Approx(2.0 * (std::sin(theta) - theta)).epsilon(1e-13));
    }
    CHECK(jump_compensator_density(s, 0.0) == std::complex<double>(0.0, 0.0));

    // small θ: quadratic coefficient -σ²/2 after the 1/σ rescaling
    const LevyMeasureSpec st{AlphaStableSymmetric{1.5}, 0.1};
    CompensatorSetup g;
    g.spec = &st;
    g.sigma = std::sqrt(sigma2(st));
    const double theta = 1e-3;
    CHECK(std::abs(jump_compensator_density(g, theta).real() / (-0.5 * theta * theta) - 1.0) < 1e-4);

    CompensatorSetup gauss;
    CHECK(jump_compensator_density(gauss, 0.5).real() == -0.125);
}

TEST_CASE("compensator path") {
    const Affine f{0.5, 1.0};
    const AtomPath path = one_jump_path(f);
    CompensatorSetup s;
    s.phi1 = make_bump(0.5, 0.4);
    s.phi2 = make_bump(0.5, 0.3);
    s.times = {0.0, 0.25, 0.5, 0.75, 1.0};

    s.xi = 0.0;
    const CompensatorPath zero = compensator_A(path, s);
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        CHECK(zero.A[k] == std::complex<double>(0.0, 0.0));
        CHECK(zero.M[k] == std::complex<double>(1.0, 0.0));
    }

    // PointMass: jump part is λ(e^{iθ} - 1 - iθ) summed over nodes
    const LevyMeasureSpec pm{PointMass{1.0, 2.0}, 2.0};
    s.xi = 0.4;
    s.spec = &pm;
    s.floor = 0.5;
    const CompensatorPath p = compensator_A(path, s);
    CHECK(p.A.front() == std::complex<double>(0.0, 0.0));
    std::complex<double> expect = 0.0;
    for (const auto& node : path.space_time_nodes()) {
        if (node.s > 1.0) continue;
        const double th = s.xi * node.f_value * s.phi2.phi(node.y);
        expect += 2.0 * (std::exp(std::complex<double>(0.0, th)) - 1.0 - std::complex<double>(0.0, th)) * node.area;
    }
    s.xi = 0.4;
    CompensatorSetup drift_only = s;
    drift_only.spec = nullptr;
    const CompensatorPath d = compensator_A(path, drift_only);
    // drift terms are identical, so the difference isolates the jump part
    double gauss_part = 0.0;
    for (const auto& node : path.space_time_nodes()) {
        if (node.s > 1.0) continue;
        const double th = s.xi * node.f_value * s.phi2.phi(node.y);
        gauss_part += -0.5 * th * th * node.area;
    }
    const auto jump_only = p.A.back() - d.A.back() + gauss_part;
    CHECK(jump_only.real() == doctest::Approx(expect.real()).epsilon(1e-10));
    CHECK(jump_only.imag() == doctest::Approx(expect.imag()).epsilon(1e-10));
}
