#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "levywave/cli.hpp"
#include "levywave/experiments.hpp"
#include "levywave/quadrature.hpp"

namespace levywave {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

CheckResult sigma2_closed_forms() {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 1.5})
        for (double eps : {1.0, 0.1, 1e-3}) {
            const LevyMeasureSpec s{AlphaStableSymmetric{alpha}, eps};
            worst = std::max(worst, std::abs(sigma2_quadrature(s) / sigma2(s) - 1.0));
        }
    for (double rate : {0.5, 1.0, 4.0})
        for (double eps : {1.0, 0.1, 1e-3}) {
            const LevyMeasureSpec s{GammaSubordinator{rate}, eps};
            worst = std::max(worst, std::abs(sigma2_quadrature(s) / sigma2(s) - 1.0));
        }
    return {"sigma2_closed_form_matches_quadrature", worst < 1e-8, "max rel err " + fmt(worst)};
}

CheckResult ar_ratio_monotone_in_kappa() {
    bool ok = true;
    for (const LevyMeasureSpec& s : {LevyMeasureSpec{AlphaStableSymmetric{1.5}, 1.0}, LevyMeasureSpec{GammaSubordinator{1.0}, 1e-3},
                                     LevyMeasureSpec{Table{{{0.5, 1.0}, {-1.0, 2.0}, {2.0, 0.5}}}, 3.0}}) {
        double prev = 2.0;
        for (double k = 0.05; k < 5.0; k += 0.05) {
            const double r = ar_ratio(s, k);
            ok = ok && r <= prev;
            prev = r;
        }
    }
    return {"ar_ratio_nonincreasing_in_kappa", ok, "kappa grid 0.05..5"};
}

CheckResult ar_ratio_zero_region() {
    bool ok = true;
    for (double alpha : {0.5, 1.5})
        for (double kappa : {0.5, 1.0, 2.0}) {
            const double edge = std::pow(2.0 * kappa * kappa / (2.0 - alpha), 1.0 / alpha);
            for (double f : {0.99, 0.5, 0.1, 1e-3}) ok = ok && ar_ratio({AlphaStableSymmetric{alpha}, f * edge}, kappa) == 0.0;
            ok = ok && ar_ratio({AlphaStableSymmetric{alpha}, 1.5 * edge}, kappa) > 0.0;
        }
    return {"ar_ratio_exactly_zero_below_threshold", ok, "alpha in {0.5,1.5}, kappa in {0.5,1,2}"};
}

CheckResult symmetric_table_drift() {
    const LevyMeasureSpec s{Table{{{0.3, 0.7}, {-0.3, 0.7}, {1.1, 0.123}, {-1.1, 0.123}, {0.7, 3.3}, {-0.7, 3.3}}}, 2.0};
    const double d = compensator_drift(s, 0.1);
    return {"symmetric_table_drift_is_zero", d == 0.0, "drift " + fmt(d)};
}

CheckResult amplitude_histogram() {
    const LevyMeasureSpec s{AlphaStableSymmetric{1.5}, 1.0};
    const double floor = 0.1;
    Rng rng = make_path_rng(11, 0);
    const int n = 100000, bins = 20;
    std::vector<int> counts(bins, 0);
    for (int k = 0; k < n; ++k) {
        const double a = std::abs(sample_amplitude(s, floor, rng));
        const int b = std::min(bins - 1, static_cast<int>((a - floor) / (1.0 - floor) * bins));
        ++counts[static_cast<std::size_t>(b)];
    }
    const double total = tail_mass(s, floor);
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double lo = floor + (1.0 - floor) * b / bins, hi = floor + (1.0 - floor) * (b + 1) / bins;
        const double p = (tail_mass(s, lo) - tail_mass(s, hi)) / total;
        const double e = p * n;
        chi2 += (counts[static_cast<std::size_t>(b)] - e) * (counts[static_cast<std::size_t>(b)] - e) / e;
    }
    const double pval = boost::math::cdf(boost::math::complement(boost::math::chi_squared(bins - 1), chi2));
    return {"amplitude_histogram_chi_square", pval > 1e-3, "p " + fmt(pval)};
}

CheckResult green_geometry() {
    double worst = 0.0;
    for (int p : {1, 2})
        for (double t : {0.5, 1.0}) {
            auto inner = [t, p](double s) {
                return integrate([t, s, p](double y) { return std::pow(green(t, 0.0, s, y), p); }, -(t - s), t - s, 1e-12);
            };
            const double q = integrate(inner, 0.0, t, 1e-12);
            worst = std::max(worst, std::abs(q - green_power_integral(t, p)));
        }
    return {"green_power_integral", worst < 1e-10, "max abs err " + fmt(worst)};
}

CheckResult order_isomorphism() {
    Rng rng = make_path_rng(5, 0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ConePoint origin{-0.3, 0.2};
    int bad = 0;
    for (int k = 0; k < 1000; ++k) {
        const ConePoint a{u(rng), u(rng)}, b{u(rng), u(rng)};
        const RotatedPoint ra = rotate(a, origin), rb = rotate(b, origin);
        const bool comp = ra.v1 <= rb.v1 && ra.v2 <= rb.v2;
        if (comp != preceq(a, b)) ++bad;
    }
    return {"partial_order_matches_rotated_order", bad == 0, std::to_string(bad) + " mismatches in 1000 pairs"};
}

CheckResult grid_brute_force() {
    Rng rng = make_path_rng(3, 0);
    std::normal_distribution<double> nd;
    bool ok = true;
    const Affine f{0.7, 0.4};
    for (std::size_t n : {1u, 3u, 8u}) {
        const RotatedLattice lat{{0.0, 0.0}, 0.25, n, n};
        auto geom = std::make_shared<CellGeometry>();
        geom->lattice = lat;
        geom->area.assign(lat.cells(), 0.0);
        geom->centroid.assign(lat.cells(), ConePoint{});
        CellIncrements inc = zero_increments(geom);
        for (double& v : inc.values) v = nd(rng);
        const FieldGrid u = solve_volterra(inc, f, 1.0);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) {
                double s = 0.0;
                for (std::size_t a = 0; a < i; ++a)
                    for (std::size_t b = 0; b < j; ++b) s += f(u.at(a, b)) * inc.at(a, b);
                ok = ok && std::abs(s - u.at(i, j)) <= 1e-12 * (1.0 + std::abs(s));
            }
    }
    return {"grid_recursion_equals_double_sum", ok, "lattices 1x1, 3x3, 8x8"};
}

CheckResult hermite_orthonormality() {
    const QuadratureGrid g = composite_gauss_legendre(-15.0, 15.0, kHermitePanel);
    const int Q = 20;
    std::vector<std::vector<double>> H(g.nodes.size());
    for (std::size_t k = 0; k < g.nodes.size(); ++k) H[k] = hermite_all(Q, g.nodes[k]);
    double worst = 0.0;
    for (int p = 0; p <= Q; ++p)
        for (int q = 0; q <= Q; ++q) {
            double s = 0.0;
            for (std::size_t k = 0; k < g.nodes.size(); ++k)
                s += g.weights[k] * H[k][static_cast<std::size_t>(p)] * H[k][static_cast<std::size_t>(q)];
            worst = std::max(worst, std::abs(s - (p == q ? 1.0 : 0.0)));
        }
    return {"hermite_orthonormality", worst < 1e-8, "max err " + fmt(worst)};
}

CheckResult hermite_ode() {
    double worst = 0.0;
    std::vector<double> h, dh;
    for (int q = 0; q <= 30; ++q)
        for (double x = -5.0; x <= 5.0; x += 0.25) {
            // h'' from applying the derivative recursion twice
            hermite_all_with_deriv(q + 1, x, h, dh);
            const double lower = q > 0 ? dh[static_cast<std::size_t>(q) - 1] : 0.0;
            const double d2 = std::sqrt(q / 2.0) * lower - std::sqrt((q + 1) / 2.0) * dh[static_cast<std::size_t>(q) + 1];
            worst = std::max(worst, std::abs(d2 + (1.0 + 2.0 * q - x * x) * h[static_cast<std::size_t>(q)]));
        }
    return {"hermite_ode_residual", worst < 1e-6, "max residual " + fmt(worst)};
}

CheckResult dual_norm_monotone() {
    const std::vector<double> c{0.3, -1.2, 0.7, 2.0, -0.1, 0.05};
    bool ok = true;
    double prev = dual_norm(c, 0.0);
    for (double r = 0.25; r <= 6.0; r += 0.25) {
        const double d = dual_norm(c, r);
        ok = ok && d <= prev;
        prev = d;
    }
    return {"dual_norm_nonincreasing_in_r", ok, "r grid 0..6"};
}

CheckResult representation_equivalence(const ExperimentConfig& cfg) {
    const LevyMeasureSpec s{AlphaStableSymmetric{1.5}, 1.0};
    const Domain dom = cfg.domain();
    Rng rng = make_path_rng(cfg.seed, 77);
    const JumpRecord rec = simulate_jump_record(s, dom, 0.3, rng);
    const EventSolution sol = solve_event_driven(rec, cfg.f, std::sqrt(sigma2(s)));
    const auto times = default_output_times(cfg.T, 17);
    const VPath direct = v_coeffs_direct(sol, times, 16);
    const double e1 = max_row_dual_distance(direct, v_coeffs_semimart(sol, times, 16, 1.0 / 64.0), cfg.r);
    const double e2 = max_row_dual_distance(direct, v_coeffs_semimart(sol, times, 16, 1.0 / 128.0), cfg.r);
    const double ratio = e2 / e1;
    return {"v_direct_matches_semimartingale", e2 < e1 && ratio < 0.6, "errors " + fmt(e1) + " -> " + fmt(e2)};
}

CheckResult magic_pair_identity() {
    const TestFunction phi = make_bump(0.4, 0.3);
    const MagicPair mp = magic_pair(phi, 1.0);
    const double d = 1e-4;
    double worst = 0.0, init = 0.0;
    for (int a = 0; a < 20; ++a)
        for (int b = 0; b < 20; ++b) {
            const double s = 0.05 * a, y = -0.5 + 0.1 * b;
            const double ds = (mp.psi2(s + d, y) - mp.psi2(s - d, y)) / (2.0 * d);
            worst = std::max(worst, std::abs(ds + mp.psi1(s, y)));
            init = std::max({init, std::abs(mp.psi2(1.0, y)), std::abs(mp.psi1(1.0, y) - phi.phi(y))});
        }
    return {"magic_pair_identities", worst < 1e-6 && init == 0.0, "max |d_s psi2 + psi1| " + fmt(worst)};
}

CheckResult weak_form_single_jump() {
    const Domain dom{1.0, -1.0, 2.0};
    const std::vector<NoiseAtom> atoms{{0.3, 0.5, 1.0, 1.0, 0.0}};
    const AtomPath path(atoms, dom, Affine{0.0, 1.0});
    const double r = weak_residual(path, make_bump(1.0, 0.15), make_bump(1.6, 0.15), 1.0, 1.0 / 128.0);
    return {"weak_form_single_jump", std::abs(r) < 1e-3, "residual " + fmt(r)};
}

CheckResult ks_properties() {
    Rng rng = make_path_rng(9, 0);
    std::normal_distribution<double> nd;
    std::vector<double> a(500), b(700);
    for (double& x : a) x = nd(rng);
    for (double& x : b) x = 0.3 + nd(rng);
    const double ab = ks_two_sample(a, b), ba = ks_two_sample(b, a);
    auto ea = a, eb = b;
    for (double& x : ea) x = std::exp(x);
    for (double& x : eb) x = std::exp(x);
    const double tr = ks_two_sample(ea, eb);
    return {"ks_symmetric_and_transform_invariant", ab == ba && ab == tr && ab <= 1.0, "KS " + fmt(ab)};
}

CheckResult compensator_small_theta() {
    double worst = 0.0;
    for (const LevyMeasureSpec& s : {LevyMeasureSpec{AlphaStableSymmetric{1.5}, 0.1}, LevyMeasureSpec{GammaSubordinator{1.0}, 0.01},
                                     LevyMeasureSpec{Table{{{0.2, 1.0}, {-0.4, 2.0}}}, 1.0}}) {
        const double theta = 1e-3 / std::sqrt(sigma2(s));
        const double psi = levy_exponent(s, theta).real();
        worst = std::max(worst, std::abs(psi / (-0.5 * theta * theta * sigma2(s)) - 1.0));
    }
    return {"compensator_quadratic_coefficient", worst < 1e-4, "max rel err " + fmt(worst)};
}

CheckResult config_round_trip(const ExperimentConfig& cfg) {
    const std::string a = config_to_json(cfg).dump();
    const std::string b = config_to_json(parse_config(a)).dump();
    return {"config_round_trip", a == b, "hash " + std::to_string(config_hash(cfg))};
}

CheckResult refinement_consistency() {
    const Domain dom{1.0, -1.0, 2.0};
    const LevyMeasureSpec s{AlphaStableSymmetric{1.2}, 1.0};
    Rng rng = make_path_rng(21, 0);
    const JumpRecord rec = simulate_jump_record(s, dom, 0.2, rng);
    const RotatedLattice coarse = make_lattice(dom, 1.0 / 16.0);
    RotatedLattice fine = coarse;
    fine.spacing /= 2.0;
    fine.n1 *= 2;
    fine.n2 *= 2;
    const auto ci = levy_cell_increments(rec, make_cell_geometry(coarse, dom), 1.0);
    const auto fi = levy_cell_increments(rec, make_cell_geometry(fine, dom), 1.0);
    bool ok = true;
    for (std::size_t i = 0; i < coarse.n1; ++i)
        for (std::size_t j = 0; j < coarse.n2; ++j) {
            const double agg = fi.at(2 * i, 2 * j) + fi.at(2 * i + 1, 2 * j) + fi.at(2 * i, 2 * j + 1) + fi.at(2 * i + 1, 2 * j + 1);
            ok = ok && std::abs(agg - ci.at(i, j)) <= 1e-12;
        }
    return {"increments_refine_consistently", ok, std::to_string(rec.jumps.size()) + " jumps"};
}

}  // namespace

std::vector<CheckResult> validation_suite(const ExperimentConfig& cfg) {
    std::vector<std::function<CheckResult()>> checks{
        sigma2_closed_forms,
        ar_ratio_monotone_in_kappa,
        ar_ratio_zero_region,
        symmetric_table_drift,
        amplitude_histogram,
        refinement_consistency,
        green_geometry,
        order_isomorphism,
        grid_brute_force,
        hermite_orthonormality,
        hermite_ode,
        dual_norm_monotone,
        [&] { return representation_equivalence(cfg); },
        magic_pair_identity,
        weak_form_single_jump,
        ks_properties,
        compensator_small_theta,
        [&] { return config_round_trip(cfg); },
    };
    std::vector<CheckResult> out;
    for (auto& c : checks) {
        try {
            out.push_back(c());
        } catch (const std::exception& e) {
            out.push_back({"exception", false, e.what()});
        }
    }
    return out;
}

}  // namespace levywave
