#include "levywave/vprocess.hpp"

#include <algorithm>
#include <boost/math/interpolators/cubic_hermite.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "levywave/errors.hpp"

namespace levywave {

namespace {

constexpr std::size_t kAntiderivativeIntervals = 16384;

void sort_by_time(std::vector<NoiseAtom>& atoms) {
    std::stable_sort(atoms.begin(), atoms.end(), [](const NoiseAtom& a, const NoiseAtom& b) { return a.s < b.s; });
}

void check_support(const TestFunction& phi, const Domain& d) {
    if (phi.hi > phi.lo && (phi.lo <= d.x_lo || phi.hi >= d.x_hi))
        throw Error(ErrorCode::SupportViolation, "test function support must lie inside the spatial window");
}

}  // namespace

TestFunction make_test_function(RealFn phi, RealFn d1, RealFn d2, double lo, double hi) {
    TestFunction tf{std::move(phi), std::move(d1), std::move(d2), {}, lo, hi};
    if (!(hi > lo)) {
        tf.integral = [](double) { return 0.0; };
        return tf;
    }
    const std::size_t n = kAntiderivativeIntervals;
    const double dx = (hi - lo) / static_cast<double>(n);
    std::vector<double> y(n + 1, 0.0), dy(n + 1, 0.0);
    for (std::size_t k = 0; k <= n; ++k) dy[k] = tf.phi(lo + dx * static_cast<double>(k));
    for (std::size_t k = 1; k <= n; ++k)
        y[k] = y[k - 1] + boost::math::quadrature::gauss<double, 20>::integrate(
                              tf.phi, lo + dx * static_cast<double>(k - 1), lo + dx * static_cast<double>(k));
    const double total = y[n];
    using Interp = boost::math::interpolators::cardinal_cubic_hermite<std::vector<double>>;
    auto interp = std::make_shared<Interp>(std::move(y), std::move(dy), lo, dx);
    tf.integral = [interp, lo, hi, total](double x) {
        if (x <= lo) return 0.0;
        if (x >= hi) return total;
        return (*interp)(x);
    };
    return tf;
}

TestFunction make_bump(double center, double half_width, double amplitude) {
    const double c = center, w = half_width, A = amplitude;
    auto phi = [=](double x) {
        const double z = (x - c) / w;
        if (std::abs(z) >= 1.0) return 0.0;
        return A * std::exp(-1.0 / (1.0 - z * z));
    };
    auto d1 = [=](double x) {
        const double z = (x - c) / w;
        if (std::abs(z) >= 1.0) return 0.0;
        const double q = 1.0 - z * z;
        return A * std::exp(-1.0 / q) * (-2.0 * z / (q * q)) / w;
    };
    auto d2 = [=](double x) {
        const double z = (x - c) / w;
        if (std::abs(z) >= 1.0) return 0.0;
        const double q = 1.0 - z * z;
        const double g1 = -2.0 * z / (q * q);
        const double g2 = -2.0 / (q * q) - 8.0 * z * z / (q * q * q);
        return A * std::exp(-1.0 / q) * (g1 * g1 + g2) / (w * w);
    };
    return make_test_function(phi, d1, d2, c - w, c + w);
}

TestFunction zero_test_function() {
    auto zero = [](double) { return 0.0; };
    return TestFunction{zero, zero, zero, zero, 0.0, 0.0};
}

std::vector<NoiseAtom> atoms_from_event(const EventSolution& sol) {
    std::vector<NoiseAtom> atoms;
    const auto& J = sol.record.jumps;
    atoms.reserve(J.size());
    for (std::size_t k = 0; k < J.size(); ++k)
        atoms.push_back({J[k].t, J[k].x, sol.f(sol.node_values[k]), J[k].z / sol.sigma, 0.0});
    sort_by_time(atoms);
    return atoms;
}

std::vector<NoiseAtom> atoms_from_grid(const FieldGrid& field, const CellIncrements& increments, const Nonlinearity& f) {
    const CellGeometry& g = *increments.geometry;
    if (!(field.lattice == g.lattice)) throw Error(ErrorCode::ShapeMismatch, "field and increments use different lattices");
    std::vector<NoiseAtom> atoms;
    for (std::size_t i = 0; i < g.lattice.n1; ++i)
        for (std::size_t j = 0; j < g.lattice.n2; ++j) {
            const std::size_t k = g.index(i, j);
            const double inc = increments.values[k];
            if (g.area[k] <= 0.0 && inc == 0.0) continue;
            atoms.push_back({g.centroid[k].t, g.centroid[k].x, f(field.at(i, j)), inc, g.area[k]});
        }
    sort_by_time(atoms);
    return atoms;
}

double PathView::v_pair(double t, const TestFunction& phi) const {
    double s = 0.0;
    for (const NoiseAtom& a : atoms()) {
        if (!(a.s <= t)) break;
        const double w = a.weight();
        if (w == 0.0) continue;
        const double tau = t - a.s;
        s += 0.5 * w * (phi.phi(a.y + tau) + phi.phi(a.y - tau));
    }
    return s;
}

double PathView::noise_pair(double t, const TestFunction& phi) const {
    double s = 0.0;
    for (const NoiseAtom& a : atoms()) {
        if (!(a.s <= t)) break;
        const double w = a.weight();
        if (w != 0.0) s += w * phi.phi(a.y);
    }
    return s;
}

AtomPath::AtomPath(std::vector<NoiseAtom> atoms, Domain domain, Nonlinearity f, double resolution)
    : atoms_(std::move(atoms)), domain_(domain), f_(std::move(f)), resolution_(resolution) {
    sort_by_time(atoms_);
}

double AtomPath::u_pair(double t, const TestFunction& phi, int order) const {
    double s = 0.0;
    for (const NoiseAtom& a : atoms_) {
        if (!(a.s < t)) break;
        const double w = a.weight();
        if (w == 0.0) continue;
        const double tau = t - a.s;
        if (order == 0)
            s += 0.5 * w * (phi.integral(a.y + tau) - phi.integral(a.y - tau));
        else
            s += 0.5 * w * (phi.d1(a.y + tau) - phi.d1(a.y - tau));
    }
    return s;
}

double AtomPath::u_at(double t, double x) const {
    double u = 0.0;
    for (const NoiseAtom& a : atoms_) {
        if (!(a.s < t)) break;
        if (std::abs(x - a.y) <= t - a.s) u += 0.5 * a.weight();
    }
    return u;
}

AtomPath AtomPath::from_grid(const FieldGrid& field, const CellIncrements& increments, const Nonlinearity& f) {
    AtomPath p(atoms_from_grid(field, increments, f), increments.geometry->domain, f, field.lattice.spacing);
    p.cell_nodes_ = true;
    return p;
}

std::vector<PathView::Node> AtomPath::space_time_nodes() const {
    if (cell_nodes_) {
        std::vector<Node> nodes;
        for (const NoiseAtom& a : atoms_)
            if (a.area > 0.0) nodes.push_back({a.s, a.y, a.f_value, a.area});
        return nodes;
    }
    const double h = resolution_;
    const auto ns = static_cast<std::size_t>(std::ceil(domain_.T / h));
    const auto nx = static_cast<std::size_t>(std::ceil((domain_.x_hi - domain_.x_lo) / h));
    const double hs = domain_.T / static_cast<double>(ns), hx = (domain_.x_hi - domain_.x_lo) / static_cast<double>(nx);
    std::vector<Node> nodes;
    nodes.reserve(ns * nx);
    for (std::size_t a = 0; a < ns; ++a)
        for (std::size_t b = 0; b < nx; ++b) {
            const double s = (static_cast<double>(a) + 0.5) * hs;
            const double y = domain_.x_lo + (static_cast<double>(b) + 0.5) * hx;
            nodes.push_back({s, y, f_(u_at(s, y)), hs * hx});
        }
    return nodes;
}

GridPath::GridPath(FieldGrid field, const CellIncrements& increments, const Nonlinearity& f)
    : field_(std::move(field)), domain_(increments.geometry->domain), atoms_(atoms_from_grid(field_, increments, f)) {}

double GridPath::u_pair(double t, const TestFunction& phi, int order) const {
    if (!(phi.hi > phi.lo)) return 0.0;
    const double h = field_.lattice.spacing / 4.0;
    const auto n = static_cast<std::size_t>(std::ceil((phi.hi - phi.lo) / h));
    const double dx = (phi.hi - phi.lo) / static_cast<double>(n);
    const RealFn& g = order == 0 ? phi.phi : phi.d2;
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double x = phi.lo + (static_cast<double>(k) + 0.5) * dx;
        s += eval_field(field_, t, x) * g(x);
    }
    return s * dx;
}

double GridPath::u_at(double t, double x) const { return eval_field(field_, t, x); }

std::vector<PathView::Node> GridPath::space_time_nodes() const {
    std::vector<Node> nodes;
    for (const NoiseAtom& a : atoms_)
        if (a.area > 0.0) nodes.push_back({a.s, a.y, a.f_value, a.area});
    return nodes;
}

std::vector<double> default_output_times(double T, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = T * static_cast<double>(i) / static_cast<double>(count - 1);
    return t;
}

VPath v_coeffs_direct(const std::vector<NoiseAtom>& atoms, const std::vector<double>& times, int q_max) {
    VPath v;
    v.times = times;
    const auto nq = static_cast<std::size_t>(q_max) + 1;
    v.coeffs.assign(times.size(), std::vector<double>(nq, 0.0));
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        auto& row = v.coeffs[i];
        for (const NoiseAtom& a : atoms) {
            if (!(a.s <= t)) continue;
            const double w = a.weight();
            if (w == 0.0) continue;
            const double tau = t - a.s;
            const auto hp = hermite_all(q_max, a.y + tau);
            const auto hm = hermite_all(q_max, a.y - tau);
            for (std::size_t q = 0; q < nq; ++q) row[q] += 0.5 * w * (hp[q] + hm[q]);
        }
    }
    return v;
}

VPath v_coeffs_direct(const EventSolution& sol, const std::vector<double>& times, int q_max) {
    VPath v = v_coeffs_direct(atoms_from_event(sol), times, q_max);
    v.sigma = sol.sigma;
    return v;
}

VPath v_coeffs_direct(const FieldGrid& field, const CellIncrements& increments, const std::vector<double>& times,
                      int q_max, const Nonlinearity& f) {
    VPath v = v_coeffs_direct(atoms_from_grid(field, increments, f), times, q_max);
    v.sigma = field.sigma;
    return v;
}

VPath v_coeffs_semimart(const std::vector<NoiseAtom>& atoms, const std::vector<double>& times, int q_max, double step) {
    if (!(step > 0.0)) throw Error(ErrorCode::ShapeMismatch, "inner step must be positive");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw Error(ErrorCode::ShapeMismatch, "output times must increase");
    const auto nq = static_cast<std::size_t>(q_max) + 1;

    // inner grid refining every output interval
    std::vector<double> inner{0.0};
    std::vector<std::size_t> out_index;
    double prev = 0.0;
    for (double t : times) {
        if (t < 0.0) throw Error(ErrorCode::ShapeMismatch, "output times must be non-negative");
        const double len = t - prev;
        if (len > 0.0) {
            const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step - 1e-9)));
            for (std::size_t m = 1; m <= k; ++m)
                inner.push_back(m == k ? t : prev + len * static_cast<double>(m) / static_cast<double>(k));
        }
        out_index.push_back(inner.size() - 1);
        prev = t;
    }

    // J[k] sums every atom active at inner[k]; late[k] holds the share of atoms born inside
    // (inner[k-1], inner[k]] whose trapezoid starts at their own time, where their term is 0
    std::vector<std::vector<double>> J(inner.size(), std::vector<double>(nq, 0.0));
    std::vector<std::vector<double>> late(inner.size(), std::vector<double>(nq, 0.0));
    std::vector<double> h, dp, dm;
    for (std::size_t k = 0; k < inner.size(); ++k) {
        const double r = inner[k];
        for (const NoiseAtom& a : atoms) {
            if (!(a.s < r)) continue;
            const double w = a.weight();
            if (w == 0.0) continue;
            hermite_all_with_deriv(q_max, a.y + (r - a.s), h, dp);
            hermite_all_with_deriv(q_max, a.y - (r - a.s), h, dm);
            const bool born_here = k > 0 && a.s > inner[k - 1];
            const double share = born_here ? (r - a.s) / (r - inner[k - 1]) : 1.0;
            for (std::size_t q = 0; q < nq; ++q) {
                const double term = w * (dp[q] - dm[q]);
                J[k][q] += term;
                if (born_here) late[k][q] += (share - 1.0) * term;
            }
        }
    }
    std::vector<std::vector<double>> cum(inner.size(), std::vector<double>(nq, 0.0));
    for (std::size_t k = 1; k < inner.size(); ++k) {
        const double dr = inner[k] - inner[k - 1];
        for (std::size_t q = 0; q < nq; ++q)
            cum[k][q] = cum[k - 1][q] + 0.5 * dr * (J[k][q] + late[k][q] + J[k - 1][q]);
    }

    VPath v;
    v.times = times;
    v.coeffs.assign(times.size(), std::vector<double>(nq, 0.0));
    for (std::size_t i = 0; i < times.size(); ++i) {
        auto& row = v.coeffs[i];
        for (const NoiseAtom& a : atoms) {
            if (!(a.s <= times[i])) continue;
            const double w = a.weight();
            if (w == 0.0) continue;
            const auto hy = hermite_all(q_max, a.y);
            for (std::size_t q = 0; q < nq; ++q) row[q] += w * hy[q];
        }
        for (std::size_t q = 0; q < nq; ++q) row[q] += 0.5 * cum[out_index[i]][q];
    }
    return v;
}

VPath v_coeffs_semimart(const EventSolution& sol, const std::vector<double>& times, int q_max, double step) {
    VPath v = v_coeffs_semimart(atoms_from_event(sol), times, q_max, step);
    v.sigma = sol.sigma;
    return v;
}

double v_pair_hermite(const VPath& v, std::size_t row, const HermiteCoeffs& phi_coeffs) {
    const auto& c = v.coeffs.at(row);
    const std::size_t n = std::min(c.size(), phi_coeffs.coeffs.size());
    double s = 0.0;
    for (std::size_t q = 0; q < n; ++q) s += c[q] * phi_coeffs.coeffs[q];
    return s;
}

double max_row_dual_distance(const VPath& a, const VPath& b, double r) {
    if (a.coeffs.size() != b.coeffs.size()) throw Error(ErrorCode::ShapeMismatch, "v paths have different time grids");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].size() != b.coeffs[i].size()) throw Error(ErrorCode::ShapeMismatch, "different Q_max");
        std::vector<double> d(a.coeffs[i].size());
        for (std::size_t q = 0; q < d.size(); ++q) d[q] = a.coeffs[i][q] - b.coeffs[i][q];
        worst = std::max(worst, dual_norm(d, r));
    }
    return worst;
}

std::string vpath_to_csv(const VPath& v) {
    std::ostringstream os;
    os.precision(17);
    os << "t,q,c\n";
    for (std::size_t i = 0; i < v.times.size(); ++i)
        for (std::size_t q = 0; q < v.coeffs[i].size(); ++q) os << v.times[i] << ',' << q << ',' << v.coeffs[i][q] << '\n';
    return os.str();
}

double weak_residual(const PathView& path, const TestFunction& phi1, const TestFunction& phi2, double t, double step) {
    check_support(phi1, path.domain());
    check_support(phi2, path.domain());
    if (!(step > 0.0)) throw Error(ErrorCode::ShapeMismatch, "time step must be positive");
    if (t <= 0.0) return 0.0;
    const auto K = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / step)));
    const double h = t / static_cast<double>(K);
    double integral = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
        const double s = h * static_cast<double>(k);
        const double g = path.u_pair(s, phi2, 2) + path.v_pair(s, phi1);
        integral += (k == 0 || k == K ? 0.5 : 1.0) * g;
    }
    integral *= h;
    return path.u_pair(t, phi1, 0) + path.v_pair(t, phi2) - integral - path.noise_pair(t, phi2);
}

double MagicPair::psi1(double s, double y) const {
    const double tau = t - s;
    return 0.5 * (phi.phi(y + tau) + phi.phi(y - tau));
}

double MagicPair::psi2(double s, double y) const {
    const double tau = t - s;
    return 0.5 * (phi.integral(y + tau) - phi.integral(y - tau));
}

MagicPair magic_pair(const TestFunction& phi, double t) { return MagicPair{phi, t}; }

}  // namespace levywave
