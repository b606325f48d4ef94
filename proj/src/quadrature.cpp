#include "levywave/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>

#include "levywave/errors.hpp"

namespace levywave {

namespace bq = boost::math::quadrature;

namespace {

// boost's error estimates carry a floor set by roundoff in the integrand values, so every
// integral is mapped to [0, 1] with an order-one integrand first
double magnitude(const RealFn& f, double a, double b) {
    double m = 0.0;
    for (double u : {0.5, 0.25, 0.75, 0.125, 0.875}) m = std::max(m, std::abs(f(a + u * (b - a))));
    const double s = m * std::abs(b - a);
    return std::isfinite(s) && s > 0.0 ? s : 1.0;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double err = 0.0, l1 = 0.0;
    const double scale = magnitude(f, a, b);
    const auto g = [&](double u) { return f(a + u * (b - a)) * (b - a) / scale; };
    const double v = scale * bq::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 15, rel_tol, &err, &l1);
    if (!std::isfinite(v) || err > 1e3 * rel_tol * l1)
        throw Error(ErrorCode::QuadratureFailure, "adaptive Gauss-Kronrod did not converge");
    return v;
}

double integrate_pieces(const RealFn& f, const std::vector<double>& breaks, double rel_tol) {
    double total = 0.0;
    for (std::size_t i = 1; i < breaks.size(); ++i) total += integrate(f, breaks[i - 1], breaks[i], rel_tol);
    return total;
}

double integrate_singular(const RealFn& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    bq::tanh_sinh<double> rule;
    double err = 0.0, l1 = 0.0;
    const double scale = magnitude(f, a, b);
    const auto g = [&](double u) { return f(a + u * (b - a)) * (b - a) / scale; };
    const double v = scale * rule.integrate(g, 0.0, 1.0, rel_tol, &err, &l1);
    if (!std::isfinite(v) || err > 1e3 * rel_tol * l1)
        throw Error(ErrorCode::QuadratureFailure, "tanh-sinh did not converge");
    return v;
}

QuadratureGrid composite_gauss_legendre(double a, double b, double panel_width) {
    using rule = bq::gauss<double, 20>;
    const auto& x = rule::abscissa();
    const auto& w = rule::weights();
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_width - 1e-12));
    const double h = (b - a) / static_cast<double>(panels);
    QuadratureGrid g;
    g.nodes.reserve(panels * 20);
    g.weights.reserve(panels * 20);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        // boost stores the non-negative half of a symmetric rule
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] == 0.0) {
                g.nodes.push_back(mid);
                g.weights.push_back(w[k] * half);
                continue;
            }
            g.nodes.push_back(mid - half * x[k]);
            g.weights.push_back(w[k] * half);
            g.nodes.push_back(mid + half * x[k]);
            g.weights.push_back(w[k] * half);
        }
    }
    return g;
}

}  // namespace levywave
