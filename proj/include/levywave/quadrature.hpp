#pragma once

#include <functional>
#include <vector>

namespace levywave {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]; throws QuadratureFailure if the error
// estimate misses the tolerance.
double integrate(const RealFn& f, double a, double b, double rel_tol = 1e-10);

// Same, over consecutive breakpoints.
double integrate_pieces(const RealFn& f, const std::vector<double>& breaks, double rel_tol = 1e-10);

// Double-exponential rule for integrable endpoint singularities.
double integrate_singular(const RealFn& f, double a, double b, double rel_tol = 1e-10);

// Composite Gauss-Legendre nodes/weights (20 points per panel).
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureGrid composite_gauss_legendre(double a, double b, double panel_width);

}  // namespace levywave
