#pragma once

#include <string>
#include <vector>

#include "levywave/quadrature.hpp"

namespace levywave {

// Orthonormal Hermite function h_q via the three-term recurrence (rescaled to avoid underflow).
double hermite_eval(int q, double x);

// h_0(x) .. h_qmax(x).
std::vector<double> hermite_all(int qmax, double x);

double hermite_deriv(int q, double x);

// Values and derivatives for q = 0..qmax in one pass.
void hermite_all_with_deriv(int qmax, double x, std::vector<double>& h, std::vector<double>& dh);

struct HermiteCoeffs {
    std::vector<double> coeffs;
    double r = 3.0;

    int q_max() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Default panel width of the composite Gauss-Legendre grid.
inline constexpr double kHermitePanel = 0.5;

// c_q = Σ w_k φ(x_k) h_q(x_k) over a precomputed grid.
HermiteCoeffs project(const std::vector<double>& samples, const QuadratureGrid& grid, int q_max);

// Projection of φ over [-A, A]; WindowTooSmall if φ has not decayed at the window edge.
HermiteCoeffs project(const RealFn& phi, int q_max, double A);

// sqrt(Σ (1+2q)^(-r) c_q^2).
double dual_norm(const HermiteCoeffs& c, double r);
double dual_norm(const std::vector<double>& c, double r);

// sqrt(Σ (1+2q)^(r) c_q^2).
double primal_norm(const HermiteCoeffs& c, double r);

// Bound on Σ_{q > Q} (1+2q)^(-r) c_q^2 assuming c_q^2 <= C (1+2q), C fitted on the
// available coefficients; infinite for r <= 2.
double dual_tail_bound(const std::vector<double>& c, double r);

std::string coeffs_to_csv(const HermiteCoeffs& c);

}  // namespace levywave
