#include "levywave/hermite.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "levywave/errors.hpp"

namespace levywave {

namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
constexpr double kBig = 1e150;

// Runs the recurrence with values carried as mantissa * exp(log_scale).
template <class Emit>
void run_recurrence(int qmax, double x, Emit&& emit) {
    double log_scale = -0.5 * x * x;
    double scale = std::exp(log_scale);
    double prev = 0.0, cur = kPiQuarter;
    emit(0, cur * scale);
    for (int q = 0; q < qmax; ++q) {
        const double next = x * std::sqrt(2.0 / (q + 1.0)) * cur - std::sqrt(q / (q + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            prev /= kBig;
            log_scale += std::log(kBig);
            scale = std::exp(log_scale);
        }
        emit(q + 1, cur * scale);
    }
}

}  // namespace

double hermite_eval(int q, double x) {
    double out = 0.0;
    run_recurrence(q, x, [&](int k, double v) {
        if (k == q) out = v;
    });
    return out;
}

std::vector<double> hermite_all(int qmax, double x) {
    std::vector<double> h(static_cast<std::size_t>(qmax) + 1);
    run_recurrence(qmax, x, [&](int k, double v) { h[static_cast<std::size_t>(k)] = v; });
    return h;
}

double hermite_deriv(int q, double x) {
    const auto h = hermite_all(q + 1, x);
    const double lower = q > 0 ? h[static_cast<std::size_t>(q) - 1] : 0.0;
    return std::sqrt(q / 2.0) * lower - std::sqrt((q + 1) / 2.0) * h[static_cast<std::size_t>(q) + 1];
}

void hermite_all_with_deriv(int qmax, double x, std::vector<double>& h, std::vector<double>& dh) {
    const auto ext = hermite_all(qmax + 1, x);
    h.assign(ext.begin(), ext.end() - 1);
    dh.resize(static_cast<std::size_t>(qmax) + 1);
    for (int q = 0; q <= qmax; ++q) {
        const double lower = q > 0 ? ext[static_cast<std::size_t>(q) - 1] : 0.0;
        dh[static_cast<std::size_t>(q)] =
            std::sqrt(q / 2.0) * lower - std::sqrt((q + 1) / 2.0) * ext[static_cast<std::size_t>(q) + 1];
    }
}

HermiteCoeffs project(const std::vector<double>& samples, const QuadratureGrid& grid, int q_max) {
    if (samples.size() != grid.nodes.size()) throw Error(ErrorCode::ShapeMismatch, "samples do not match grid");
    HermiteCoeffs c;
    c.coeffs.assign(static_cast<std::size_t>(q_max) + 1, 0.0);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (samples[k] == 0.0) continue;
        const double wf = grid.weights[k] * samples[k];
        run_recurrence(q_max, grid.nodes[k], [&](int q, double v) { c.coeffs[static_cast<std::size_t>(q)] += wf * v; });
    }
    return c;
}

HermiteCoeffs project(const RealFn& phi, int q_max, double A) {
    if (std::max(std::abs(phi(-A)), std::abs(phi(A))) > 1e-10)
        throw Error(ErrorCode::WindowTooSmall, "test function not negligible at the window edge");
    const QuadratureGrid grid = composite_gauss_legendre(-A, A, kHermitePanel);
    std::vector<double> samples(grid.nodes.size());
    for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = phi(grid.nodes[k]);
    return project(samples, grid, q_max);
}

double dual_norm(const std::vector<double>& c, double r) {
    double s = 0.0;
    for (std::size_t q = 0; q < c.size(); ++q) s += std::pow(1.0 + 2.0 * static_cast<double>(q), -r) * c[q] * c[q];
    return std::sqrt(s);
}

double dual_norm(const HermiteCoeffs& c, double r) { return dual_norm(c.coeffs, r); }

double primal_norm(const HermiteCoeffs& c, double r) { return dual_norm(c.coeffs, -r); }

double dual_tail_bound(const std::vector<double>& c, double r) {
    if (r <= 2.0) return std::numeric_limits<double>::infinity();
    if (c.empty()) return 0.0;
    double C = 0.0;
    for (std::size_t q = 0; q < c.size(); ++q) C = std::max(C, c[q] * c[q] / (1.0 + 2.0 * static_cast<double>(q)));
    const double Q = static_cast<double>(c.size() - 1);
    return C * std::pow(1.0 + 2.0 * Q, 2.0 - r) / (2.0 * (r - 2.0));
}

std::string coeffs_to_csv(const HermiteCoeffs& c) {
    std::ostringstream os;
    os.precision(17);
    os << "q,c\n";
    for (std::size_t q = 0; q < c.coeffs.size(); ++q) os << q << ',' << c.coeffs[q] << '\n';
    return os.str();
}

}  // namespace levywave
