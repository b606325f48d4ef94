#pragma once

#include <memory>
#include <string>
#include <vector>

#include "levywave/hermite.hpp"
#include "levywave/solver.hpp"

namespace levywave {

// Smooth test function with support [lo, hi], two derivatives and an antiderivative.
struct TestFunction {
    RealFn phi;
    RealFn d1;
    RealFn d2;
    RealFn integral;  // ∫_lo^x φ
    double lo = 0.0;
    double hi = 0.0;
};

// Tabulates the antiderivative of φ on its support.
TestFunction make_test_function(RealFn phi, RealFn d1, RealFn d2, double lo, double hi);

// amplitude · exp(-1 / (1 - z^2)), z = (x - center) / half_width.
TestFunction make_bump(double center, double half_width, double amplitude = 1.0);

TestFunction zero_test_function();

// One noise term of a path: location, integrand value f(u-), normalized increment and
// the space-time area it represents (0 for a single jump).
struct NoiseAtom {
    double s = 0.0;
    double y = 0.0;
    double f_value = 0.0;
    double increment = 0.0;
    double area = 0.0;

    double weight() const { return f_value * increment; }
};

std::vector<NoiseAtom> atoms_from_event(const EventSolution& sol);

// One atom per cell at its clipped centroid with f evaluated at the lower-left node.
std::vector<NoiseAtom> atoms_from_grid(const FieldGrid& field, const CellIncrements& increments, const Nonlinearity& f);

// Pairings of one simulated path with test functions.
class PathView {
public:
    virtual ~PathView() = default;

    virtual const Domain& domain() const = 0;
    virtual const std::vector<NoiseAtom>& atoms() const = 0;
    // Natural resolution of the path (lattice spacing or a default).
    virtual double resolution() const = 0;

    // ⟨u(t,·), φ^(order)⟩ for order 0 or 2.
    virtual double u_pair(double t, const TestFunction& phi, int order) const = 0;
    virtual double u_at(double t, double x) const = 0;

    // ½ Σ_{s<t} [φ(y + (t-s)) + φ(y - (t-s))] f inc.
    double v_pair(double t, const TestFunction& phi) const;
    // Σ_{s<t} φ(y) f inc.
    double noise_pair(double t, const TestFunction& phi) const;

    // Quadrature nodes (s, y, f(u-), area) covering the domain.
    struct Node {
        double s, y, f_value, area;
    };
    virtual std::vector<Node> space_time_nodes() const = 0;
};

// Path built from atoms alone: u(t,x) = Σ_{s<t, |x-y|<=t-s} ½ f inc.
class AtomPath final : public PathView {
public:
    AtomPath(std::vector<NoiseAtom> atoms, Domain domain, Nonlinearity f, double resolution = 1.0 / 128.0);

    // Lattice noise carried by cell atoms: u is the exact wave response to those atoms and
    // the compensator nodes are the cells themselves.
    static AtomPath from_grid(const FieldGrid& field, const CellIncrements& increments, const Nonlinearity& f);

    const Domain& domain() const override { return domain_; }
    const std::vector<NoiseAtom>& atoms() const override { return atoms_; }
    double resolution() const override { return resolution_; }
    double u_pair(double t, const TestFunction& phi, int order) const override;
    double u_at(double t, double x) const override;
    std::vector<Node> space_time_nodes() const override;

private:
    std::vector<NoiseAtom> atoms_;
    Domain domain_;
    Nonlinearity f_;
    double resolution_;
    bool cell_nodes_ = false;
};

// Lattice path: u from the node values, v and noise from the cell atoms.
class GridPath final : public PathView {
public:
    GridPath(FieldGrid field, const CellIncrements& increments, const Nonlinearity& f);

    const Domain& domain() const override { return domain_; }
    const std::vector<NoiseAtom>& atoms() const override { return atoms_; }
    double resolution() const override { return field_.lattice.spacing; }
    double u_pair(double t, const TestFunction& phi, int order) const override;
    double u_at(double t, double x) const override;
    std::vector<Node> space_time_nodes() const override;
    const FieldGrid& field() const { return field_; }

private:
    FieldGrid field_;
    Domain domain_;
    std::vector<NoiseAtom> atoms_;
};

struct VPath {
    std::vector<double> times;
    std::vector<std::vector<double>> coeffs;  // [time][q]
    double r = 3.0;
    double sigma = 1.0;
};

std::vector<double> default_output_times(double T, std::size_t count = 65);

VPath v_coeffs_direct(const std::vector<NoiseAtom>& atoms, const std::vector<double>& times, int q_max);
VPath v_coeffs_direct(const EventSolution& sol, const std::vector<double>& times, int q_max);
VPath v_coeffs_direct(const FieldGrid& field, const CellIncrements& increments, const std::vector<double>& times,
                      int q_max, const Nonlinearity& f);

// Jump part plus ½∫ J_r dr, trapezoid in r with step at most `step`.
VPath v_coeffs_semimart(const std::vector<NoiseAtom>& atoms, const std::vector<double>& times, int q_max, double step);
VPath v_coeffs_semimart(const EventSolution& sol, const std::vector<double>& times, int q_max, double step);

// Σ_q c_q(φ) ⟨v_t, h_q⟩ for row i.
double v_pair_hermite(const VPath& v, std::size_t row, const HermiteCoeffs& phi_coeffs);

// Largest dual norm of the row differences.
double max_row_dual_distance(const VPath& a, const VPath& b, double r);

std::string vpath_to_csv(const VPath& v);

// LHS - RHS of the weak formulation at time t; time integrals by trapezoid with step ≈ `step`.
double weak_residual(const PathView& path, const TestFunction& phi1, const TestFunction& phi2, double t, double step);

struct MagicPair {
    TestFunction phi;
    double t = 0.0;

    double psi1(double s, double y) const;
    double psi2(double s, double y) const;
};

MagicPair magic_pair(const TestFunction& phi, double t);

}  // namespace levywave
