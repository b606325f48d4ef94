#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "levywave/noise.hpp"

namespace levywave {

using Nonlinearity = std::function<double(double)>;

struct Affine {
    double a = 0.0;
    double b = 1.0;
    double operator()(double u) const { return a * u + b; }
};

// Node values ũ(i, j), i in 0..n1, j in 0..n2.
struct FieldGrid {
    RotatedLattice lattice;
    std::vector<double> values;
    double sigma = 1.0;

    std::size_t stride() const { return lattice.n2 + 1; }
    double at(std::size_t i, std::size_t j) const { return values[i * stride() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * stride() + j]; }
};

// ũ(i,j) = ũ(i-1,j) + ũ(i,j-1) - ũ(i-1,j-1) + weight · f(ũ(i-1,j-1)) · Δξ(i-1,j-1).
FieldGrid solve_volterra(const CellIncrements& increments, const Nonlinearity& f, double weight);

// Mild solution on the lattice: solve_volterra with the Green weight 1/2.
FieldGrid solve_grid(const CellIncrements& increments, const Nonlinearity& f, double sigma = 1.0);

// Value at the componentwise smallest node ⪰ (t, x).
double eval_field(const FieldGrid& field, double t, double x);

struct EventSolution {
    JumpRecord record;
    std::vector<double> node_values;  // pre-jump u at each jump
    double sigma = 1.0;
    Nonlinearity f;
};

EventSolution solve_event_driven(const JumpRecord& record, const Nonlinearity& f, double sigma);

// Sum over jumps strictly earlier than t inside the closed backward cone of (t, x).
double eval_event(const EventSolution& sol, double t, double x);

struct RefinementRow {
    double floor_coarse = 0.0;
    double floor_fine = 0.0;
    double mean = 0.0;  // E ||u_coarse - u_fine||^2 over [0,T] x [0,L]
    double std_error = 0.0;
    std::vector<double> samples;
};

struct RefinementSetup {
    Domain domain;
    double L = 1.0;
    double spacing = 1.0 / 32.0;
    std::size_t paths = 100;
    unsigned threads = 1;
};

// Coupled floors: jumps are drawn once at the smallest floor and thinned for larger ones.
std::vector<RefinementRow> refinement_study(const LevyMeasureSpec& spec, const Nonlinearity& f, double sigma,
                                            const std::vector<double>& floors, std::uint64_t seed,
                                            const RefinementSetup& setup);

}  // namespace levywave
