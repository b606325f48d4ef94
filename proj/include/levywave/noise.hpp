#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "levywave/levy_measures.hpp"
#include "levywave/rng.hpp"
#include "levywave/wave_kernel.hpp"

namespace levywave {

struct Jump {
    double t = 0.0;
    double x = 0.0;
    double z = 0.0;
};

// One realization of the truncated noise: jumps above `floor`, sorted by time.
struct JumpRecord {
    std::vector<Jump> jumps;
    double floor = 0.0;
    double drift = 0.0;
    Domain domain;
};

inline constexpr double kDefaultJumpCap = 1e7;

// Jump rate per unit space-time area, Q^ε({|z| > floor}).
double jump_intensity(const LevyMeasureSpec& spec, double floor);

JumpRecord simulate_jump_record(const LevyMeasureSpec& spec, const Domain& domain, double floor, Rng& rng,
                                double cap = kDefaultJumpCap);

// Keep only the jumps of `record` with |z| > new_floor; recomputes the drift.
JumpRecord restrict_record(const JumpRecord& record, const LevyMeasureSpec& spec, double new_floor);

std::string record_to_csv(const JumpRecord& record);

// Noise mass per lattice cell.
struct CellIncrements {
    std::shared_ptr<const CellGeometry> geometry;
    std::vector<double> values;

    const RotatedLattice& lattice() const { return geometry->lattice; }
    double at(std::size_t i, std::size_t j) const { return values[geometry->index(i, j)]; }
    double& at(std::size_t i, std::size_t j) { return values[geometry->index(i, j)]; }
};

CellIncrements zero_increments(std::shared_ptr<const CellGeometry> geometry);

// (Σ jumps in cell - drift · clipped area) / sigma.
CellIncrements levy_cell_increments(const JumpRecord& record, std::shared_ptr<const CellGeometry> geometry,
                                    double sigma);

// Independent N(0, clipped area) per cell.
CellIncrements gaussian_cell_increments(std::shared_ptr<const CellGeometry> geometry, Rng& rng);

}  // namespace levywave
