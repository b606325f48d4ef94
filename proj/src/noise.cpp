#include "levywave/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "levywave/errors.hpp"

namespace levywave {

double jump_intensity(const LevyMeasureSpec& spec, double floor) { return tail_mass(spec, floor); }

JumpRecord simulate_jump_record(const LevyMeasureSpec& spec, const Domain& domain, double floor, Rng& rng,
                                double cap) {
    JumpRecord rec;
    rec.floor = floor;
    rec.domain = domain;
    if (floor >= spec.epsilon) return rec;
    rec.drift = compensator_drift(spec, floor);
    const double mean = jump_intensity(spec, floor) * domain.area();
    if (mean > cap) throw Error(ErrorCode::BudgetExceeded, "expected jump count " + std::to_string(mean));
    if (mean <= 0.0) return rec;
    const auto count = std::poisson_distribution<long long>(mean)(rng);
    rec.jumps.reserve(static_cast<std::size_t>(count));
    std::uniform_real_distribution<double> ut(0.0, domain.T), ux(domain.x_lo, domain.x_hi);
    for (long long k = 0; k < count; ++k) {
        const double t = ut(rng);
        const double x = ux(rng);
        rec.jumps.push_back({t, x, sample_amplitude(spec, floor, rng)});
    }
    std::stable_sort(rec.jumps.begin(), rec.jumps.end(), [](const Jump& a, const Jump& b) { return a.t < b.t; });
    return rec;
}

JumpRecord restrict_record(const JumpRecord& record, const LevyMeasureSpec& spec, double new_floor) {
    JumpRecord out;
    out.floor = new_floor;
    out.domain = record.domain;
    out.drift = new_floor < spec.epsilon ? compensator_drift(spec, new_floor) : 0.0;
    for (const Jump& j : record.jumps)
        if (std::abs(j.z) > new_floor) out.jumps.push_back(j);
    return out;
}

std::string record_to_csv(const JumpRecord& record) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,z\n";
    for (const Jump& j : record.jumps) os << j.t << ',' << j.x << ',' << j.z << '\n';
    return os.str();
}

CellIncrements zero_increments(std::shared_ptr<const CellGeometry> geometry) {
    CellIncrements inc;
    inc.values.assign(geometry->lattice.cells(), 0.0);
    inc.geometry = std::move(geometry);
    return inc;
}

CellIncrements levy_cell_increments(const JumpRecord& record, std::shared_ptr<const CellGeometry> geometry,
                                    double sigma) {
    if (!(sigma > 0.0)) throw Error(ErrorCode::NonFinite, "sigma must be positive");
    CellIncrements inc = zero_increments(std::move(geometry));
    const RotatedLattice& lat = inc.lattice();
    for (const Jump& j : record.jumps) {
        const RotatedPoint v = lat.to_rotated({j.t, j.x});
        const double a = std::floor(v.v1 / lat.spacing), b = std::floor(v.v2 / lat.spacing);
        if (a < 0.0 || b < 0.0 || a >= static_cast<double>(lat.n1) || b >= static_cast<double>(lat.n2))
            throw Error(ErrorCode::JumpOutsideLattice, "jump at t=" + std::to_string(j.t) + " x=" + std::to_string(j.x));
        inc.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) += j.z;
    }
    const auto& area = inc.geometry->area;
    for (std::size_t k = 0; k < inc.values.size(); ++k) inc.values[k] = (inc.values[k] - record.drift * area[k]) / sigma;
    return inc;
}

CellIncrements gaussian_cell_increments(std::shared_ptr<const CellGeometry> geometry, Rng& rng) {
    CellIncrements inc = zero_increments(std::move(geometry));
    std::normal_distribution<double> normal;
    const auto& area = inc.geometry->area;
    for (std::size_t k = 0; k < inc.values.size(); ++k)
        if (area[k] > 0.0) inc.values[k] = std::sqrt(area[k]) * normal(rng);
    return inc;
}

}  // namespace levywave
