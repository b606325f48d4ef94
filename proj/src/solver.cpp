#include "levywave/solver.hpp"

#include <cmath>

#include "levywave/errors.hpp"
#include "levywave/parallel.hpp"

namespace levywave {

FieldGrid solve_volterra(const CellIncrements& increments, const Nonlinearity& f, double weight) {
    const RotatedLattice& lat = increments.lattice();
    if (increments.values.size() != lat.cells())
        throw Error(ErrorCode::ShapeMismatch, "increment count does not match the lattice");
    FieldGrid u;
    u.lattice = lat;
    u.values.assign((lat.n1 + 1) * (lat.n2 + 1), 0.0);
    for (std::size_t i = 1; i <= lat.n1; ++i)
        for (std::size_t j = 1; j <= lat.n2; ++j) {
            const double d = increments.at(i - 1, j - 1);
            const double prev = u.at(i - 1, j - 1);
            u.at(i, j) = u.at(i - 1, j) + u.at(i, j - 1) - prev + (d == 0.0 ? 0.0 : weight * f(prev) * d);
        }
    return u;
}

FieldGrid solve_grid(const CellIncrements& increments, const Nonlinearity& f, double sigma) {
    FieldGrid u = solve_volterra(increments, f, 0.5);
    u.sigma = sigma;
    return u;
}

double eval_field(const FieldGrid& field, double t, double x) {
    const NodeIndex n = field.lattice.upper_node({t, x});
    return field.at(n.i, n.j);
}

EventSolution solve_event_driven(const JumpRecord& record, const Nonlinearity& f, double sigma) {
    if (record.drift != 0.0) throw Error(ErrorCode::DriftUnsupported, "event recursion needs a symmetric measure");
    if (!(sigma > 0.0)) throw Error(ErrorCode::NonFinite, "sigma must be positive");
    EventSolution sol;
    sol.record = record;
    sol.sigma = sigma;
    sol.f = f;
    const auto& J = record.jumps;
    std::vector<double> weight(J.size());
    sol.node_values.assign(J.size(), 0.0);
    for (std::size_t k = 0; k < J.size(); ++k) {
        double u = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            if (J[j].t < J[k].t && std::abs(J[k].x - J[j].x) <= J[k].t - J[j].t) u += weight[j];
        sol.node_values[k] = u;
        weight[k] = 0.5 * f(u) * J[k].z / sigma;
    }
    return sol;
}

double eval_event(const EventSolution& sol, double t, double x) {
    double u = 0.0;
    const auto& J = sol.record.jumps;
    for (std::size_t k = 0; k < J.size() && J[k].t < t; ++k)
        if (std::abs(x - J[k].x) <= t - J[k].t) u += 0.5 * sol.f(sol.node_values[k]) * J[k].z / sol.sigma;
    return u;
}

std::vector<RefinementRow> refinement_study(const LevyMeasureSpec& spec, const Nonlinearity& f, double sigma,
                                            const std::vector<double>& floors, std::uint64_t seed,
                                            const RefinementSetup& setup) {
    if (floors.size() < 2) throw Error(ErrorCode::InsufficientSchedule, "need at least two floors");
    for (std::size_t k = 1; k < floors.size(); ++k)
        if (floors[k] > floors[k - 1]) throw Error(ErrorCode::InsufficientSchedule, "floors must be decreasing");
    const RotatedLattice lat = make_lattice(setup.domain, setup.spacing);
    const auto geom = make_cell_geometry(lat, setup.domain);

    // nodes whose pre-image lies in [0, T] x [0, L]
    std::vector<std::size_t> region;
    for (std::size_t i = 0; i <= lat.n1; ++i)
        for (std::size_t j = 0; j <= lat.n2; ++j) {
            const ConePoint p = lat.node(i, j);
            if (p.t >= 0.0 && p.t <= setup.domain.T && p.x >= 0.0 && p.x <= setup.L) region.push_back(i * (lat.n2 + 1) + j);
        }
    const double cell_area = setup.spacing * setup.spacing;

    const std::size_t pairs = floors.size() - 1;
    std::vector<std::vector<double>> dist(pairs, std::vector<double>(setup.paths));
    parallel_for(setup.paths, setup.threads, [&](std::size_t p) {
        Rng rng = make_path_rng(seed, p);
        const JumpRecord base = simulate_jump_record(spec, setup.domain, floors.back(), rng);
        std::vector<FieldGrid> fields;
        for (double fl : floors)
            fields.push_back(solve_grid(levy_cell_increments(restrict_record(base, spec, fl), geom, sigma), f, sigma));
        for (std::size_t k = 0; k < pairs; ++k) {
            double s = 0.0;
            for (std::size_t idx : region) {
                const double d = fields[k].values[idx] - fields[k + 1].values[idx];
                s += d * d;
            }
            dist[k][p] = s * cell_area;
        }
    });

    std::vector<RefinementRow> rows;
    for (std::size_t k = 0; k < pairs; ++k) {
        RefinementRow r;
        r.floor_coarse = floors[k];
        r.floor_fine = floors[k + 1];
        const double n = static_cast<double>(setup.paths);
        double m = 0.0, v = 0.0;
        for (double d : dist[k]) m += d;
        m /= n;
        for (double d : dist[k]) v += (d - m) * (d - m);
        r.mean = m;
        r.std_error = setup.paths > 1 ? std::sqrt(v / (n - 1.0) / n) : 0.0;
        r.samples = std::move(dist[k]);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace levywave
