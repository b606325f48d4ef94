#include "levywave/experiments.hpp"

#include <cmath>
#include <sstream>

#include "levywave/errors.hpp"
#include "levywave/parallel.hpp"

namespace levywave {

std::uint64_t arm_seed(std::uint64_t master, std::uint64_t arm) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (arm + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double effective_sigma(const LevyMeasureSpec& spec, double floor) {
    const double s2 = tail_second_moment(spec, floor);
    if (!(s2 > 0.0)) throw Error(ErrorCode::EmptySupport, "no jumps above the floor");
    return std::sqrt(s2);
}

namespace {

double v_statistic(const FieldGrid& u, const CellIncrements& inc, const Nonlinearity& f, const TestFunction& phi,
                   double t) {
    const CellGeometry& g = *inc.geometry;
    double s = 0.0;
    for (std::size_t i = 0; i < g.lattice.n1; ++i)
        for (std::size_t j = 0; j < g.lattice.n2; ++j) {
            const std::size_t k = g.index(i, j);
            const double d = inc.values[k];
            if (d == 0.0) continue;
            const ConePoint c = g.centroid[k];
            if (!(c.t <= t)) continue;
            const double tau = t - c.t;
            s += 0.5 * f(u.at(i, j)) * d * (phi.phi(c.x + tau) + phi.phi(c.x - tau));
        }
    return s;
}

template <class MakeIncrements>
ArmResult run_arm(const ArmSetup& setup, std::size_t paths, MakeIncrements&& make) {
    ArmResult r;
    r.u.assign(paths, 0.0);
    r.v.assign(paths, 0.0);
    parallel_for(paths, setup.threads, [&](std::size_t p) {
        const CellIncrements inc = make(p);
        const FieldGrid u = solve_grid(inc, setup.f);
        r.u[p] = eval_field(u, setup.probe.t, setup.probe.x);
        r.v[p] = v_statistic(u, inc, setup.f, setup.bump, setup.probe.t);
    });
    return r;
}

}  // namespace

ArmResult run_gaussian_arm(const ArmSetup& setup, std::uint64_t seed, std::size_t paths) {
    const auto geom = make_cell_geometry(make_lattice(setup.domain, setup.spacing), setup.domain);
    return run_arm(setup, paths, [&](std::size_t p) {
        Rng rng = make_path_rng(seed, p);
        return gaussian_cell_increments(geom, rng);
    });
}

ArmResult run_levy_arm(const ArmSetup& setup, const LevyMeasureSpec& spec, double floor, std::uint64_t seed,
                       std::size_t paths) {
    const auto geom = make_cell_geometry(make_lattice(setup.domain, setup.spacing), setup.domain);
    const double sigma = effective_sigma(spec, floor);
    return run_arm(setup, paths, [&](std::size_t p) {
        Rng rng = make_path_rng(seed, p);
        const JumpRecord rec = simulate_jump_record(spec, setup.domain, floor, rng);
        return levy_cell_increments(rec, geom, sigma);
    });
}

ArmSetup arm_setup(const ExperimentConfig& cfg) {
    ArmSetup s;
    s.domain = cfg.domain();
    s.spacing = cfg.lattice_spacing;
    s.probe = cfg.probe;
    s.bump = make_bump(cfg.bump.center, cfg.bump.half_width, cfg.bump.amplitude);
    s.f = cfg.f;
    s.threads = cfg.threads == 0 ? default_threads() : cfg.threads;
    return s;
}

CompareResult run_compare(const ExperimentConfig& cfg) {
    const ArmSetup setup = arm_setup(cfg);
    CompareResult res;
    const ArmResult gauss = run_gaussian_arm(setup, arm_seed(cfg.seed, 0), cfg.paths);
    res.gaussian_u = moment_report(SampleSet{gauss.u, "gaussian u", cfg.seed});
    for (std::size_t k = 0; k < cfg.epsilon_schedule.size(); ++k) {
        LevyMeasureSpec spec = cfg.measure;
        spec.epsilon = cfg.epsilon_schedule[k];
        CompareRow row;
        row.epsilon = spec.epsilon;
        row.floor = cfg.floor_ratio * spec.epsilon;
        row.sigma = effective_sigma(spec, row.floor);
        const ArmResult levy = run_levy_arm(setup, spec, row.floor, arm_seed(cfg.seed, k + 1), cfg.paths);
        row.ks_u = ks_two_sample(levy.u, gauss.u);
        row.ks_v = ks_two_sample(levy.v, gauss.v);
        row.moments_u = moment_report(SampleSet{levy.u, "levy u", cfg.seed});
        res.rows.push_back(std::move(row));
    }

    const auto& ex = cfg.expectations;
    std::vector<std::string> marginals{"u"};
    if (ex.contains("marginals")) marginals = ex["marginals"].get<std::vector<std::string>>();
    for (const std::string& m : marginals) {
        std::vector<double> ks;
        for (const auto& r : res.rows) ks.push_back(m == "v" ? r.ks_v : r.ks_u);
        if (ks.empty()) continue;
        if (ex.value("ks_nonincreasing", false)) {
            bool ok = true;
            for (std::size_t i = 1; i < ks.size(); ++i) ok = ok && ks[i] <= ks[i - 1];
            res.checks.push_back({"ks_" + m + "_nonincreasing", ok});
        }
        if (ex.contains("ks_max_at_smallest"))
            res.checks.push_back({"ks_" + m + "_below_" + ex["ks_max_at_smallest"].dump() + "_at_smallest_epsilon",
                                  ks.back() < ex["ks_max_at_smallest"].get<double>()});
        if (ex.contains("ks_min_all")) {
            bool ok = true;
            for (double d : ks) ok = ok && d > ex["ks_min_all"].get<double>();
            res.checks.push_back({"ks_" + m + "_above_" + ex["ks_min_all"].dump() + "_at_every_epsilon", ok});
        }
    }
    for (const auto& c : res.checks) res.pass = res.pass && c.second;
    return res;
}

nlohmann::json CompareResult::to_json() const {
    nlohmann::json j;
    j["gaussian_u"] = gaussian_u.to_json();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows)
        j["rows"].push_back({{"epsilon", r.epsilon},
                             {"floor", r.floor},
                             {"sigma", r.sigma},
                             {"ks_u", r.ks_u},
                             {"ks_v", r.ks_v},
                             {"levy_u", r.moments_u.to_json()}});
    j["checks"] = nlohmann::json::array();
    for (const auto& [name, ok] : checks) j["checks"].push_back({{"name", name}, {"pass", ok}});
    j["pass"] = pass;
    return j;
}

std::string CompareResult::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "epsilon,floor,sigma,ks_u,ks_v,levy_var_u,levy_var_u_se\n";
    for (const auto& r : rows) {
        const auto& v = r.moments_u.get("variance");
        os << r.epsilon << ',' << r.floor << ',' << r.sigma << ',' << r.ks_u << ',' << r.ks_v << ',' << v.value << ','
           << v.std_error.value_or(0.0) << '\n';
    }
    return os.str();
}

}  // namespace levywave
