#include "levywave/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "levywave/errors.hpp"
#include "levywave/experiments.hpp"
#include "levywave/parallel.hpp"

namespace levywave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string config;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    bool threads_set = false;
    std::string out;
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + p.string());
    f << text;
}

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

json header(const std::string& command, const ExperimentConfig& cfg) {
    return json{{"command", command}, {"config_hash", hex(config_hash(cfg))}, {"seed", cfg.seed}, {"config", config_to_json(cfg)}};
}

int cmd_check_condition(const ExperimentConfig& cfg, const fs::path& out, std::ostream& os) {
    const ConditionTable t = condition_verdict(cfg.measure.family, cfg.kappa, cfg.epsilon_schedule, cfg.thresholds);
    std::ostringstream csv;
    csv.precision(17);
    csv << "kappa,epsilon,ar_ratio\n";
    for (std::size_t k = 0; k < t.kappas.size(); ++k)
        for (std::size_t e = 0; e < t.epsilons.size(); ++e) csv << t.kappas[k] << ',' << t.epsilons[e] << ',' << t.ratios[k][e] << '\n';
    write_file(out / "condition.csv", csv.str());
    json rep = header("check-condition", cfg);
    rep["verdict"] = to_string(t.verdict);
    rep["kappas"] = t.kappas;
    rep["epsilons"] = t.epsilons;
    rep["ratios"] = t.ratios;
    write_file(out / "report.json", rep.dump(2) + "\n");
    os << "family: " << cfg.measure.family_name() << "\n";
    for (std::size_t k = 0; k < t.kappas.size(); ++k) {
        os << "kappa " << t.kappas[k] << ":";
        for (double r : t.ratios[k]) os << ' ' << r;
        os << "\n";
    }
    os << "verdict: " << to_string(t.verdict) << "\n";
    return 0;
}

std::string field_csv(const FieldGrid& u, const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "t,x,u\n";
    const auto nt = static_cast<std::size_t>(std::llround(cfg.T / cfg.dump_step));
    const auto nx = static_cast<std::size_t>(std::llround(cfg.L / cfg.dump_step));
    for (std::size_t a = 0; a <= nt; ++a)
        for (std::size_t b = 0; b <= nx; ++b) {
            const double t = std::min(cfg.T, cfg.dump_step * static_cast<double>(a));
            const double x = std::min(cfg.L, cfg.dump_step * static_cast<double>(b));
            os << t << ',' << x << ',' << eval_field(u, t, x) << '\n';
        }
    return os.str();
}

int cmd_simulate(const ExperimentConfig& cfg, const fs::path& out, std::ostream& os) {
    const Domain dom = cfg.domain();
    const auto geom = make_cell_geometry(make_lattice(dom, cfg.lattice_spacing), dom);
    const double floor = cfg.floor_ratio * cfg.measure.epsilon;
    const double sigma = effective_sigma(cfg.measure, floor);
    const auto times = default_output_times(cfg.T, cfg.output_times);
    std::vector<double> probe(cfg.simulate_paths);
    std::vector<std::size_t> jump_counts(cfg.simulate_paths);
    const std::uint64_t seed = arm_seed(cfg.seed, 1);
    const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
    parallel_for(cfg.simulate_paths, threads, [&](std::size_t p) {
        Rng rng = make_path_rng(seed, p);
        const JumpRecord rec = simulate_jump_record(cfg.measure, dom, floor, rng);
        const CellIncrements inc = levy_cell_increments(rec, geom, sigma);
        const FieldGrid u = solve_grid(inc, cfg.f, sigma);
        const VPath v = v_coeffs_direct(u, inc, times, cfg.q_max, cfg.f);
        const std::string tag = "path" + std::to_string(p);
        write_file(out / ("jumps_" + tag + ".csv"), record_to_csv(rec));
        write_file(out / ("u_" + tag + ".csv"), field_csv(u, cfg));
        write_file(out / ("v_" + tag + ".csv"), vpath_to_csv(v));
        probe[p] = eval_field(u, cfg.probe.t, cfg.probe.x);
        jump_counts[p] = rec.jumps.size();
    });
    json rep = header("simulate", cfg);
    rep["floor"] = floor;
    rep["sigma"] = sigma;
    rep["paths"] = cfg.simulate_paths;
    rep["jump_counts"] = jump_counts;
    rep["u_probe"] = probe;
    if (probe.size() >= 2) rep["u_probe_moments"] = moment_report(SampleSet{probe, "u probe", cfg.seed}).to_json();
    write_file(out / "report.json", rep.dump(2) + "\n");
    os << "simulated " << cfg.simulate_paths << " path(s), floor " << floor << ", sigma " << sigma << "\n";
    return 0;
}

int cmd_compare(const ExperimentConfig& cfg, const fs::path& out, std::ostream& os) {
    const CompareResult res = run_compare(cfg);
    write_file(out / "compare.csv", res.to_csv());
    json rep = header("compare", cfg);
    rep["result"] = res.to_json();
    write_file(out / "report.json", rep.dump(2) + "\n");
    for (const auto& r : res.rows)
        os << "epsilon " << r.epsilon << ": KS(u) " << r.ks_u << ", KS(v) " << r.ks_v << "\n";
    for (const auto& [name, ok] : res.checks) os << (ok ? "PASS " : "FAIL ") << name << "\n";
    return res.pass ? 0 : 1;
}

int cmd_hermite(const ExperimentConfig& cfg, const fs::path& out, std::ostream& os) {
    const TestFunction phi = make_bump(cfg.bump.center, cfg.bump.half_width, cfg.bump.amplitude);
    const double A = std::max(std::abs(cfg.domain().x_lo), std::abs(cfg.domain().x_hi)) + 5.0;
    HermiteCoeffs c = project(phi.phi, cfg.q_max, A);
    c.r = cfg.r;
    write_file(out / "hermite.csv", coeffs_to_csv(c));
    json rep = header("hermite", cfg);
    rep["window"] = A;
    rep["dual_norm"] = dual_norm(c, cfg.r);
    rep["primal_norm"] = primal_norm(c, cfg.r);
    rep["dual_tail_bound"] = dual_tail_bound(c.coeffs, cfg.r);
    write_file(out / "report.json", rep.dump(2) + "\n");
    os << "H_-r norm " << dual_norm(c, cfg.r) << ", H_r norm " << primal_norm(c, cfg.r) << ", tail bound "
       << dual_tail_bound(c.coeffs, cfg.r) << "\n";
    return 0;
}

int cmd_validate(const ExperimentConfig& cfg, const fs::path& out, std::ostream& os) {
    const auto checks = validation_suite(cfg);
    json rep = header("validate", cfg);
    rep["checks"] = json::array();
    bool all = true;
    std::ostringstream csv;
    csv << "check,pass,detail\n";
    for (const auto& c : checks) {
        all = all && c.pass;
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        rep["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        csv << c.name << ',' << (c.pass ? 1 : 0) << ",\"" << c.detail << "\"\n";
    }
    rep["pass"] = all;
    write_file(out / "validate.csv", csv.str());
    write_file(out / "report.json", rep.dump(2) + "\n");
    return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stochastic wave equation with Lévy and Gaussian space-time noise"};
    app.require_subcommand(1);
    Options opt;
    const char* names[] = {"check-condition", "simulate", "compare", "hermite", "validate"};
    const char* help[] = {"tabulate the normal-approximation condition and its verdict",
                          "simulate paths of u and the Hermite coefficients of v",
                          "Lévy versus Gaussian Monte Carlo comparison over the epsilon schedule",
                          "Hermite coefficients and H_r norms of the configured bump",
                          "run the invariant suite"};
    std::vector<CLI::App*> subs;
    for (int k = 0; k < 5; ++k) {
        CLI::App* s = app.add_subcommand(names[k], help[k]);
        s->add_option("--config", opt.config, "experiment config (JSON)")->required();
        s->add_option("--seed", opt.seed, "override the master seed")->each([&](const std::string&) { opt.seed_set = true; });
        s->add_option("--threads", opt.threads, "worker threads")->each([&](const std::string&) { opt.threads_set = true; });
        s->add_option("--out", opt.out, "output directory");
        subs.push_back(s);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::string command;
    for (int k = 0; k < 5; ++k)
        if (subs[static_cast<std::size_t>(k)]->parsed()) command = names[k];

    ExperimentConfig cfg;
    fs::path dir;
    try {
        cfg = load_config(opt.config);
        if (opt.seed_set) cfg.seed = opt.seed;
        if (opt.threads_set) cfg.threads = opt.threads;
        if (const char* env = std::getenv("LEVY_WAVE_OUT"); env && *env)
            dir = env;
        else if (!opt.out.empty())
            dir = opt.out;
        else
            dir = cfg.output;
        fs::create_directories(dir);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "ConfigError: " << e.what() << "\n";
        return 2;
    }

    try {
        if (command == "check-condition") return cmd_check_condition(cfg, dir, out);
        if (command == "simulate") return cmd_simulate(cfg, dir, out);
        if (command == "compare") return cmd_compare(cfg, dir, out);
        if (command == "hermite") return cmd_hermite(cfg, dir, out);
        return cmd_validate(cfg, dir, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? 2 : 1;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

}  // namespace levywave
