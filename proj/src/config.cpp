#include "levywave/config.hpp"

#include <fstream>
#include <sstream>

#include "levywave/errors.hpp"

namespace levywave {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
    throw Error(ErrorCode::ConfigError, "field '" + field + "': " + msg);
}

template <class T>
T read(const json& j, const std::string& key, const std::string& where, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        bad(where + "." + key, e.what());
    }
}

double positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v)) bad(field, "must be positive and finite");
    return v;
}

}  // namespace

LevyMeasureSpec measure_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    const auto family = read<std::string>(j, "family", where, "");
    LevyMeasureSpec spec;
    spec.epsilon = read<double>(j, "epsilon", where, 1.0);
    if (family == "alpha_stable") {
        spec.family = AlphaStableSymmetric{read<double>(j, "alpha", where, 1.5)};
    } else if (family == "gamma") {
        spec.family = GammaSubordinator{read<double>(j, "rate", where, 1.0)};
    } else if (family == "point_mass") {
        spec.family = PointMass{read<double>(j, "z0", where, 1.0), read<double>(j, "intensity", where, 1.0)};
    } else if (family == "table") {
        Table t;
        if (!j.contains("atoms") || !j["atoms"].is_array()) bad(where + ".atoms", "expected an array of [z, intensity]");
        for (const auto& a : j["atoms"]) {
            if (!a.is_array() || a.size() != 2) bad(where + ".atoms", "each atom is [z, intensity]");
            t.atoms.push_back({a[0].get<double>(), a[1].get<double>()});
        }
        spec.family = t;
    } else {
        bad(where + ".family", "unknown family '" + family + "'");
    }
    try {
        spec.validate();
    } catch (const Error& e) {
        bad(where, e.what());
    }
    return spec;
}

json measure_to_json(const LevyMeasureSpec& spec) {
    json j{{"family", spec.family_name()}, {"epsilon", spec.epsilon}};
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family)) j["alpha"] = a->alpha;
    if (const auto* g = std::get_if<GammaSubordinator>(&spec.family)) j["rate"] = g->rate;
    if (const auto* p = std::get_if<PointMass>(&spec.family)) {
        j["z0"] = p->z0;
        j["intensity"] = p->intensity;
    }
    if (const auto* t = std::get_if<Table>(&spec.family)) {
        j["atoms"] = json::array();
        for (auto [z, w] : t->atoms) j["atoms"].push_back({z, w});
    }
    return j;
}

void ExperimentConfig::validate() const {
    positive(T, "T");
    positive(L, "L");
    positive(lattice_spacing, "lattice_spacing");
    if (!(floor_ratio > 0.0 && floor_ratio < 1.0)) bad("floor_ratio", "must lie in (0, 1)");
    for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
        positive(epsilon_schedule[i], "epsilon_schedule");
        if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1])) bad("epsilon_schedule", "must be strictly decreasing");
    }
    for (double k : kappa) positive(k, "kappa");
    if (paths < 2) bad("paths", "need at least 2");
    if (!(r >= 0.0)) bad("r", "must be non-negative");
    if (q_max < 0) bad("q_max", "must be non-negative");
    if (output_times < 2) bad("output_times", "need at least 2");
    positive(dump_step, "dump_step");
    positive(bump.half_width, "bump.half_width");
    if (bump.center - bump.half_width <= -T || bump.center + bump.half_width >= L + T)
        bad("bump", "support must lie inside the window (-T, L+T)");
    if (!(probe.t > 0.0 && probe.t <= T && probe.x >= 0.0 && probe.x <= L)) bad("probe", "must lie in (0,T] x [0,L]");
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) bad("<root>", "expected an object");
    ExperimentConfig c;
    if (j.contains("measure")) c.measure = measure_from_json(j["measure"]);
    if (j.contains("f")) {
        c.f.a = read<double>(j["f"], "a", "f", c.f.a);
        c.f.b = read<double>(j["f"], "b", "f", c.f.b);
    }
    c.T = read<double>(j, "T", "", c.T);
    c.L = read<double>(j, "L", "", c.L);
    c.lattice_spacing = read<double>(j, "lattice_spacing", "", c.lattice_spacing);
    c.floor_ratio = read<double>(j, "floor_ratio", "", c.floor_ratio);
    c.epsilon_schedule = read<std::vector<double>>(j, "epsilon_schedule", "", c.epsilon_schedule);
    c.kappa = read<std::vector<double>>(j, "kappa", "", c.kappa);
    if (j.contains("thresholds")) {
        c.thresholds.holds_below = read<double>(j["thresholds"], "holds_below", "thresholds", c.thresholds.holds_below);
        c.thresholds.fails_above = read<double>(j["thresholds"], "fails_above", "thresholds", c.thresholds.fails_above);
    }
    c.paths = read<std::size_t>(j, "paths", "", c.paths);
    c.simulate_paths = read<std::size_t>(j, "simulate_paths", "", c.simulate_paths);
    c.seed = read<std::uint64_t>(j, "seed", "", c.seed);
    c.threads = read<unsigned>(j, "threads", "", c.threads);
    c.r = read<double>(j, "r", "", c.r);
    c.q_max = read<int>(j, "q_max", "", c.q_max);
    c.output_times = read<std::size_t>(j, "output_times", "", c.output_times);
    c.dump_step = read<double>(j, "dump_step", "", c.dump_step);
    if (j.contains("probe")) {
        c.probe.t = read<double>(j["probe"], "t", "probe", c.probe.t);
        c.probe.x = read<double>(j["probe"], "x", "probe", c.probe.x);
    }
    if (j.contains("bump")) {
        c.bump.center = read<double>(j["bump"], "center", "bump", c.bump.center);
        c.bump.half_width = read<double>(j["bump"], "half_width", "bump", c.bump.half_width);
        c.bump.amplitude = read<double>(j["bump"], "amplitude", "bump", c.bump.amplitude);
    }
    c.output = read<std::string>(j, "output", "", c.output);
    if (j.contains("expectations")) c.expectations = j["expectations"];
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    return json{
        {"measure", measure_to_json(c.measure)},
        {"f", {{"a", c.f.a}, {"b", c.f.b}}},
        {"T", c.T},
        {"L", c.L},
        {"lattice_spacing", c.lattice_spacing},
        {"floor_ratio", c.floor_ratio},
        {"epsilon_schedule", c.epsilon_schedule},
        {"kappa", c.kappa},
        {"thresholds", {{"holds_below", c.thresholds.holds_below}, {"fails_above", c.thresholds.fails_above}}},
        {"paths", c.paths},
        {"simulate_paths", c.simulate_paths},
        {"seed", c.seed},
        {"threads", c.threads},
        {"r", c.r},
        {"q_max", c.q_max},
        {"output_times", c.output_times},
        {"dump_step", c.dump_step},
        {"probe", {{"t", c.probe.t}, {"x", c.probe.x}}},
        {"bump", {{"center", c.bump.center}, {"half_width", c.bump.half_width}, {"amplitude", c.bump.amplitude}}},
        {"output", c.output},
        {"expectations", c.expectations},
    };
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ConfigError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    return config_from_json(j);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::uint64_t config_hash(const ExperimentConfig& c) {
    const std::string s = config_to_json(c).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace levywave
