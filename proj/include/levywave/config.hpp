#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "levywave/levy_measures.hpp"
#include "levywave/solver.hpp"
#include "levywave/wave_kernel.hpp"

namespace levywave {

struct BumpSpec {
    double center = 0.5;
    double half_width = 0.4;
    double amplitude = 1.0;
};

struct ExperimentConfig {
    LevyMeasureSpec measure{AlphaStableSymmetric{1.5}, 0.1};
    Affine f{0.5, 1.0};
    double T = 1.0;
    double L = 1.0;
    double lattice_spacing = 1.0 / 128.0;
    double floor_ratio = 0.1;  // jump floor = floor_ratio * epsilon
    std::vector<double> epsilon_schedule{1.0, 0.1, 0.01};
    std::vector<double> kappa{0.5, 1.0, 2.0};
    VerdictThresholds thresholds;
    std::size_t paths = 2000;
    std::size_t simulate_paths = 1;
    std::uint64_t seed = 20240611;
    unsigned threads = 0;  // 0: machine parallelism
    double r = 3.0;
    int q_max = 64;
    std::size_t output_times = 65;
    double dump_step = 1.0 / 32.0;
    ConePoint probe{1.0, 0.5};
    BumpSpec bump;
    std::string output = "out";
    nlohmann::json expectations = nlohmann::json::object();

    // Extended window [0,T] x [-T, L+T].
    Domain domain() const { return {T, -T, L + T}; }
    void validate() const;
};

LevyMeasureSpec measure_from_json(const nlohmann::json& j, const std::string& where = "measure");
nlohmann::json measure_to_json(const LevyMeasureSpec& spec);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// Parses a JSON document; ConfigError carries line/column or the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// FNV-1a of the canonical serialization.
std::uint64_t config_hash(const ExperimentConfig& c);

}  // namespace levywave
