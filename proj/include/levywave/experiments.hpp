#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "levywave/config.hpp"
#include "levywave/stats.hpp"
#include "levywave/vprocess.hpp"

namespace levywave {

// Seed of an independent experiment arm under a master seed.
std::uint64_t arm_seed(std::uint64_t master, std::uint64_t arm);

// Normalization of the simulated noise: the truncated standard deviation over jumps above the floor.
double effective_sigma(const LevyMeasureSpec& spec, double floor);

struct ArmSetup {
    Domain domain;
    double spacing = 1.0 / 128.0;
    ConePoint probe{1.0, 0.5};
    TestFunction bump;
    Nonlinearity f;
    unsigned threads = 1;
};

// Per-path u(probe) and ⟨v_{probe.t}, bump⟩ from the lattice solver.
struct ArmResult {
    std::vector<double> u;
    std::vector<double> v;
};

ArmResult run_gaussian_arm(const ArmSetup& setup, std::uint64_t seed, std::size_t paths);
ArmResult run_levy_arm(const ArmSetup& setup, const LevyMeasureSpec& spec, double floor, std::uint64_t seed,
                       std::size_t paths);

struct CompareRow {
    double epsilon = 0.0;
    double floor = 0.0;
    double sigma = 0.0;
    double ks_u = 0.0;
    double ks_v = 0.0;
    StatsReport moments_u;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    StatsReport gaussian_u;
    std::vector<std::pair<std::string, bool>> checks;
    bool pass = true;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

ArmSetup arm_setup(const ExperimentConfig& cfg);

// Lévy arm per epsilon of the schedule against one Gaussian arm; expectations from the config.
CompareResult run_compare(const ExperimentConfig& cfg);

}  // namespace levywave
