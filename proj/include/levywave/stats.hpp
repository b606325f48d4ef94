#pragma once

#include <complex>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "levywave/levy_measures.hpp"
#include "levywave/vprocess.hpp"

namespace levywave {

struct SampleSet {
    std::vector<double> values;
    std::string label;
    std::uint64_t seed = 0;
};

// Sup distance between the two empirical CDFs.
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);
double ks_two_sample(const SampleSet& a, const SampleSet& b);

struct StatEntry {
    std::string name;
    double value = 0.0;
    std::optional<double> std_error;
};

struct StatsReport {
    std::vector<StatEntry> entries;
    nlohmann::json metadata = nlohmann::json::object();

    void add(std::string name, double value, std::optional<double> se = std::nullopt);
    const StatEntry& get(const std::string& name) const;
    nlohmann::json to_json() const;
};

// Mean, variance, skewness and excess kurtosis with leave-one-out jackknife errors.
StatsReport moment_report(const SampleSet& samples);

struct OrthogonalityResult {
    double correlation = 0.0;
    double z = 0.0;
    std::size_t n = 0;
    bool pass = false;
};

// Pearson correlation of increments with a past functional; a constant functional
// falls back to the mean-zero test of the increments.
OrthogonalityResult martingale_orthogonality(const std::vector<double>& increments, const std::vector<double>& past);

// Drift measure of the characteristic-function martingale problem. A null spec selects
// the Gaussian noise.
struct CompensatorSetup {
    double xi = 0.0;
    TestFunction phi1;
    TestFunction phi2;
    const LevyMeasureSpec* spec = nullptr;
    double floor = 0.0;  // jumps at or below this size are absent from the simulated noise
    double sigma = 1.0;
    std::vector<double> times;
    double step = 1.0 / 128.0;  // trapezoid step of the drift integral
};

struct CompensatorPath {
    std::vector<double> times;
    std::vector<std::complex<double>> A;
    std::vector<double> X;  // ⟨u(t),φ1⟩ + ⟨v_t,φ2⟩
    std::vector<std::complex<double>> M;
};

// Integrand of the jump part at one node: ∫(e^{iθz} - 1 - iθz) with θ = ξ f φ2 / σ.
std::complex<double> jump_compensator_density(const CompensatorSetup& setup, double theta);

CompensatorPath compensator_A(const PathView& path, const CompensatorSetup& setup);

}  // namespace levywave
