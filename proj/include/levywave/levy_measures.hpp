#pragma once

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levywave/rng.hpp"

namespace levywave {

struct AlphaStableSymmetric {
    double alpha;
};

struct GammaSubordinator {
    double rate;
};

struct PointMass {
    double z0;
    double intensity;
};

struct Table {
    std::vector<std::pair<double, double>> atoms;  // (z, intensity)
};

using LevyFamily = std::variant<AlphaStableSymmetric, GammaSubordinator, PointMass, Table>;

// Lévy measure of a family restricted to {|z| <= epsilon}.
struct LevyMeasureSpec {
    LevyFamily family;
    double epsilon = 1.0;

    void validate() const;
    bool symmetric() const;
    std::string family_name() const;
};

// ∫ z^2 Q^ε(dz).
double sigma2(const LevyMeasureSpec& spec);

// Same integral computed by quadrature only; used to cross-check closed forms.
double sigma2_quadrature(const LevyMeasureSpec& spec);

// ∫_{|z| > threshold} z^2 Q^ε(dz).
double tail_second_moment(const LevyMeasureSpec& spec, double threshold);

double ar_ratio(const LevyMeasureSpec& spec, double kappa);

// Q^ε({|z| > floor}).
double tail_mass(const LevyMeasureSpec& spec, double floor);

// ∫_{|z| > floor} z Q^ε(dz).
double compensator_drift(const LevyMeasureSpec& spec, double floor);

// One draw from Q^ε restricted to {|z| > floor}, normalized.
double sample_amplitude(const LevyMeasureSpec& spec, double floor, Rng& rng);

// ∫_{|z| > floor} (e^{iθz} - 1 - iθz) Q^ε(dz).
std::complex<double> levy_exponent(const LevyMeasureSpec& spec, double theta, double floor = 0.0);

enum class Verdict { Holds, Fails, Inconclusive };

const char* to_string(Verdict v);

struct VerdictThresholds {
    double holds_below = 1e-3;
    double fails_above = 0.05;
};

struct ConditionTable {
    std::vector<double> kappas;
    std::vector<double> epsilons;
    std::vector<std::vector<double>> ratios;  // [kappa][epsilon]
    Verdict verdict = Verdict::Inconclusive;
};

ConditionTable condition_verdict(const LevyFamily& family, const std::vector<double>& kappas,
                                 const std::vector<double>& epsilon_schedule,
                                 const VerdictThresholds& thresholds = {});

}  // namespace levywave
