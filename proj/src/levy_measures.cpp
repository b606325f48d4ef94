#include "levywave/levy_measures.hpp"

#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>

#include "levywave/errors.hpp"
#include "levywave/quadrature.hpp"

namespace levywave {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::pair<double, double>> atoms_of(const LevyFamily& fam) {
    if (const auto* pm = std::get_if<PointMass>(&fam)) return {{pm->z0, pm->intensity}};
    if (const auto* t = std::get_if<Table>(&fam)) return t->atoms;
    return {};
}

bool is_atomic(const LevyFamily& fam) {
    return std::holds_alternative<PointMass>(fam) || std::holds_alternative<Table>(fam);
}

double e1(double x) { return boost::math::expint(1, x); }

// sin(x) - x without cancellation near 0
double sin_minus_id(double x) {
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)));
    }
    return std::sin(x) - x;
}

// e^{ix} - 1 - ix
std::complex<double> exp_remainder(double x) {
    const double s = std::sin(0.5 * x);
    return {-2.0 * s * s, sin_minus_id(x)};
}

}  // namespace

void LevyMeasureSpec::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::NonFinite, "epsilon must be positive and finite");
    std::visit(overloaded{
                   [](const AlphaStableSymmetric& a) {
                       if (!(a.alpha > 0.0 && a.alpha < 2.0))
                           throw Error(ErrorCode::NonFinite, "alpha must lie in (0, 2)");
                   },
                   [](const GammaSubordinator& g) {
                       if (!(g.rate > 0.0) || !std::isfinite(g.rate))
                           throw Error(ErrorCode::NonFinite, "gamma rate must be positive");
                   },
                   [](const PointMass& p) {
                       if (p.z0 == 0.0 || !std::isfinite(p.z0) || !(p.intensity > 0.0) ||
                           !std::isfinite(p.intensity))
                           throw Error(ErrorCode::NonFinite, "point mass needs z0 != 0 and intensity > 0");
                   },
                   [](const Table& t) {
                       if (t.atoms.empty()) throw Error(ErrorCode::NonFinite, "empty atom table");
                       std::vector<double> zs;
                       for (auto [z, w] : t.atoms) {
                           if (z == 0.0 || !std::isfinite(z) || !(w > 0.0) || !std::isfinite(w))
                               throw Error(ErrorCode::NonFinite, "table atoms need z != 0 and intensity > 0");
                           zs.push_back(z);
                       }
                       std::sort(zs.begin(), zs.end());
                       if (std::adjacent_find(zs.begin(), zs.end()) != zs.end())
                           throw Error(ErrorCode::NonFinite, "table atoms must have distinct z");
                   },
               },
               family);
}

bool LevyMeasureSpec::symmetric() const {
    if (std::holds_alternative<AlphaStableSymmetric>(family)) return true;
    if (std::holds_alternative<GammaSubordinator>(family)) return false;
    auto atoms = atoms_of(family);
    std::vector<std::pair<double, double>> pos, neg;
    for (auto [z, w] : atoms) {
        if (std::abs(z) > epsilon) continue;
        (z > 0 ? pos : neg).push_back({std::abs(z), w});
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    return pos == neg;
}

std::string LevyMeasureSpec::family_name() const {
    return std::visit(overloaded{
                          [](const AlphaStableSymmetric&) { return std::string("alpha_stable"); },
                          [](const GammaSubordinator&) { return std::string("gamma"); },
                          [](const PointMass&) { return std::string("point_mass"); },
                          [](const Table&) { return std::string("table"); },
                      },
                      family);
}

double tail_second_moment(const LevyMeasureSpec& spec, double threshold) {
    spec.validate();
    const double eps = spec.epsilon;
    threshold = std::max(threshold, 0.0);
    if (is_atomic(spec.family)) {
        double s = 0.0;
        for (auto [z, w] : atoms_of(spec.family))
            if (std::abs(z) > threshold && std::abs(z) <= eps) s += z * z * w;
        return s;
    }
    if (threshold >= eps) return 0.0;
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family)) {
        const double p = 2.0 - a->alpha;
        return 2.0 * (std::pow(eps, p) - std::pow(threshold, p)) / p;
    }
    const double r = std::get<GammaSubordinator>(spec.family).rate;
    return (boost::math::gamma_p(2.0, r * eps) - boost::math::gamma_p(2.0, r * threshold)) / r;
}

double sigma2(const LevyMeasureSpec& spec) {
    const double s = tail_second_moment(spec, 0.0);
    if (!(s > 0.0) || !std::isfinite(s))
        throw Error(ErrorCode::NonFinite, "truncated second moment is zero or infinite");
    return s;
}

double sigma2_quadrature(const LevyMeasureSpec& spec) {
    spec.validate();
    const double eps = spec.epsilon;
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family)) {
        const double alpha = a->alpha;
        return 2.0 * integrate_singular([alpha](double z) { return std::pow(z, 1.0 - alpha); }, 0.0, eps, 1e-12);
    }
    if (const auto* g = std::get_if<GammaSubordinator>(&spec.family)) {
        const double r = g->rate;
        return integrate([r](double z) { return r * z * std::exp(-r * z); }, 0.0, eps, 1e-12);
    }
    return sigma2(spec);
}

double ar_ratio(const LevyMeasureSpec& spec, double kappa) {
    if (!(kappa > 0.0)) throw Error(ErrorCode::NonFinite, "kappa must be positive");
    const double s2 = sigma2(spec);
    const double threshold = kappa * std::sqrt(s2);
    if (threshold >= spec.epsilon) return 0.0;
    return std::clamp(tail_second_moment(spec, threshold) / s2, 0.0, 1.0);
}

double tail_mass(const LevyMeasureSpec& spec, double floor) {
    spec.validate();
    const double eps = spec.epsilon;
    if (is_atomic(spec.family)) {
        double s = 0.0;
        for (auto [z, w] : atoms_of(spec.family))
            if (std::abs(z) > floor && std::abs(z) <= eps) s += w;
        return s;
    }
    if (floor >= eps) return 0.0;
    if (!(floor > 0.0)) throw Error(ErrorCode::NonFinite, "continuous families have infinite mass near 0");
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family))
        return 2.0 * (std::pow(floor, -a->alpha) - std::pow(eps, -a->alpha)) / a->alpha;
    const double r = std::get<GammaSubordinator>(spec.family).rate;
    return r * (e1(r * floor) - e1(r * eps));
}

double compensator_drift(const LevyMeasureSpec& spec, double floor) {
    spec.validate();
    if (floor >= spec.epsilon) throw Error(ErrorCode::FloorAboveTruncation, "floor must be below epsilon");
    if (std::holds_alternative<AlphaStableSymmetric>(spec.family)) return 0.0;
    if (const auto* g = std::get_if<GammaSubordinator>(&spec.family)) {
        const double r = g->rate;
        return std::exp(-r * std::max(floor, 0.0)) - std::exp(-r * spec.epsilon);
    }
    // positive and negative parts summed in the same order so mirrored tables cancel exactly
    std::vector<std::pair<double, double>> pos, neg;
    for (auto [z, w] : atoms_of(spec.family)) {
        if (std::abs(z) <= floor || std::abs(z) > spec.epsilon) continue;
        (z > 0 ? pos : neg).push_back({std::abs(z), w});
    }
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end());
    double p = 0.0, n = 0.0;
    for (auto [a, w] : pos) p += a * w;
    for (auto [a, w] : neg) n += a * w;
    return p - n;
}

double sample_amplitude(const LevyMeasureSpec& spec, double floor, Rng& rng) {
    const double mass = tail_mass(spec, floor);
    if (!(mass > 0.0)) throw Error(ErrorCode::EmptySupport, "no mass above the floor");
    const double eps = spec.epsilon;
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family)) {
        const double u = uniform_open_closed(rng);
        const double lo = std::pow(floor, -a->alpha), hi = std::pow(eps, -a->alpha);
        const double z = std::pow(lo - u * (lo - hi), -1.0 / a->alpha);
        return (rng() & 1u) ? z : -z;
    }
    if (const auto* g = std::get_if<GammaSubordinator>(&spec.family)) {
        const double r = g->rate;
        const double e_lo = e1(r * floor);
        const double target = uniform_open_closed(rng) * (e_lo - e1(r * eps));
        double lo = floor, hi = eps;
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (e_lo - e1(r * mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return hi;
    }
    std::vector<std::pair<double, double>> live;
    for (auto [z, w] : atoms_of(spec.family))
        if (std::abs(z) > floor && std::abs(z) <= eps) live.push_back({z, w});
    const double target = uniform_open_closed(rng) * mass;
    double cum = 0.0;
    for (auto [z, w] : live) {
        cum += w;
        if (cum >= target) return z;
    }
    return live.back().first;
}

std::complex<double> levy_exponent(const LevyMeasureSpec& spec, double theta, double floor) {
    spec.validate();
    const double eps = spec.epsilon;
    floor = std::max(floor, 0.0);
    if (is_atomic(spec.family)) {
        std::complex<double> s = 0.0;
        for (auto [z, w] : atoms_of(spec.family))
            if (std::abs(z) > floor && std::abs(z) <= eps) s += w * exp_remainder(theta * z);
        return s;
    }
    if (floor >= eps || theta == 0.0) return 0.0;
    if (const auto* a = std::get_if<AlphaStableSymmetric>(&spec.family)) {
        const double alpha = a->alpha;
        auto f = [theta, alpha](double z) {
            const double s = std::sin(0.5 * theta * z) / z;
            return -4.0 * s * s * std::pow(z, 1.0 - alpha);
        };
        const double re = floor > 0.0 ? integrate(f, floor, eps, 1e-12) : integrate_singular(f, 0.0, eps, 1e-12);
        return {re, 0.0};
    }
    const double r = std::get<GammaSubordinator>(spec.family).rate;
    auto fr = [theta, r](double z) {
        const double s = std::sin(0.5 * theta * z);
        return -2.0 * s * s * r * std::exp(-r * z) / z;
    };
    auto fi = [theta, r](double z) { return sin_minus_id(theta * z) * r * std::exp(-r * z) / z; };
    return {integrate(fr, floor, eps, 1e-12), integrate(fi, floor, eps, 1e-12)};
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "HOLDS";
        case Verdict::Fails: return "FAILS";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

ConditionTable condition_verdict(const LevyFamily& family, const std::vector<double>& kappas,
                                 const std::vector<double>& epsilon_schedule, const VerdictThresholds& thresholds) {
    if (epsilon_schedule.size() < 3)
        throw Error(ErrorCode::InsufficientSchedule, "need at least 3 epsilon values");
    for (std::size_t i = 1; i < epsilon_schedule.size(); ++i)
        if (!(epsilon_schedule[i] < epsilon_schedule[i - 1]))
            throw Error(ErrorCode::InsufficientSchedule, "epsilon schedule must be strictly decreasing");
    if (kappas.empty()) throw Error(ErrorCode::InsufficientSchedule, "kappa list is empty");

    ConditionTable table;
    table.kappas = kappas;
    table.epsilons = epsilon_schedule;
    for (double kappa : kappas) {
        std::vector<double> row;
        for (double eps : epsilon_schedule) row.push_back(ar_ratio(LevyMeasureSpec{family, eps}, kappa));
        table.ratios.push_back(std::move(row));
    }

    const std::size_t n = epsilon_schedule.size();
    bool holds = true, fails = false;
    for (const auto& row : table.ratios) {
        const bool small = row[n - 1] < thresholds.holds_below;
        const bool monotone = row[n - 3] >= row[n - 2] && row[n - 2] >= row[n - 1];
        holds = holds && small && monotone;
        fails = fails || (row[n - 2] >= thresholds.fails_above && row[n - 1] >= thresholds.fails_above);
    }
    table.verdict = holds ? Verdict::Holds : (fails ? Verdict::Fails : Verdict::Inconclusive);
    return table;
}

}  // namespace levywave
