#include "levywave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "levywave/errors.hpp"

namespace levywave {

double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "KS needs two nonempty samples");
    std::vector<double> x = a, y = b;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_two_sample(const SampleSet& a, const SampleSet& b) { return ks_two_sample(a.values, b.values); }

void StatsReport::add(std::string name, double value, std::optional<double> se) {
    entries.push_back({std::move(name), value, se});
}

const StatEntry& StatsReport::get(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw Error(ErrorCode::EmptySample, "no statistic named " + name);
}

nlohmann::json StatsReport::to_json() const {
    nlohmann::json j;
    j["metadata"] = metadata;
    auto& arr = j["statistics"] = nlohmann::json::array();
    for (const auto& e : entries) {
        nlohmann::json row{{"name", e.name}, {"value", e.value}};
        row["std_error"] = e.std_error ? nlohmann::json(*e.std_error) : nlohmann::json(nullptr);
        arr.push_back(row);
    }
    return j;
}

namespace {

struct Moments {
    double mean, var, skew, kurt;
};

// Central moments from power sums of centred data (n >= 2).
Moments from_sums(double n, double s1, double s2, double s3, double s4, double shift) {
    const double m = s1 / n;
    const double c2 = s2 / n - m * m;
    const double c3 = s3 / n - 3.0 * m * s2 / n + 2.0 * m * m * m;
    const double c4 = s4 / n - 4.0 * m * s3 / n + 6.0 * m * m * s2 / n - 3.0 * m * m * m * m;
    Moments r{m + shift, c2 * n / (n - 1.0), 0.0, 0.0};
    if (c2 > 0.0) {
        r.skew = c3 / std::pow(c2, 1.5);
        r.kurt = c4 / (c2 * c2) - 3.0;
    }
    return r;
}

}  // namespace

StatsReport moment_report(const SampleSet& samples) {
    const auto& v = samples.values;
    if (v.size() < 2) throw Error(ErrorCode::EmptySample, "moment report needs at least two values");
    for (double x : v)
        if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "sample contains a non-finite value");
    const double n = static_cast<double>(v.size());
    double shift = 0.0;
    for (double x : v) shift += x;
    shift /= n;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double x : v) {
        const double d = x - shift, d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    const Moments full = from_sums(n, s1, s2, s3, s4, shift);

    StatsReport rep;
    rep.metadata = {{"label", samples.label}, {"seed", samples.seed}, {"N", v.size()}};
    if (v.size() < 3) {
        rep.add("mean", full.mean);
        rep.add("variance", full.var);
        rep.add("skewness", full.skew);
        rep.add("excess_kurtosis", full.kurt);
        return rep;
    }
    // leave-one-out estimates
    double acc[4] = {0, 0, 0, 0}, acc2[4] = {0, 0, 0, 0};
    for (double x : v) {
        const double d = x - shift, d2 = d * d;
        const Moments loo = from_sums(n - 1.0, s1 - d, s2 - d2, s3 - d2 * d, s4 - d2 * d2, shift);
        const double vals[4] = {loo.mean, loo.var, loo.skew, loo.kurt};
        for (int k = 0; k < 4; ++k) {
            acc[k] += vals[k];
            acc2[k] += vals[k] * vals[k];
        }
    }
    double se[4];
    for (int k = 0; k < 4; ++k) {
        const double m = acc[k] / n;
        se[k] = std::sqrt(std::max(0.0, (n - 1.0) / n * (acc2[k] - n * m * m)));
    }
    rep.add("mean", full.mean, se[0]);
    rep.add("variance", full.var, se[1]);
    rep.add("skewness", full.skew, se[2]);
    rep.add("excess_kurtosis", full.kurt, se[3]);
    return rep;
}

OrthogonalityResult martingale_orthogonality(const std::vector<double>& increments, const std::vector<double>& past) {
    if (increments.size() != past.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
    if (increments.size() < 2) throw Error(ErrorCode::EmptySample, "need paired samples");
    const double n = static_cast<double>(increments.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        ma += increments[k];
        mb += past[k];
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0, raw = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        const double a = increments[k] - ma, b = past[k] - mb;
        saa += a * a;
        sbb += b * b;
        sab += a * b;
        raw += increments[k] * increments[k];
    }
    OrthogonalityResult r;
    r.n = increments.size();
    if (sbb <= 1e-300 * n) {
        r.correlation = raw > 0.0 ? ma * n / std::sqrt(raw * n) : 0.0;
    } else {
        r.correlation = saa > 0.0 ? sab / std::sqrt(saa * sbb) : 0.0;
    }
    r.z = r.correlation * std::sqrt(n);
    r.pass = std::abs(r.z) < 3.0;
    return r;
}

std::complex<double> jump_compensator_density(const CompensatorSetup& setup, double theta) {
    if (theta == 0.0) return 0.0;
    if (!setup.spec) return {-0.5 * theta * theta, 0.0};
    // the simulated noise is L/σ, so a jump z enters as z/σ
    return levy_exponent(*setup.spec, theta / setup.sigma, setup.floor);
}

CompensatorPath compensator_A(const PathView& path, const CompensatorSetup& setup) {
    const auto& times = setup.times;
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw Error(ErrorCode::ShapeMismatch, "times must increase");
    if (!(setup.step > 0.0)) throw Error(ErrorCode::ShapeMismatch, "step must be positive");
    CompensatorPath out;
    out.times = times;
    out.A.assign(times.size(), 0.0);
    out.X.assign(times.size(), 0.0);
    out.M.assign(times.size(), 0.0);
    if (times.empty()) return out;
    const double xi = setup.xi;
    const std::complex<double> I(0.0, 1.0);
    auto X = [&](double t) { return path.u_pair(t, setup.phi1, 0) + path.v_pair(t, setup.phi2); };
    for (std::size_t i = 0; i < times.size(); ++i) out.X[i] = X(times[i]);
    if (xi == 0.0) {
        for (auto& m : out.M) m = 1.0;
        return out;
    }

    // inner grid refining each output interval
    std::vector<double> inner{0.0};
    std::vector<std::size_t> out_index;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double prev = inner.back(), len = times[i] - prev;
        if (len > 0.0) {
            const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / setup.step - 1e-9)));
            for (std::size_t m = 1; m <= k; ++m)
                inner.push_back(m == k ? times[i] : prev + len * static_cast<double>(m) / static_cast<double>(k));
        }
        out_index.push_back(inner.size() - 1);
    }
    const std::size_t n = inner.size();
    std::vector<double> g(n), x(n);
    for (std::size_t k = 0; k < n; ++k) {
        g[k] = path.u_pair(inner[k], setup.phi2, 2) + path.v_pair(inner[k], setup.phi1);
        x[k] = X(inner[k]);
    }

    // jump part: a node at time s is binned at the first inner point r ≥ s and is weighted by
    // e^{iξX} at the inner point before it
    std::vector<std::complex<double>> a_jump(n, 0.0), w_jump(n, 0.0);
    std::map<double, std::complex<double>> cache;
    for (const auto& node : path.space_time_nodes()) {
        const double p2 = setup.phi2.phi(node.y);
        if (p2 == 0.0) continue;
        const auto k = static_cast<std::size_t>(std::lower_bound(inner.begin(), inner.end(), node.s) - inner.begin());
        if (k >= n) continue;
        const double theta = xi * node.f_value * p2;
        auto it = cache.find(theta);
        if (it == cache.end()) it = cache.emplace(theta, jump_compensator_density(setup, theta)).first;
        const std::complex<double> d = it->second * node.area;
        a_jump[k] += d;
        w_jump[k] += std::exp(I * xi * x[k == 0 ? 0 : k - 1]) * d;
    }

    // drift of A and its integral against e^{iξX}, both by trapezoid on the inner grid
    std::vector<std::complex<double>> a_cum(n), w_cum(n);
    a_cum[0] = a_jump[0];
    w_cum[0] = w_jump[0];
    for (std::size_t k = 1; k < n; ++k) {
        const double dr = inner[k] - inner[k - 1];
        const std::complex<double> e0 = std::exp(I * xi * x[k - 1]), e1 = std::exp(I * xi * x[k]);
        a_cum[k] = a_cum[k - 1] + a_jump[k] + I * xi * 0.5 * dr * (g[k] + g[k - 1]);
        w_cum[k] = w_cum[k - 1] + w_jump[k] + I * xi * 0.5 * dr * (e1 * g[k] + e0 * g[k - 1]);
    }

    for (std::size_t i = 0; i < times.size(); ++i) {
        out.A[i] = a_cum[out_index[i]];
        out.M[i] = std::exp(I * xi * out.X[i]) - w_cum[out_index[i]];
    }
    return out;
}

}  // namespace levywave
