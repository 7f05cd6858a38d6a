#include "metricgraph/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace metricgraph {

DensityProfile DensityProfile::from_matrix(const SquareMatrix& d, std::size_t a,
                                           std::span<const double> weights) {
    const std::size_t n = d.order();
    if (a >= n) throw ParameterError("entity ordinal out of range");
    if (!weights.empty() && weights.size() != n)
        throw DimensionError("weight count does not match matrix order");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return d(a, x) < d(a, y); });

    DensityProfile p;
    p.entity = a;
    p.sorted_distances.reserve(n);
    p.sorted_weights.reserve(n);
    for (std::size_t b : order) {
        const double dist = d(a, b);
        if (dist < 0 || std::isnan(dist) || std::isinf(dist))
            throw ValidationError("distance matrix entry is not a finite non-negative value");
        p.sorted_distances.push_back(dist);
        p.sorted_weights.push_back(weights.empty() ? 1.0 : weights[b]);
    }
    if (p.sorted_distances.front() != 0.0)
        throw ValidationError("self-distance is not zero");
    return p;
}

double DensityProfile::ball_mass(double eps) const {
    double mass = 0.0;
    for (std::size_t i = 0; i < sorted_distances.size() && sorted_distances[i] < eps; ++i)
        mass += sorted_weights[i];
    return mass;
}

std::size_t DensityProfile::ball_count(double eps) const {
    auto it = std::lower_bound(sorted_distances.begin(), sorted_distances.end(), eps);
    return static_cast<std::size_t>(it - sorted_distances.begin());
}

std::vector<std::size_t> ball(const SquareMatrix& d, std::size_t a, double eps) {
    if (a >= d.order()) throw ParameterError("entity ordinal out of range");
    if (eps <= 0) throw ParameterError("ball radius must be positive");
    std::vector<std::size_t> members;
    for (std::size_t b = 0; b < d.order(); ++b)
        if (d(a, b) < eps) members.push_back(b);
    return members;
}

double density_at(const DensityProfile& profile, double eps, const RadialWeight& psi) {
    if (eps <= 0) throw ParameterError("density radius must be positive");
    if (psi.q <= 0) throw ParameterError("radial exponent q must be positive");
    return profile.ball_mass(eps) / std::pow(eps, psi.q);
}

double concentration(const DensityProfile& profile, double r, const RadialWeight& psi,
                     const MassMeasure& nu) {
    if (r <= 0) throw ParameterError("concentration requires r > 0");
    if (psi.q <= 0) throw ParameterError("radial exponent q must be positive");

    if (nu.kind == MassMeasure::Kind::Dirac) {
        if (nu.epsilon0 <= 0) throw ParameterError("Dirac location must be positive");
        return nu.epsilon0 >= r ? density_at(profile, nu.epsilon0, psi) : 0.0;
    }

    // Lebesgue: f_a is m_i / eps^q on the interval between consecutive
    // distinct distances, so the integral over [r, inf) is a finite sum of
    // closed-form pieces m_i * (L^{1-q} - U^{1-q}) / (q-1).
    const double q = psi.q;
    if (q <= 1.0)
        throw DivergenceError("Lebesgue concentration diverges for q <= 1");

    const auto& dist = profile.sorted_distances;
    const auto& wt = profile.sorted_weights;
    const std::size_t n = dist.size();

    double total = 0.0;
    double mass = 0.0;
    std::size_t i = 0;
    while (i < n) {
        double t = dist[i];
        while (i < n && dist[i] == t) mass += wt[i++];
        const double upper = i < n ? dist[i] : std::numeric_limits<double>::infinity();
        const double lo = std::max(t, r);
        if (upper <= lo) continue;
        const double lo_term = std::pow(lo, 1.0 - q);
        const double hi_term = std::isinf(upper) ? 0.0 : std::pow(upper, 1.0 - q);
        total += mass * (lo_term - hi_term) / (q - 1.0);
    }
    return total;
}

double r_max(const DensityProfile& profile) {
    if (profile.size() < 2)
        throw ParameterError("r_max is undefined for a single entity");
    return profile.sorted_distances[1];
}

std::string to_string(DensityFlag f) {
    switch (f) {
        case DensityFlag::HighDensity: return "high-density";
        case DensityFlag::LowDensity: return "low-density";
        case DensityFlag::Normal: return "normal";
    }
    return "normal";
}

ConcentrationReport density_map(const SquareMatrix& d, std::span<const double> weights,
                                std::optional<double> r, const RadialWeight& psi,
                                const MassMeasure& nu, double z_threshold) {
    const std::size_t n = d.order();
    if (n < 2) throw ParameterError("density map requires at least two entities");
    if (z_threshold <= 0) throw ParameterError("z_threshold must be positive");

    double radius;
    if (r) {
        radius = *r;
    } else {
        // Auto radius: half the minimum positive pairwise distance, so every
        // ball B_r(a) is a singleton.
        double min_pos = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (d(i, j) > 0) min_pos = std::min(min_pos, d(i, j));
        if (std::isinf(min_pos))
            throw ParameterError("auto radius undefined: all pairwise distances are zero");
        radius = 0.5 * min_pos;
    }

    ConcentrationReport report;
    report.radius_used = radius;
    report.entries.resize(n);
    std::vector<double> values(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto profile = DensityProfile::from_matrix(d, a, weights);
        auto& e = report.entries[a];
        e.entity = a;
        e.c_r = concentration(profile, radius, psi, nu);
        e.r_max = r_max(profile);
        values[a] = e.c_r;
    }

    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double stddev = std::sqrt(var / n);

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    auto median_of = [](const std::vector<double>& s) {
        const std::size_t m = s.size();
        return m % 2 == 1 ? s[m / 2] : 0.5 * (s[m / 2 - 1] + s[m / 2]);
    };
    const double median = median_of(sorted);
    std::vector<double> devs(n);
    for (std::size_t a = 0; a < n; ++a) devs[a] = std::abs(values[a] - median);
    std::sort(devs.begin(), devs.end());
    const double mad = median_of(devs);

    for (std::size_t a = 0; a < n; ++a) {
        auto& e = report.entries[a];
        e.z = stddev > 0 ? (values[a] - mean) / stddev : 0.0;
        e.robust_z = mad > 0 ? (values[a] - median) / (1.4826 * mad) : 0.0;
        // Robust score when the MAD is informative; classical otherwise.
        const double score = mad > 0 ? e.robust_z : e.z;
        if (score > z_threshold)
            e.flag = DensityFlag::HighDensity;
        else if (score < -z_threshold)
            e.flag = DensityFlag::LowDensity;
        else
            e.flag = DensityFlag::Normal;
    }
    return report;
}

}  // namespace metricgraph
