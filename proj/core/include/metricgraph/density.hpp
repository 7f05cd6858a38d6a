#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metricgraph/matrix.hpp"

namespace metricgraph {

/// Per-entity sorted distance list with aligned mass weights; realizes the
/// step function eps -> mu(B_eps(a)).
struct DensityProfile {
    std::size_t entity = 0;
    std::vector<double> sorted_distances;  // non-decreasing, [0] == 0 (self)
    std::vector<double> sorted_weights;    // aligned with sorted_distances

    /// Builds the profile of row a; empty weights means counting measure.
    static DensityProfile from_matrix(const SquareMatrix& d, std::size_t a,
                                      std::span<const double> weights = {});

    std::size_t size() const { return sorted_distances.size(); }
    /// mu(B_eps(a)) = total weight of entities at distance strictly below eps.
    double ball_mass(double eps) const;
    std::size_t ball_count(double eps) const;
};

/// Radial weight psi(a, eps) = eps^q.
struct RadialWeight {
    double q = 1.0;
};

/// Measure nu on (0, inf) integrating the density function.
struct MassMeasure {
    enum class Kind { Dirac, Lebesgue };
    Kind kind = Kind::Dirac;
    double epsilon0 = 1.0;  // Dirac location

    static MassMeasure dirac(double e0) { return {Kind::Dirac, e0}; }
    static MassMeasure lebesgue() { return {Kind::Lebesgue, 0.0}; }
};

/// Open ball {b : d(a,b) < eps}; always contains a.
std::vector<std::size_t> ball(const SquareMatrix& d, std::size_t a, double eps);

/// f_a(eps) = mu(B_eps(a)) / eps^q.
double density_at(const DensityProfile& profile, double eps, const RadialWeight& psi);

/// Concentration of mass C_r(a) = integral of f_a over [r, inf) against nu.
/// Dirac(e0) evaluates f_a(e0) when e0 >= r. Lebesgue uses the exact
/// closed-form piecewise integral and requires q > 1.
double concentration(const DensityProfile& profile, double r, const RadialWeight& psi,
                     const MassMeasure& nu);

/// Distance to the nearest other entity == sup{r : |B_r(a)| = 1}.
double r_max(const DensityProfile& profile);

enum class DensityFlag { HighDensity, LowDensity, Normal };

struct EntityDensity {
    std::size_t entity = 0;
    double c_r = 0.0;
    double r_max = 0.0;
    double z = 0.0;
    double robust_z = 0.0;
    DensityFlag flag = DensityFlag::Normal;
};

struct ConcentrationReport {
    std::vector<EntityDensity> entries;  // input entity order
    double radius_used = 0.0;
};

/// Computes C_r, r_max and outlier flags for every entity. r == nullopt
/// requests the automatic radius (half the minimum positive pairwise
/// distance). Flags use the robust z-score when MAD > 0 and fall back to the
/// classical z-score when the MAD degenerates to 0.
ConcentrationReport density_map(const SquareMatrix& d, std::span<const double> weights,
                                std::optional<double> r, const RadialWeight& psi,
                                const MassMeasure& nu, double z_threshold = 2.0);

std::string to_string(DensityFlag f);

}  // namespace metricgraph
