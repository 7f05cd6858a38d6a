#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "metricgraph/matrix.hpp"

namespace metricgraph {

/// Non-increasing weight sequence W_1, W_2, ... in (0,1] applied to walk
/// lengths, with an optional metric constant Q certifying 1/i <= Q * W_i.
struct WeightScheme {
    enum class Kind { Ones, HarmonicInverse, Custom };

    Kind kind = Kind::Ones;
    std::vector<double> custom;             // used when kind == Custom
    std::optional<double> metric_constant;  // Q

    static WeightScheme ones() { return {Kind::Ones, {}, 1.0}; }
    static WeightScheme harmonic() { return {Kind::HarmonicInverse, {}, {}}; }
    static WeightScheme custom_weights(std::vector<double> w) {
        return {Kind::Custom, std::move(w), {}};
    }

    /// W_i, 1-based. ParameterError when a Custom scheme is exhausted.
    double weight(std::size_t i) const;
    /// Checks the invariants up to the order actually used.
    void check(std::size_t max_order) const;
};

struct GaugeResult {
    SquareMatrix distances;
    bool exact_closure = false;   // Ones weights: full metric closure
    std::size_t order_used = 0;   // truncation order N (0 for exact closure)
    bool converged = false;
    SemimetricReport triangle_report;
};

/// Triangular gauge of a proximity matrix.
///
/// Ones weights yield the exact metric closure (triangular relaxation to the
/// fixpoint). Other schemes compute the order-N truncation
/// d(N)(a,b) = min_{1<=n<=N} W_n * S_n(a,b) where S_n is the minimal sum over
/// walks of exactly n edges with consecutive-distinct vertices; `converged`
/// records whether the last order changed any entry by more than conv_tol.
GaugeResult triangular_gauge(const SquareMatrix& phi, const WeightScheme& w,
                             std::size_t max_order = 4, double conv_tol = 1e-9);

/// Literal walk-enumeration reference for triangular_gauge; restricted to
/// order(phi) <= 8 and max_order <= 5.
SquareMatrix brute_force_gauge(const SquareMatrix& phi, const WeightScheme& w,
                               std::size_t max_order);

/// Minimal off-diagonal proximity: the value the harmonic-weight gauge
/// approaches for every pair as the order grows (walks circulating on the
/// cheapest edge drive the average down to it).
double gauge_asymptote(const SquareMatrix& phi);

/// D = lambda * d_e + d_phi entrywise.
SquareMatrix combined_distance(const SquareMatrix& d_e, const SquareMatrix& d_phi,
                               double lambda);

}  // namespace metricgraph
