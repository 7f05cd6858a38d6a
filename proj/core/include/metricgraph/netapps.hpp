#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "metricgraph/matrix.hpp"
#include "metricgraph/pipeline.hpp"

namespace metricgraph {

/// Entities b != a with d(a,b) < eps, sorted ascending by distance, ties by
/// ordinal. neighbors(a, eps) plus a itself equals ball(a, eps).
std::vector<std::pair<std::size_t, double>> neighbors(const SquareMatrix& d,
                                                      std::size_t a, double eps);

/// All b in s attaining min_{b in s} d(a,b), sorted by ordinal. Requires s
/// non-empty and a not in s.
std::vector<std::size_t> nearest_in_subset(const SquareMatrix& d, std::size_t a,
                                           const std::vector<std::size_t>& s);

struct InfluenceReport {
    std::string id;
    std::size_t entity = 0;
    double influence = 0.0;       // ||D_a - D(-a)||_F
    std::size_t recompute_order = 0;
    bool exact_closure = false;
};

/// Leave-one-out influence of entity `id` on the graph distance. Reruns the
/// full pipeline on the input with the entity removed (normalizations and
/// correlations are rebuilt from the raw data) and compares against the full
/// distance matrix with row/column a deleted.
InfluenceReport influence(const PipelineInput& input, const PipelineConfig& config,
                          const std::string& id);

struct SpectralClasses {
    std::vector<double> eigenvalues;               // descending
    std::size_t subspace_dim = 0;                  // count of eigenvalues < eps
    std::vector<std::size_t> redundant;            // ascending ordinals
    std::map<std::size_t, std::size_t> representatives;  // redundant -> kept
    std::vector<double> residuals;                 // per entity, in [0,1]
};

/// Near-duplicate reduction via the eigendecomposition of a correlation
/// (Gram) matrix. S_eps is the span of eigenvectors with eigenvalue < eps;
/// entity a is redundant when the component of e_a - e_b outside S_eps is
/// below delta for some already-kept entity b (the scan runs in ascending
/// ordinal order so the lowest ordinal of each class is kept). Each redundant
/// entity is assigned the kept representative with maximal correlation,
/// lowest ordinal among maximizers.
SpectralClasses spectral_classes(const SquareMatrix& corr, double eps, double delta);

}  // namespace metricgraph
