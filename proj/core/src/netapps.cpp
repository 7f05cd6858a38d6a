#include "metricgraph/netapps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "metricgraph/eigensolver.hpp"

namespace metricgraph {

std::vector<std::pair<std::size_t, double>> neighbors(const SquareMatrix& d,
                                                      std::size_t a, double eps) {
    if (a >= d.order()) throw ParameterError("entity ordinal out of range");
    if (eps <= 0) throw ParameterError("neighborhood radius must be positive");
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t b = 0; b < d.order(); ++b)
        if (b != a && d(a, b) < eps) out.emplace_back(b, d(a, b));
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& x, const auto& y) { return x.second < y.second; });
    return out;
}

std::vector<std::size_t> nearest_in_subset(const SquareMatrix& d, std::size_t a,
                                           const std::vector<std::size_t>& s) {
    if (a >= d.order()) throw ParameterError("entity ordinal out of range");
    if (s.empty()) throw ParameterError("subset must be non-empty");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b : s) {
        if (b == a) throw ParameterError("subset must not contain the query entity");
        if (b >= d.order()) throw ParameterError("subset ordinal out of range");
        best = std::min(best, d(a, b));
    }
    std::vector<std::size_t> winners;
    for (std::size_t b : s)
        if (d(a, b) == best) winners.push_back(b);
    std::sort(winners.begin(), winners.end());
    winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
    return winners;
}

InfluenceReport influence(const PipelineInput& input, const PipelineConfig& config,
                          const std::string& id) {
    if (input.size() < 3)
        throw ParameterError("influence requires at least three entities");
    const std::size_t a = input.index_of(id);

    const PipelineResult full = run_pipeline(input, config);
    const PipelineResult reduced = run_pipeline(input.without(id), config);

    const SquareMatrix trimmed = full.d.without(a);
    InfluenceReport r;
    r.id = id;
    r.entity = a;
    r.influence = frobenius_norm(subtract(trimmed, reduced.d));
    r.recompute_order = full.gauge.order_used;
    r.exact_closure = full.gauge.exact_closure;
    return r;
}

SpectralClasses spectral_classes(const SquareMatrix& corr, double eps, double delta) {
    if (eps <= 0 || delta <= 0)
        throw ParameterError("spectral eps and delta must be positive");
    const std::size_t n = corr.order();

    const EighResult eig = symmetric_eigh(corr);
    const double scale = std::max(1.0, std::abs(eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front()));
    for (double lambda : eig.eigenvalues)
        if (lambda < -1e-9 * scale)
            throw ValidationError("correlation matrix is not positive semidefinite");

    SpectralClasses out;
    out.eigenvalues = eig.eigenvalues;
    for (double lambda : eig.eigenvalues)
        if (lambda < eps) ++out.subspace_dim;

    // Indices of the eigenvectors spanning the complement of S_eps.
    std::vector<std::size_t> signal;
    for (std::size_t k = 0; k < n; ++k)
        if (eig.eigenvalues[k] >= eps) signal.push_back(k);

    // Component of e_a - e_b outside S_eps, normalized to [0,1].
    auto pair_residual = [&](std::size_t a, std::size_t b) {
        double sum = 0.0;
        for (std::size_t k : signal) {
            const double diff = eig.eigenvectors(a, k) - eig.eigenvectors(b, k);
            sum += diff * diff;
        }
        return std::sqrt(sum / 2.0);
    };

    out.residuals.assign(n, 1.0);
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < n; ++a) {
        double best = 1.0;
        for (std::size_t b : kept) best = std::min(best, pair_residual(a, b));
        out.residuals[a] = best;
        if (best < delta) {
            out.redundant.push_back(a);
            // Representative: kept entity with maximal correlation, lowest
            // ordinal among maximizers.
            std::size_t rep = kept.front();
            for (std::size_t b : kept)
                if (corr(a, b) > corr(a, rep)) rep = b;
            out.representatives[a] = rep;
        } else {
            kept.push_back(a);
        }
    }
    return out;
}

}  // namespace metricgraph
