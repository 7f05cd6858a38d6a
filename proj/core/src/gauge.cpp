#include "metricgraph/gauge.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "metricgraph/threading.hpp"

namespace metricgraph {

namespace {

constexpr double kUnreachable = std::numeric_limits<double>::infinity();

void require_proximity(const SquareMatrix& phi) {
    const std::size_t n = phi.order();
    constexpr double tol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(phi(i, i)) > tol)
            throw ValidationError("proximity matrix has a nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(phi(i, j) - phi(j, i)) > tol)
                throw ValidationError("proximity matrix is not symmetric");
            if (phi(i, j) < -tol || phi(j, i) < -tol)
                throw ValidationError("proximity matrix has a negative entry");
        }
    }
}

/// Triangular relaxation passes until no entry improves (metric closure).
SquareMatrix metric_closure(const SquareMatrix& phi) {
    const std::size_t n = phi.order();
    SquareMatrix d = phi;
    bool changed = true;
    std::size_t pass = 0;
    while (changed && pass++ <= n) {
        changed = false;
        for (std::size_t k = 0; k < n; ++k) {
            std::atomic<bool> any{false};
            parallel_rows(n, [&](std::size_t begin, std::size_t end) {
                bool local = false;
                for (std::size_t i = begin; i < end; ++i) {
                    const double dik = d(i, k);
                    auto row = d.row(i);
                    auto krow = d.row(k);
                    for (std::size_t j = 0; j < n; ++j) {
                        const double cand = dik + krow[j];
                        if (cand < row[j]) {
                            row[j] = cand;
                            local = true;
                        }
                    }
                }
                if (local) any.store(true, std::memory_order_relaxed);
            });
            changed = changed || any.load();
        }
    }
    return d;
}

}  // namespace

double WeightScheme::weight(std::size_t i) const {
    if (i < 1) throw ParameterError("weight index is 1-based");
    switch (kind) {
        case Kind::Ones:
            return 1.0;
        case Kind::HarmonicInverse:
            return 1.0 / static_cast<double>(i);
        case Kind::Custom:
            if (i > custom.size())
                throw ParameterError("custom weight scheme has no weight of order " +
                                     std::to_string(i));
            return custom[i - 1];
    }
    throw ParameterError("unknown weight scheme kind");
}

void WeightScheme::check(std::size_t max_order) const {
    double prev = 1.0;
    for (std::size_t i = 1; i <= max_order; ++i) {
        const double w = weight(i);
        if (w <= 0.0 || w > 1.0)
            throw ValidationError("weight W_" + std::to_string(i) + " outside (0,1]");
        if (w > prev + 1e-15)
            throw ValidationError("weight sequence is not non-increasing at W_" +
                                  std::to_string(i));
        if (metric_constant) {
            if (1.0 / static_cast<double>(i) > *metric_constant * w + 1e-12)
                throw ValidationError("metric constant Q fails 1/i <= Q*W_i at i=" +
                                      std::to_string(i));
        }
        prev = w;
    }
}

GaugeResult triangular_gauge(const SquareMatrix& phi, const WeightScheme& w,
                             std::size_t max_order, double conv_tol) {
    if (max_order < 1) throw ParameterError("max_order must be at least 1");
    if (conv_tol < 0) throw ParameterError("conv_tol must be non-negative");
    require_proximity(phi);
    const std::size_t n = phi.order();

    GaugeResult res;
    if (w.kind == WeightScheme::Kind::Ones) {
        res.distances = metric_closure(phi);
        res.exact_closure = true;
        res.order_used = 0;
        res.converged = true;
    } else {
        w.check(max_order);
        // Step matrix with the unreachable sentinel on the diagonal: walks may
        // revisit vertices but consecutive vertices must differ.
        SquareMatrix step = phi;
        for (std::size_t i = 0; i < n; ++i) step(i, i) = kUnreachable;

        SquareMatrix walk = step;  // S_1
        SquareMatrix best(n);
        const double w1 = w.weight(1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                best(i, j) = i == j ? 0.0 : w1 * phi(i, j);

        double last_change = 0.0;
        for (std::size_t order = 2; order <= max_order; ++order) {
            walk = min_plus_product(walk, step);
            const double wn = w.weight(order);
            last_change = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const double cand = wn * walk(i, j);
                    if (cand < best(i, j)) {
                        last_change = std::max(last_change, best(i, j) - cand);
                        best(i, j) = cand;
                    }
                }
            }
        }
        // Walk sums for (i,j) and (j,i) associate in opposite order; pin the
        // symmetric value to the smaller of the two.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                best(i, j) = best(j, i) = std::min(best(i, j), best(j, i));
        res.distances = std::move(best);
        res.exact_closure = false;
        res.order_used = max_order;
        res.converged = max_order == 1 || last_change <= conv_tol;
    }
    res.triangle_report = validate_semimetric(res.distances, 1e-12);
    return res;
}

SquareMatrix brute_force_gauge(const SquareMatrix& phi, const WeightScheme& w,
                               std::size_t max_order) {
    const std::size_t n = phi.order();
    if (n > 8) throw ParameterError("brute_force_gauge is limited to order(phi) <= 8");
    if (max_order < 1 || max_order > 5)
        throw ParameterError("brute_force_gauge is limited to max_order in [1,5]");
    require_proximity(phi);
    w.check(max_order);

    SquareMatrix d(n);
    std::vector<std::size_t> walk_buf(max_order + 1);

    // Enumerate every walk a = v_0, v_1, ..., v_len = b with consecutive
    // vertices distinct and len <= max_order.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            double best = std::numeric_limits<double>::infinity();
            auto dfs = [&](auto&& self, std::size_t current, std::size_t edges,
                           double sum) -> void {
                if (edges >= 1 && current == b)
                    best = std::min(best, w.weight(edges) * sum);
                if (edges == max_order) return;
                for (std::size_t next = 0; next < n; ++next) {
                    if (next == current) continue;
                    self(self, next, edges + 1, sum + phi(current, next));
                }
            };
            dfs(dfs, a, 0, 0.0);
            d(a, b) = best;
        }
    }
    return d;
}

double gauge_asymptote(const SquareMatrix& phi) {
    const std::size_t n = phi.order();
    if (n < 2) throw ParameterError("gauge_asymptote requires order >= 2");
    double min_off = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) min_off = std::min(min_off, phi(i, j));
    return min_off;
}

SquareMatrix combined_distance(const SquareMatrix& d_e, const SquareMatrix& d_phi,
                               double lambda) {
    if (lambda < 0) throw ParameterError("lambda must be non-negative");
    const std::size_t n = d_e.order();
    if (d_phi.order() != n) throw DimensionError("combined distance orders differ");
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = lambda * d_e(i, j) + d_phi(i, j);
    return out;
}

}  // namespace metricgraph
