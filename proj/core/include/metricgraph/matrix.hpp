#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "metricgraph/errors.hpp"

namespace metricgraph {

/// Dense square matrix of real entries, row-major. Entries are finite except
/// for the infinity sentinel the min-plus routines use internally; it must
/// never reach user-facing output.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0)
        : n_(n), data_(n * n, fill) {}
    SquareMatrix(std::size_t n, std::vector<double> entries);

    static SquareMatrix identity(std::size_t n);
    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t order() const { return n_; }
    bool empty() const { return n_ == 0; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * n_, n_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * n_, n_};
    }
    std::span<const double> entries() const { return data_; }

    bool operator==(const SquareMatrix&) const = default;

    /// Copy without row/column a.
    SquareMatrix without(std::size_t a) const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct TriangleViolation {
    std::size_t i, k, j;  // d(i,j) > d(i,k) + d(k,j)
    double lhs, rhs;
};

struct SemimetricReport {
    bool symmetric = false;
    bool zero_diagonal = false;
    bool non_negative = false;
    std::vector<TriangleViolation> triangle_violations;
    bool is_metric = false;
    double min_offdiag = 0.0;  // the separation constant k
};

/// Checks the semimetric axioms and lists every violating triple (i,k,j)
/// with m(i,j) > m(i,k) + m(k,j) + tol. Absolute comparison slack tol >= 0.
SemimetricReport validate_semimetric(const SquareMatrix& m, double tol = 1e-9);

/// (min,+) matrix product: out(i,j) = min_l a(i,l) + b(l,j).
SquareMatrix min_plus_product(const SquareMatrix& a, const SquareMatrix& b);

double frobenius_norm(const SquareMatrix& m);

/// Entrywise a - b; orders must match.
SquareMatrix subtract(const SquareMatrix& a, const SquareMatrix& b);

}  // namespace metricgraph
