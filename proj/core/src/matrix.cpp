#include "metricgraph/matrix.hpp"

#include <cmath>
#include <limits>

#include "metricgraph/threading.hpp"

namespace metricgraph {

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), data_(std::move(entries)) {
    if (data_.size() != n * n)
        throw DimensionError("entry count does not match matrix order");
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    SquareMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw DimensionError("ragged row in square matrix literal");
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

SquareMatrix SquareMatrix::without(std::size_t a) const {
    if (a >= n_) throw ParameterError("row/column index out of range");
    SquareMatrix out(n_ - 1);
    for (std::size_t i = 0, oi = 0; i < n_; ++i) {
        if (i == a) continue;
        for (std::size_t j = 0, oj = 0; j < n_; ++j) {
            if (j == a) continue;
            out(oi, oj) = (*this)(i, j);
            ++oj;
        }
        ++oi;
    }
    return out;
}

SemimetricReport validate_semimetric(const SquareMatrix& m, double tol) {
    if (tol < 0) throw ParameterError("tolerance must be non-negative");
    const std::size_t n = m.order();
    SemimetricReport r;
    r.symmetric = true;
    r.zero_diagonal = true;
    r.non_negative = true;
    r.min_offdiag = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(m(i, i)) > tol) r.zero_diagonal = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > tol) r.symmetric = false;
            if (m(i, j) < -tol) r.non_negative = false;
            if (i != j && m(i, j) < r.min_offdiag) r.min_offdiag = m(i, j);
        }
    }
    if (n < 2) r.min_offdiag = 0.0;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == k || k == j) continue;
                const double lhs = m(i, j);
                const double rhs = m(i, k) + m(k, j);
                if (lhs > rhs + tol)
                    r.triangle_violations.push_back({i, k, j, lhs, rhs});
            }

    r.is_metric = r.symmetric && r.zero_diagonal && r.non_negative &&
                  r.triangle_violations.empty() &&
                  (n < 2 || r.min_offdiag > tol);
    return r;
}

SquareMatrix min_plus_product(const SquareMatrix& a, const SquareMatrix& b) {
    const std::size_t n = a.order();
    if (b.order() != n) throw DimensionError("min-plus operand orders differ");
    SquareMatrix out(n, std::numeric_limits<double>::infinity());
    parallel_rows(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto out_row = out.row(i);
            auto a_row = a.row(i);
            for (std::size_t l = 0; l < n; ++l) {
                const double ail = a_row[l];
                if (std::isinf(ail)) continue;
                auto b_row = b.row(l);
                for (std::size_t j = 0; j < n; ++j) {
                    const double cand = ail + b_row[j];
                    if (cand < out_row[j]) out_row[j] = cand;
                }
            }
        }
    });
    return out;
}

double frobenius_norm(const SquareMatrix& m) {
    double sum = 0.0;
    for (double v : m.entries()) sum += v * v;
    return std::sqrt(sum);
}

SquareMatrix subtract(const SquareMatrix& a, const SquareMatrix& b) {
    const std::size_t n = a.order();
    if (b.order() != n) throw DimensionError("subtraction operand orders differ");
    SquareMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

}  // namespace metricgraph
