#include "metricgraph/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace metricgraph {

namespace {

double offdiag_norm(const SquareMatrix& a) {
    const std::size_t n = a.order();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(sum);
}

}  // namespace

EighResult symmetric_eigh(const SquareMatrix& m, int max_sweeps, double residual_tol) {
    if (max_sweeps < 1) throw ParameterError("max_sweeps must be positive");
    if (residual_tol <= 0) throw ParameterError("residual_tol must be positive");
    const std::size_t n = m.order();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-9)
                throw ValidationError("symmetric_eigh requires a symmetric matrix");

    SquareMatrix a = m;
    SquareMatrix v = SquareMatrix::identity(n);
    const double scale = frobenius_norm(m);
    const double target = scale > 0 ? residual_tol * scale : residual_tol;

    // Cyclic Jacobi: sweep the strict upper triangle in a fixed order.
    bool done = offdiag_norm(a) <= target;
    for (int sweep = 0; sweep < max_sweeps && !done; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        done = offdiag_norm(a) <= target;
    }
    if (!done) {
        const double achieved = scale > 0 ? offdiag_norm(a) / scale : offdiag_norm(a);
        throw ConvergenceError("Jacobi eigensolver did not converge in " +
                                   std::to_string(max_sweeps) + " sweeps",
                               achieved);
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EighResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = SquareMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = perm[k];
        out.eigenvalues[k] = a(src, src);
        double sign = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (v(r, src) != 0.0) {
                sign = v(r, src) > 0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = sign * v(r, src);
    }
    return out;
}

}  // namespace metricgraph
