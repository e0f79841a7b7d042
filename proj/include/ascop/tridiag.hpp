#pragma once

// Symmetric tridiagonal eigensolver: implicit-shift QL iteration with
// eigenvector accumulation, after the classic tql2 procedure of Bowdler,
// Martin, Reinsch and Wilkinson (Handbook for Automatic Computation,
// vol. II).  Self-contained on purpose; the matrices here are small.

#include <cmath>
#include <limits>
#include <vector>

#include "ascop/common.hpp"

namespace ascop {

// Column-major square matrix, just enough for eigenvector storage.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;  // a[i + n*j]

    explicit DenseMatrix(int dim = 0) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) + static_cast<size_t>(n) * j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) + static_cast<size_t>(n) * j]; }
    static DenseMatrix identity(int dim) {
        DenseMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
};

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal d
/// (size n) and subdiagonal e (size n-1).  On return d holds the eigenvalues
/// (unsorted) and the columns of z the corresponding orthonormal vectors.
inline void tridiag_ql_implicit(std::vector<double>& d, std::vector<double> e, DenseMatrix& z,
                                int max_iter = 60) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    e.resize(n, 0.0);

    // Deflation floor: the matrices here are graded over ~18 orders of
    // magnitude, so couplings below eps * ||T|| are noise-level and must be
    // split off absolutely or the corner entries never settle relative to
    // their (even tinier) diagonal neighbors.  Eigenvalues then carry the
    // usual O(eps ||T||) absolute error of unshifted-accuracy QL.
    double anorm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = std::abs(d[i]);
        if (i > 0) row += std::abs(e[i - 1]);
        if (i + 1 < n) row += std::abs(e[i]);
        anorm = std::max(anorm, row);
    }
    const double floor_tol = std::numeric_limits<double>::epsilon() * anorm;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd + floor_tol)
                    break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw convergence_error("tridiag_ql_implicit: eigenvalue failed to settle");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // recover from underflow
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {  // accumulate the rotation
                        f = z(k, i + 1);
                        z(k, i + 1) = s * z(k, i) + c * f;
                        z(k, i) = c * z(k, i) - s * f;
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace ascop
