#pragma once

// The doubly-infinite symmetric tridiagonal operator L(alpha,beta) on l^2(Z):
//   L e_l = a_l e_{l+1} + b_l e_l + a_{l-1} e_{l-1},
// its coefficient functions, norm bound, unitary symmetries U/V, finite
// Dirichlet truncations and their spectral decomposition.

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "ascop/common.hpp"
#include "ascop/tridiag.hpp"

namespace ascop {

/// Off-diagonal coefficient a_l(alpha,beta); positive for alpha > 0.
inline double coeff_a(long l, const QParams& p) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    const double q2l = ipow(q, 2 * l);
    const double pref = p.alpha * ipow(q, l) * std::sqrt(q) / (1.0 + a2 * q2l * q);
    const double rad = (p.beta + a2 * q2l) * (1.0 + p.beta * a2 * q2l * q * q) /
                       ((1.0 + a2 * q2l) * (1.0 + a2 * q2l * q * q));
    return pref * std::sqrt(rad);
}

/// Diagonal coefficient, the original three-term form.
inline double coeff_b_threeterm(long l, const QParams& p) {
    const double q = p.q, a2 = p.alpha * p.alpha, b = p.beta;
    const double q2l = ipow(q, 2 * l);
    const double t1 = (1.0 + b * a2 * q2l) / ((1.0 + a2 * q2l) * (1.0 + a2 * q2l / q));
    const double t2 = (1.0 + b / (a2 * q2l)) / ((1.0 + 1.0 / (a2 * q2l)) * (1.0 + 1.0 / (a2 * q2l * q)));
    return 1.0 - t1 - t2;
}

/// Diagonal coefficient b_l(alpha,beta), simplified form; vanishes identically
/// iff beta = 1/q.
inline double coeff_b(long l, const QParams& p) {
    const double q = p.q, a2 = p.alpha * p.alpha;
    const double q2l = ipow(q, 2 * l);
    const double v = a2 * (1.0 + q) * (1.0 - p.beta * q) * q2l / q /
                     ((1.0 + a2 * q2l * q) * (1.0 + a2 * q2l / q));
    assert(std::abs(v - coeff_b_threeterm(l, p)) <=
           1e-13 * std::max(1.0, std::abs(v)));
    return v;
}

struct OperatorCoefficients {
    QParams params;
    double a(long l) const { return coeff_a(l, params); }
    double b(long l) const { return coeff_b(l, params); }
};

/// 2 sup|a_l| + 2 sup|b_l|; the scan window is widened until the boundary
/// values are negligible against the supremum (the coefficients decay like
/// q^|l|).
inline double norm_bound(const QParams& p) {
    p.validate();
    long w = 8;
    double bound = 0.0;
    for (;;) {
        double sa = 0.0, sb = 0.0;
        for (long l = -w; l <= w; ++l) {
            sa = std::max(sa, std::abs(coeff_a(l, p)));
            sb = std::max(sb, std::abs(coeff_b(l, p)));
        }
        bound = 2.0 * sa + 2.0 * sb;
        const double edge = std::max(std::max(std::abs(coeff_a(w, p)), std::abs(coeff_a(-w, p))),
                                     std::max(std::abs(coeff_b(w, p)), std::abs(coeff_b(-w, p))));
        if (edge < 1e-16 * bound || w > 4096) return bound;
        w *= 2;
    }
}

// Finite symmetric tridiagonal window of L, indices l = -N..N, with the
// boundary couplings a_{+-N} dropped (Dirichlet truncation).
struct TruncatedOperator {
    QParams params;
    long half_width = 0;
    std::vector<double> diag;     // b_l, l = -N..N
    std::vector<double> offdiag;  // a_l, l = -N..N-1

    int dim() const { return static_cast<int>(2 * half_width + 1); }
};

inline TruncatedOperator truncate(const QParams& p, long N) {
    p.validate();
    if (N < 1) throw domain_error("truncate: half-width must be >= 1");
    TruncatedOperator t;
    t.params = p;
    t.half_width = N;
    t.diag.reserve(2 * N + 1);
    t.offdiag.reserve(2 * N);
    for (long l = -N; l <= N; ++l) t.diag.push_back(coeff_b(l, p));
    for (long l = -N; l < N; ++l) t.offdiag.push_back(coeff_a(l, p));
    return t;
}

/// Smallest half-width whose dropped boundary coefficients are below tol/q,
/// so the discarded block perturbs eigenvalues by at most ~tol.
inline long auto_half_width(const QParams& p, double tol = 1e-14) {
    p.validate();
    const double cap = tol / p.q;
    long N = 4;
    while (N < 100000) {
        const double edge = std::max(std::max(std::abs(coeff_a(N, p)), std::abs(coeff_a(-N, p))),
                                     std::max(std::abs(coeff_b(N, p)), std::abs(coeff_b(-N, p))));
        if (edge < cap) return N;
        ++N;
    }
    return N;
}

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // sorted descending
    DenseMatrix eigenvectors;         // column k pairs with eigenvalues[k]
    long half_width = 0;
};

inline SpectralDecomposition eig(const TruncatedOperator& t) {
    const int n = t.dim();
    std::vector<double> d = t.diag;
    DenseMatrix z = DenseMatrix::identity(n);
    tridiag_ql_implicit(d, t.offdiag, z);
    // sort descending, permuting columns alongside
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] > d[j]; });
    SpectralDecomposition s;
    s.half_width = t.half_width;
    s.eigenvalues.resize(n);
    s.eigenvectors = DenseMatrix(n);
    for (int j = 0; j < n; ++j) {
        s.eigenvalues[j] = d[idx[j]];
        for (int i = 0; i < n; ++i) s.eigenvectors(i, j) = z(i, idx[j]);
    }
    return s;
}

struct SingularDecayReport {
    std::vector<double> singular_values;  // |eigenvalues| sorted descending
    double sup_ratio = 0.0;               // sup_n s_n / q^(n/2) over n <= 2N/3
};

inline SingularDecayReport singular_decay(const QParams& p, long N) {
    SingularDecayReport rep;
    auto s = eig(truncate(p, N));
    rep.singular_values.resize(s.eigenvalues.size());
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        rep.singular_values[i] = std::abs(s.eigenvalues[i]);
    std::sort(rep.singular_values.begin(), rep.singular_values.end(), std::greater<double>());
    const long n_max = 2 * N / 3;
    for (long n = 0; n <= n_max && n < static_cast<long>(rep.singular_values.size()); ++n)
        rep.sup_ratio = std::max(rep.sup_ratio, rep.singular_values[n] / std::pow(p.q, 0.5 * n));
    return rep;
}

enum class Symmetry { U, V, U2 };

/// Conjugations of L: U e_l = (-1)^l e_l sends (alpha,beta) to (alpha,1/(beta q^2))
/// with L |-> -q beta L; U2 is the same sign flip with alpha |-> -alpha;
/// V e_l = e_{-l} sends alpha |-> 1/alpha.  The vector is indexed l = -N..N.
inline std::pair<std::vector<double>, QParams> apply_symmetry(Symmetry which, const QParams& p,
                                                              std::vector<double> v) {
    p.validate();
    const long N = (static_cast<long>(v.size()) - 1) / 2;
    if (v.size() != static_cast<size_t>(2 * N + 1))
        throw domain_error("apply_symmetry: vector must have odd length");
    switch (which) {
        case Symmetry::U: {
            if (p.beta == 0.0) throw domain_error("apply_symmetry: U undefined for beta = 0");
            for (long l = -N; l <= N; ++l)
                if (l % 2 != 0) v[l + N] = -v[l + N];
            return {std::move(v), p.with_beta(1.0 / (p.beta * p.q * p.q))};
        }
        case Symmetry::U2: {
            for (long l = -N; l <= N; ++l)
                if (l % 2 != 0) v[l + N] = -v[l + N];
            return {std::move(v), p.with_alpha(-p.alpha)};
        }
        case Symmetry::V: {
            std::reverse(v.begin(), v.end());
            return {std::move(v), p.with_alpha(1.0 / p.alpha)};
        }
    }
    throw domain_error("apply_symmetry: unknown symmetry");
}

}  // namespace ascop
