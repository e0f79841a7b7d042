#pragma once

// Polynomial families by three-term recurrence (base q^{-1} as printed) and
// the logarithmic grids x_k = (1/(alpha q^k) - alpha q^k)/2 they live on.

#include "ascop/common.hpp"

namespace ascop {

struct GridPoint {
    long k = 0;
    double x = 0.0;
    double alpha = 1.0;
    double q = 0.5;
};

/// x_k(alpha) = (1/(alpha q^k) - alpha q^k)/2; increasing in k for alpha > 0.
inline GridPoint grid_point(double alpha, double q, long k) {
    if (alpha == 0.0) throw domain_error("grid_point: alpha must be nonzero");
    if (!(q > 0.0 && q < 1.0)) throw domain_error("grid_point: q must lie in (0,1)");
    const double aq = alpha * ipow(q, k);
    return {k, 0.5 * (1.0 / aq - aq), alpha, q};
}

enum class PolyKind { asc_general, sym_asc, qinv_hermite };

// A recurrence family tag: the general two-parameter family in u, the
// symmetric family in x = sinh y, or its beta = 0 member.  Degree of the
// n-th member is n; the symmetric families have leading coefficient 2^n.
struct PolynomialFamily {
    PolyKind kind = PolyKind::sym_asc;
    cplx a{0.0, 0.0}, b{0.0, 0.0};  // asc_general parameters
    double beta = 0.0;              // sym_asc parameter
    double q = 0.5;

    cplx eval(long n, cplx u) const;
    double eval(long n, double x) const;
};

/// Al-Salam-Chihara polynomial P_n(u; a,b | q^{-1}) by the recurrence
/// (u+1/u) P_n = P_{n+1} + (a+b) q^{-n} P_n + (1-q^{-n})(1-ab q^{1-n}) P_{n-1}.
inline cplx asc_poly(long n, cplx u, cplx a, cplx b, double q) {
    if (n < 0) throw domain_error("asc_poly: n must be >= 0");
    if (u == cplx{0.0, 0.0}) throw domain_error("asc_poly: u must be nonzero");
    if (!(q > 0.0 && q < 1.0)) throw domain_error("asc_poly: q must lie in (0,1)");
    const cplx x = u + 1.0 / u;
    cplx pm{0.0, 0.0}, p{1.0, 0.0};
    for (long k = 0; k < n; ++k) {
        const double qmk = ipow(q, -k);
        cplx pn = (x - (a + b) * qmk) * p - (1.0 - qmk) * (1.0 - a * b * q * qmk) * pm;
        pm = p;
        p = pn;
    }
    return p;
}

/// Symmetric family h_n^(beta)(x|q):
/// 2x h_n = h_{n+1} + q^{-n}(1-q^n)(1+beta q^{1-n}) h_{n-1}.
inline double sym_asc(long n, double x, double beta, double q) {
    if (n < 0) throw domain_error("sym_asc: n must be >= 0");
    if (beta < 0.0) throw domain_error("sym_asc: beta must be >= 0");
    if (!(q > 0.0 && q < 1.0)) throw domain_error("sym_asc: q must lie in (0,1)");
    double hm = 0.0, h = 1.0;
    for (long k = 0; k < n; ++k) {
        const double qmk = ipow(q, -k);
        double hn = 2.0 * x * h - qmk * (1.0 - 1.0 / qmk) * (1.0 + beta * q * qmk) * hm;
        hm = h;
        h = hn;
    }
    return h;
}

/// Continuous q^{-1}-Hermite h_n(x|q): the beta = 0 member.
inline double qinv_hermite(long n, double x, double q) {
    if (n < 0) throw domain_error("qinv_hermite: n must be >= 0");
    if (!(q > 0.0 && q < 1.0)) throw domain_error("qinv_hermite: q must lie in (0,1)");
    double hm = 0.0, h = 1.0;
    for (long k = 0; k < n; ++k) {
        const double qmk = ipow(q, -k);
        double hn = 2.0 * x * h - qmk * (1.0 - 1.0 / qmk) * hm;
        hm = h;
        h = hn;
    }
    return h;
}

inline cplx PolynomialFamily::eval(long n, cplx u) const {
    if (kind != PolyKind::asc_general)
        throw domain_error("PolynomialFamily: complex argument is for the general family");
    return asc_poly(n, u, a, b, q);
}

inline double PolynomialFamily::eval(long n, double x) const {
    switch (kind) {
        case PolyKind::sym_asc: return sym_asc(n, x, beta, q);
        case PolyKind::qinv_hermite: return qinv_hermite(n, x, q);
        case PolyKind::asc_general:
            throw domain_error("PolynomialFamily: the general family takes a complex argument");
    }
    throw domain_error("PolynomialFamily: unknown kind");
}

struct DiffeqReport {
    long n = 0;
    long window = 0;
    double max_abs_residual = 0.0;
    // residual scaled per grid point by the largest participating term;
    // far out on the grid Q_n grows like (2x)^n, so only the scaled number
    // is meaningful in fixed precision
    double max_scaled_residual = 0.0;
};

/// Residual of the second-order difference equation
///   q^n Q_n(y) = A(e^{-2y}) [Q_n(y+ln q) - Q_n] + Q_n + A(e^{2y}) [Q_n(y-ln q) - Q_n]
/// with A(s) = (1+beta s)/((1+s)(1+s/q)), evaluated on the grid e^{-y} = alpha q^l.
inline DiffeqReport verify_diffeq(long n, const QParams& params, long window) {
    params.validate();
    if (window < 1) throw domain_error("verify_diffeq: window must be >= 1");
    const double q = params.q, alpha = params.alpha, beta = params.beta;
    auto Q = [&](long l) { return sym_asc(n, grid_point(alpha, q, l).x, beta, q); };
    DiffeqReport rep{n, window, 0.0, 0.0};
    const double qn = ipow(q, n);
    for (long l = -window; l <= window; ++l) {
        const double em2 = ipow(alpha * ipow(q, l), 2L);  // e^{-2y}
        const double ep2 = 1.0 / em2;
        const double Am = (1.0 + beta * em2) / ((1.0 + em2) * (1.0 + em2 / q));
        const double Ap = (1.0 + beta * ep2) / ((1.0 + ep2) * (1.0 + ep2 / q));
        // y + ln q lowers the grid index by one
        const double q0 = Q(l);
        const double qm = Q(l - 1), qp = Q(l + 1);
        const double rhs = Am * (qm - q0) + q0 + Ap * (qp - q0);
        const double res = std::abs(qn * q0 - rhs);
        const double scale = std::max({1.0, std::abs(q0), std::abs(qm), std::abs(qp)});
        rep.max_abs_residual = std::max(rep.max_abs_residual, res);
        rep.max_scaled_residual = std::max(rep.max_scaled_residual, res / scale);
    }
    return rep;
}

}  // namespace ascop
