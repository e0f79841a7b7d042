#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace ascop {

using cplx = std::complex<double>;

// Default relative tolerance for infinite products / series.
inline constexpr double default_tol = 1e-13;

struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

struct no_convergence : std::runtime_error {
    explicit no_convergence(const std::string& what) : std::runtime_error(what) {}
};

struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Parameter triple (q, alpha, beta): 0 < q < 1, alpha != 0, beta >= 0.
struct QParams {
    double q;
    double alpha;
    double beta;

    void validate() const {
        if (!(q > 0.0 && q < 1.0)) throw domain_error("QParams: q must lie in (0,1)");
        if (alpha == 0.0) throw domain_error("QParams: alpha must be nonzero");
        if (!(beta >= 0.0)) throw domain_error("QParams: beta must be >= 0");
    }

    // Representative with the same grid and alpha in (q,1].  Grids coincide
    // iff alpha/gamma is in q^Z or -alpha*gamma is in q^Z, so a negative
    // alpha maps through -1/alpha and any positive alpha is shifted by a
    // power of q into (q,1].
    QParams canonicalize() const {
        validate();
        double a = alpha < 0.0 ? -1.0 / alpha : alpha;
        double t = std::log(a) / std::log(q);
        double m = -std::floor(t);
        a *= std::pow(q, m);
        // guard rounding at the interval edges
        if (a <= q) a /= q;
        if (a > 1.0) a *= q;
        return {q, a, beta};
    }

    QParams with_alpha(double a) const { return {q, a, beta}; }
    QParams with_beta(double b) const { return {q, alpha, b}; }
};

// Value of a truncated series/product together with truncation diagnostics.
struct SeriesResult {
    cplx value{0.0, 0.0};
    int terms_used = 0;
    double tail_estimate = 0.0;
    bool converged = false;
};

// Integer power of a complex number (exact sign handling, no pow branch cuts).
inline cplx ipow(cplx z, long n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r{1.0, 0.0};
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

inline double ipow(double x, long n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

inline int sign_pow(long l) { return (l % 2 == 0) ? 1 : -1; }

}  // namespace ascop
