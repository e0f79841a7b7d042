#pragma once

// q-series primitives: finite and infinite q-Pochhammer symbols, the rescaled
// Jacobi theta function theta(z) = (z, q/z; q)_inf, unilateral r_phi_s series
// and bilateral r_psi_r series.  All series are evaluated by term recursion
// with explicit truncation diagnostics; arithmetic is double-precision
// complex throughout.

#include <algorithm>
#include <vector>

#include "ascop/common.hpp"

namespace ascop {

namespace detail {
inline void check_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw domain_error("q must lie in (0,1)");
}
}  // namespace detail

/// (a;q)_n for any integer n; negative n via (a;q)_{-n} = 1/prod_{k=1}^{n}(1 - a q^{-k}).
inline cplx qpoch_finite(cplx a, double q, long n) {
    detail::check_q(q);
    cplx p{1.0, 0.0};
    if (n >= 0) {
        cplx aq = a;
        for (long k = 0; k < n; ++k) {
            p *= 1.0 - aq;
            aq *= q;
        }
    } else {
        for (long k = 1; k <= -n; ++k) {
            cplx f = 1.0 - a * ipow(q, -k);
            if (f == cplx{0.0, 0.0})
                throw pole_error("qpoch_finite: vanishing factor at negative index");
            p /= f;
        }
    }
    return p;
}

inline double qpoch_finite(double a, double q, long n) {
    return qpoch_finite(cplx{a, 0.0}, q, n).real();
}

/// (a;q)_inf, truncated at the smallest K with |a| q^(K+1)/(1-q) < tol; the
/// dropped factors then move the value by less than tol * max(1, |value|).
inline SeriesResult qpoch_inf(cplx a, double q, double tol = default_tol) {
    detail::check_q(q);
    if (tol <= 0.0) throw domain_error("qpoch_inf: tol must be positive");
    SeriesResult r;
    cplx p{1.0, 0.0};
    cplx aq = a;
    int k = 0;
    for (;;) {
        p *= 1.0 - aq;
        aq *= q;
        ++k;
        // margin under tol so the first-order tail bound below stays an
        // upper bound after the expm1 correction
        if (std::abs(aq) / (1.0 - q) < 0.9 * tol) break;
        if (k > 1000000) throw no_convergence("qpoch_inf: runaway truncation");
    }
    r.value = p;
    r.terms_used = k;
    r.tail_estimate = std::abs(p) * std::expm1(std::abs(aq) / (1.0 - q));
    r.converged = true;
    return r;
}

inline SeriesResult qpoch_inf(double a, double q, double tol = default_tol) {
    return qpoch_inf(cplx{a, 0.0}, q, tol);
}

/// Product of several (a;q)_inf values.
inline cplx qpoch_inf_many(std::initializer_list<cplx> as, double q, double tol = default_tol) {
    cplx p{1.0, 0.0};
    for (cplx a : as) p *= qpoch_inf(a, q, tol).value;
    return p;
}

/// Rescaled Jacobi theta function theta(z) = (z;q)_inf (q/z;q)_inf.
inline cplx theta(cplx z, double q, double tol = default_tol) {
    if (z == cplx{0.0, 0.0}) throw domain_error("theta: z must be nonzero");
    return qpoch_inf(z, q, tol).value * qpoch_inf(q / z, q, tol).value;
}

// Shape of an r_phi_s (or r_psi_r) series.  The term ratio carries
// ((-1)^k q^binom(k,2)) to the power gr_factor_power = s+1-r, stored
// explicitly so e.g. the 3_phi_1 (power -1) and 0_phi_1 (power +2) cases
// run through one evaluator.
struct HypergeometricSpec {
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    double q = 0.5;
    int gr_factor_power = 0;
};

inline HypergeometricSpec make_phi_spec(std::vector<cplx> upper, std::vector<cplx> lower, double q) {
    detail::check_q(q);
    HypergeometricSpec s;
    s.gr_factor_power = static_cast<int>(lower.size()) + 1 - static_cast<int>(upper.size());
    s.upper = std::move(upper);
    s.lower = std::move(lower);
    s.q = q;
    return s;
}

/// Unilateral basic hypergeometric series sum_k t_k z^k.
/// Stops at termination (a numerator factor hits zero), at tail < tol, or at
/// max_terms (converged=false); throws no_convergence if terms still grow there.
inline SeriesResult phi_series(const HypergeometricSpec& spec, cplx z, double tol = default_tol,
                               int max_terms = 10000) {
    const double q = spec.q;
    detail::check_q(q);
    SeriesResult r;
    cplx term{1.0, 0.0};
    cplx sum{1.0, 0.0};
    double ratio_mag = 0.0;
    int quiet = 0;
    for (int k = 0; k < max_terms; ++k) {
        cplx num{1.0, 0.0};
        const double qk = ipow(q, (long)k);
        for (cplx a : spec.upper) num *= 1.0 - a * qk;
        cplx den = 1.0 - ipow(q, (long)k + 1);
        for (cplx b : spec.lower) {
            cplx f = 1.0 - b * qk;
            if (f == cplx{0.0, 0.0})
                throw pole_error("phi_series: lower parameter in q^(-N)");
            den *= f;
        }
        cplx ratio = num / den * z;
        if (spec.gr_factor_power != 0)
            ratio *= ipow(cplx{-qk, 0.0}, (long)spec.gr_factor_power);
        term *= ratio;
        r.terms_used = k + 1;
        if (term == cplx{0.0, 0.0}) {  // terminating series: sum is exact
            r.value = sum;
            r.tail_estimate = 0.0;
            r.converged = true;
            return r;
        }
        sum += term;
        ratio_mag = std::abs(ratio);
        if (ratio_mag < 1.0) {
            double tail = std::abs(term) * ratio_mag / (1.0 - std::min(ratio_mag, 0.9));
            if (tail < tol * std::max(1.0, std::abs(sum))) {
                if (++quiet >= 2) {
                    r.value = sum;
                    r.tail_estimate = tail;
                    r.converged = true;
                    return r;
                }
            } else {
                quiet = 0;
            }
        } else {
            quiet = 0;
        }
    }
    if (ratio_mag >= 1.0)
        throw no_convergence("phi_series: max_terms reached with growing terms");
    r.value = sum;
    r.tail_estimate = std::abs(term) / (1.0 - std::min(ratio_mag, 0.9));
    r.converged = false;
    return r;
}

/// Bilateral r_psi_r series: two-sided sum over k in Z, each side truncated by
/// the tail rule.  The stored gr_factor_power follows the unilateral
/// convention s+1-r, so the bilateral term factor uses gr_factor_power - 1
/// (no (q;q)_k in a bilateral term).  If abs_sum is non-null it receives
/// sum_k |t_k|, the natural scale for zero-sum identities.
inline SeriesResult bilateral_psi(const HypergeometricSpec& spec, cplx z, double tol = default_tol,
                                  int max_terms = 10000, double* abs_sum = nullptr) {
    const double q = spec.q;
    detail::check_q(q);
    const int p = spec.gr_factor_power - 1;
    SeriesResult r;
    cplx sum{1.0, 0.0};  // k = 0 term
    double asum = 1.0;
    r.tail_estimate = 0.0;

    // upward direction
    cplx term{1.0, 0.0};
    double ratio_mag = 0.0;
    for (int k = 0;; ++k) {
        if (k >= max_terms) {
            if (ratio_mag >= 1.0)
                throw no_convergence("bilateral_psi: upward terms do not decay");
            r.tail_estimate += std::abs(term) / (1.0 - std::min(ratio_mag, 0.9));
            break;
        }
        const double qk = ipow(q, (long)k);
        cplx num{1.0, 0.0};
        for (cplx a : spec.upper) num *= 1.0 - a * qk;
        cplx den{1.0, 0.0};
        for (cplx b : spec.lower) {
            cplx f = 1.0 - b * qk;
            if (f == cplx{0.0, 0.0}) throw pole_error("bilateral_psi: lower parameter pole (upward)");
            den *= f;
        }
        cplx ratio = num / den * z;
        if (p != 0) ratio *= ipow(cplx{-qk, 0.0}, (long)p);
        term *= ratio;
        r.terms_used++;
        if (term == cplx{0.0, 0.0}) break;  // terminates upward
        if (!std::isfinite(std::abs(term)))
            throw no_convergence("bilateral_psi: upward terms overflow");
        sum += term;
        asum += std::abs(term);
        ratio_mag = std::abs(ratio);
        if (ratio_mag < 1.0) {
            double tail = std::abs(term) * ratio_mag / (1.0 - std::min(ratio_mag, 0.9));
            if (tail < 0.5 * tol * std::max(1.0, std::abs(sum)) && k > 2) {
                r.tail_estimate += tail;
                break;
            }
        }
    }

    // downward direction: t_{k-1} = t_k * prod(1 - b q^(k-1)) / (prod(1 - a q^(k-1)) z f(k-1))
    term = cplx{1.0, 0.0};
    ratio_mag = 0.0;
    for (int k = 0;; --k) {
        if (-k >= max_terms) {
            if (ratio_mag >= 1.0)
                throw no_convergence("bilateral_psi: downward terms do not decay");
            r.tail_estimate += std::abs(term) / (1.0 - std::min(ratio_mag, 0.9));
            break;
        }
        const double qk = ipow(q, (long)k - 1);
        cplx num{1.0, 0.0};
        for (cplx b : spec.lower) num *= 1.0 - b * qk;
        cplx den = z;
        for (cplx a : spec.upper) {
            cplx f = 1.0 - a * qk;
            if (f == cplx{0.0, 0.0}) throw pole_error("bilateral_psi: upper parameter pole (downward)");
            den *= f;
        }
        if (p != 0) den *= ipow(cplx{-qk, 0.0}, (long)p);
        cplx ratio = num / den;
        term *= ratio;
        r.terms_used++;
        if (term == cplx{0.0, 0.0}) break;  // terminates downward
        if (!std::isfinite(std::abs(term)))
            throw no_convergence("bilateral_psi: downward terms overflow");
        sum += term;
        asum += std::abs(term);
        ratio_mag = std::abs(ratio);
        if (ratio_mag < 1.0) {
            double tail = std::abs(term) * ratio_mag / (1.0 - std::min(ratio_mag, 0.9));
            if (tail < 0.5 * tol * std::max(1.0, std::abs(sum)) && k < -2) {
                r.tail_estimate += tail;
                break;
            }
        }
    }

    r.value = sum;
    r.converged = true;
    if (abs_sum) *abs_sum = asum;
    return r;
}

}  // namespace ascop
