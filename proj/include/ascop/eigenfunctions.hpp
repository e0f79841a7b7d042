#pragma once

// Closed-form solution families of the eigenvalue equation
//   z X_l = a_l X_{l+1} + b_l X_l + a_{l-1} X_{l-1}:
// psi_l(z) (square-summable as l -> +inf), its mirror Psi_l(z) (l -> -inf),
// the inside-disk solutions phi_l(z), the connection coefficient K, the
// Wronskian, and the z = 0 solutions for beta = 0.
//
// Branch policy for psi.  The outer 2_phi_1 form is stable for |z| > 1 at
// any l (the big parameter factors cancel ratio-wise).  Inside the disk the
// connection formula loses ~l(l+1)/2 * log10(1/q) digits at large |l| and
// degenerates near z = 0 (the K's blow up against each other), so the
// default inside route is the Heine-transformed series, which terminates at
// z = q^(-n) arguments and keeps all large factors structural.  Heine needs
// alpha sqrt(beta) q^(l+1) < 1; below that threshold psi is filled in by
// downward recursion from two Heine seeds (downward is the dominant
// direction for psi, so the recursion is stable away from the spectrum).
// The connection branch remains available explicitly for cross-checks.

#include <vector>

#include "ascop/jacobi_operator.hpp"
#include "ascop/qseries.hpp"

namespace ascop {

enum class PsiBranch { series_outside, connection, heine, beta0 };

struct EigenfunctionValue {
    long l = 0;
    cplx z{0.0, 0.0};
    cplx value{0.0, 0.0};
    PsiBranch branch = PsiBranch::series_outside;
};

namespace detail {

inline double q_half_square_pow(double q, long l) {
    // q^(l^2/2) with the half handled exactly by parity
    const long e = (l * l) / 2;
    double v = ipow(q, e);
    if (l % 2 != 0) v *= std::sqrt(q);
    return v;
}

inline double half_pow(double b, long l) {
    // b^(l/2) for b > 0
    double v = ipow(b, l / 2);
    if (l % 2 != 0) v *= (l > 0 ? std::sqrt(b) : 1.0 / std::sqrt(b));
    return v;
}

}  // namespace detail

/// C_l(alpha,beta) beta^(l/2): the psi normalization in the combination that
/// stays finite and positive for every beta >= 0.  Assembled factor by
/// factor (one k couples the radicand and denominator factors) so no
/// intermediate product over- or underflows spuriously.
inline double psi_norm_prefactor(long l, const QParams& p) {
    const double a2 = p.alpha * p.alpha, q = p.q;
    double v = std::sqrt(1.0 + a2 * ipow(q, 2 * l));
    if (l >= 0) {
        for (long k = 0; k < l; ++k) {
            const double q2k = ipow(q, 2 * k);
            v *= std::sqrt((p.beta + a2 * q2k) * (1.0 + a2 * p.beta * q2k * q * q)) /
                 ((1.0 + a2 * q2k * q) * (1.0 + a2 * q2k * q * q));
        }
    } else {
        for (long k = 1; k <= -l; ++k) {
            const double qm2k = ipow(q, -2 * k);
            v *= (1.0 + a2 * qm2k * q * q) * (1.0 + a2 * qm2k * q) /
                 std::sqrt((p.beta + a2 * qm2k) * (1.0 + a2 * p.beta * qm2k * q * q));
        }
    }
    return v;
}

namespace detail {

inline cplx psi_outer_series(long l, cplx z, const QParams& p, double tol) {
    const double q = p.q;
    const double sb = std::sqrt(p.beta);
    const cplx A{0.0, p.alpha * sb * ipow(q, l + 1)};
    auto spec = make_phi_spec({A, -A}, {cplx{-p.alpha * p.alpha * ipow(q, 2 * l + 1), 0.0}}, q);
    cplx f = phi_series(spec, 1.0 / z, tol).value;
    cplx pref = psi_norm_prefactor(l, p) * ipow(p.alpha, l) * q_half_square_pow(q, l);
    return pref * qpoch_inf(1.0 / z, q, tol).value * ipow(1.0 / z, l) * f;
}

inline cplx psi_heine(long l, cplx z, const QParams& p, double tol) {
    const double q = p.q;
    const double sb = std::sqrt(p.beta);
    const cplx A{0.0, p.alpha * sb * ipow(q, l + 1)};
    const double c = -p.alpha * p.alpha * ipow(q, 2 * l + 1);
    auto spec = make_phi_spec({1.0 / z, cplx{0.0, -p.alpha * ipow(q, l) / sb}}, {A / z}, q);
    cplx f = phi_series(spec, -A, tol).value;
    cplx pref = psi_norm_prefactor(l, p) * ipow(p.alpha, l) * q_half_square_pow(q, l);
    pref *= qpoch_inf(-A, q, tol).value * qpoch_inf(A / z, q, tol).value /
            qpoch_inf(cplx{c, 0.0}, q, tol).value;
    return pref * ipow(1.0 / z, l) * f;
}

inline cplx psi_beta0(long l, cplx z, const QParams& p, double tol) {
    const double q = p.q;
    const double c = -p.alpha * p.alpha * ipow(q, 2 * l + 1);
    auto spec = make_phi_spec({}, {cplx{c, 0.0}}, q);
    cplx f = phi_series(spec, cplx{c, 0.0} / z, tol).value;
    cplx pref = psi_norm_prefactor(l, p) * ipow(p.alpha, l) * q_half_square_pow(q, l);
    return pref * ipow(1.0 / z, l) * f;
}

// downward recursion psi_{m-1} = ((z - b_m) psi_m - a_m psi_{m+1}) / a_{m-1}
template <typename Direct>
inline cplx psi_recurse_down(long l, long l0, cplx z, const QParams& p, Direct direct) {
    cplx hi = direct(l0 + 1);
    cplx lo = direct(l0);
    for (long m = l0; m > l; --m) {
        cplx nxt = ((z - coeff_b(m, p)) * lo - coeff_a(m, p) * hi) / coeff_a(m - 1, p);
        hi = lo;
        lo = nxt;
    }
    return lo;
}

}  // namespace detail

/// psi_l(z), the S^+ solution; analytic continuation to C \ {0}.
inline EigenfunctionValue psi(long l, cplx z, const QParams& p, double tol = default_tol) {
    p.validate();
    if (z == cplx{0.0, 0.0}) throw domain_error("psi: z must be nonzero");
    EigenfunctionValue v{l, z, {0.0, 0.0}, PsiBranch::series_outside};
    if (std::abs(z) > 1.05) {
        v.branch = p.beta == 0.0 ? PsiBranch::beta0 : PsiBranch::series_outside;
        v.value = detail::psi_outer_series(l, z, p, tol);
        return v;
    }
    if (p.beta == 0.0) {
        v.branch = PsiBranch::beta0;
        long l0 = l;
        while (p.alpha * p.alpha * ipow(p.q, 2 * l0 + 1) > 1.0) ++l0;
        if (l0 == l) {
            v.value = detail::psi_beta0(l, z, p, tol);
        } else {
            v.value = detail::psi_recurse_down(
                l, l0, z, p, [&](long m) { return detail::psi_beta0(m, z, p, tol); });
        }
        return v;
    }
    v.branch = PsiBranch::heine;
    long l0 = l;
    while (p.alpha * std::sqrt(p.beta) * ipow(p.q, l0 + 1) > 0.5) ++l0;
    if (l0 == l) {
        v.value = detail::psi_heine(l, z, p, tol);
    } else {
        v.value = detail::psi_recurse_down(l, l0, z, p,
                                           [&](long m) { return detail::psi_heine(m, z, p, tol); });
    }
    return v;
}

/// Psi_l(z;alpha,beta) = (alpha/(1+alpha^2)) psi_{-l}(z;1/alpha,beta), the S^-
/// solution normalized so the Wronskian with psi is -z(-q beta/z, 1/z;q)_inf.
/// (The bare mirror psi_{-l}(z;1/alpha,beta) spans the same line but carries
/// the reciprocal normalization constant.)
inline EigenfunctionValue psi_big(long l, cplx z, const QParams& p, double tol = default_tol) {
    p.validate();
    QParams mirror = p.with_alpha(1.0 / p.alpha);
    EigenfunctionValue v = psi(-l, z, mirror, tol);
    v.l = l;
    v.value *= p.alpha / (1.0 + p.alpha * p.alpha);
    return v;
}

/// Phase factor B_l(alpha,beta) = (-i)^l exp(i arg w_l),
/// w_l = (i alpha/sqrt(beta), -i alpha sqrt(beta) q; q)_l.  The argument is
/// accumulated factor by factor; each factor has real part 1, so the
/// principal value per factor is unambiguous.
inline cplx phase_B(long l, const QParams& p) {
    if (p.beta <= 0.0) throw domain_error("phase_B: beta must be positive");
    const double c = p.alpha / std::sqrt(p.beta);
    const double d = p.alpha * std::sqrt(p.beta) * p.q;
    double arg = 0.0;
    if (l >= 0) {
        for (long k = 0; k < l; ++k) {
            arg += std::atan2(-c * ipow(p.q, k), 1.0);
            arg += std::atan2(d * ipow(p.q, k), 1.0);
        }
    } else {
        for (long k = 1; k <= -l; ++k) {
            arg -= std::atan2(-c * ipow(p.q, -k), 1.0);
            arg -= std::atan2(d * ipow(p.q, -k), 1.0);
        }
    }
    static const cplx mi_pow[4] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    long r = ((l % 4) + 4) % 4;
    return mi_pow[r] * std::polar(1.0, arg);
}

// The psi normalization C_l, the phi phase B_l and the q-shifted factorial
// w_l inside it.
struct NormalizationConstants {
    double C_l = 1.0;
    cplx B_l{1.0, 0.0};
    cplx w_l{1.0, 0.0};
};

inline NormalizationConstants normalization_constants(long l, const QParams& p) {
    p.validate();
    if (p.beta <= 0.0)
        throw domain_error("normalization_constants: beta must be positive");
    NormalizationConstants n;
    n.C_l = psi_norm_prefactor(l, p) / detail::half_pow(p.beta, l);
    const double sb = std::sqrt(p.beta);
    n.w_l = qpoch_finite(cplx{0.0, p.alpha / sb}, p.q, l) *
            qpoch_finite(cplx{0.0, -p.alpha * sb * p.q}, p.q, l);
    n.B_l = phase_B(l, p);
    return n;
}

/// phi_l(z) for |z| < 1/q (beta > 0).
inline EigenfunctionValue phi_sol(long l, cplx z, const QParams& p, double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("phi_sol: beta must be positive");
    if (std::abs(z) >= 1.0 / p.q) throw domain_error("phi_sol: requires |z| < 1/q");
    const double q = p.q;
    const double sb = std::sqrt(p.beta);
    auto spec = make_phi_spec({cplx{0.0, p.alpha * ipow(q, l) / sb},
                               cplx{0.0, -ipow(q, -l) / (p.alpha * sb)}},
                              {cplx{-q, 0.0}}, q);
    cplx f = phi_series(spec, q * z, tol).value;
    cplx val = phase_B(l, p) * detail::half_pow(1.0 / q, l) *
               std::sqrt(1.0 + p.alpha * p.alpha * ipow(q, 2 * l)) * f;
    return {l, z, val, PsiBranch::connection};
}

/// Connection coefficient K(z; sign*alpha, beta) of Lemma (iii); simple poles
/// at z = -beta q^(-k), essential singularity at 0.
inline cplx connection_K(cplx z, const QParams& p, int sign = +1, double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("connection_K: beta must be positive");
    if (z == cplx{0.0, 0.0}) throw domain_error("connection_K: essential singularity at z = 0");
    const double a = sign >= 0 ? p.alpha : -p.alpha;
    const double q = p.q;
    const double sb = std::sqrt(p.beta);
    // pole detection: -z/beta in q^(-N)
    const cplx t = -z / p.beta;
    if (std::abs(t.imag()) < 1e-12 * std::abs(t) && t.real() > 0.0) {
        const double j = std::log(t.real()) / std::log(q);
        if (std::abs(j - std::round(j)) < 1e-9 && std::round(j) <= 0.0)
            throw pole_error("connection_K: z at a pole -beta q^(-k)");
    }
    cplx num = qpoch_inf(cplx{0.0, -a / sb}, q, tol).value *
               qpoch_inf(cplx{0.0, a * sb * q}, q, tol).value;
    cplx den = 2.0 * qpoch_inf(-q, q, tol).value *
               qpoch_inf(-a * a * q, q, tol).value;
    cplx th = theta(cplx{0.0, 1.0} * z / (a * sb), q, tol);
    cplx dpoch = qpoch_inf(t, q, tol).value;
    if (dpoch == cplx{0.0, 0.0}) throw pole_error("connection_K: z at a pole -beta q^(-k)");
    return num / den * th / dpoch;
}

/// psi through the connection formula (Lemma (iii)); for cross-checks at
/// moderate |l| and |z| not too small.
inline EigenfunctionValue psi_connection(long l, cplx z, const QParams& p,
                                         double tol = default_tol) {
    cplx kp = connection_K(z, p, +1, tol);
    cplx km = connection_K(z, p, -1, tol);
    QParams pm = p.with_alpha(-p.alpha);
    cplx val = kp * phi_sol(l, z, p, tol).value +
               km * static_cast<double>(sign_pow(l)) * phi_sol(l, z, pm, tol).value;
    return {l, z, val, PsiBranch::connection};
}

/// Discrete Wronskian a_l (psi_{l+1} Psi_l - psi_l Psi_{l+1}).
inline cplx wronskian_numeric(long l, cplx z, const QParams& p, double tol = default_tol) {
    cplx p0 = psi(l, z, p, tol).value;
    cplx p1 = psi(l + 1, z, p, tol).value;
    cplx P0 = psi_big(l, z, p, tol).value;
    cplx P1 = psi_big(l + 1, z, p, tol).value;
    return coeff_a(l, p) * (p1 * P0 - p0 * P1);
}

/// Closed form -z (-q beta/z; q)_inf (1/z; q)_inf; zeros exactly at the
/// spectrum z = q^n and z = -beta q^(n+1).
inline cplx wronskian_closed(cplx z, double q, double beta, double tol = default_tol) {
    if (z == cplx{0.0, 0.0}) throw domain_error("wronskian_closed: z must be nonzero");
    return -z * qpoch_inf(-q * beta / z, q, tol).value * qpoch_inf(1.0 / z, q, tol).value;
}

/// Constant c with Psi_l(lambda) = c psi_l(lambda) at lambda = q^n (sign +)
/// or lambda = -beta q^(n+1) (sign -).
inline cplx proportionality(long n, int sign, const QParams& p, double tol = default_tol) {
    p.validate();
    if (n < 0) throw domain_error("proportionality: n must be >= 0");
    const double a2 = p.alpha * p.alpha, q = p.q;
    double ratio;
    if (sign >= 0) {
        ratio = qpoch_inf(-a2 * q, q, tol).value.real() / qpoch_inf(-1.0 / a2, q, tol).value.real() *
                qpoch_inf(-p.beta * q * q / a2, q * q, tol).value.real() /
                qpoch_inf(-a2 * p.beta * q * q, q * q, tol).value.real();
    } else {
        if (p.beta == 0.0) throw domain_error("proportionality: negative branch needs beta > 0");
        ratio = qpoch_inf(-a2 * q, q, tol).value.real() / qpoch_inf(-1.0 / a2, q, tol).value.real() *
                qpoch_inf(-1.0 / (a2 * p.beta), q * q, tol).value.real() /
                qpoch_inf(-a2 / p.beta, q * q, tol).value.real();
    }
    return ratio / (sign_pow(n) * ipow(p.alpha, 2 * n + 2));
}

// Two independent non-square-summable solutions at z = 0 for beta = 0,
// reported in the psi gauge psi_l = (-1)^l sqrt(1+alpha^2 q^(2l)) phi_l.
struct ZeroEnergySolutions {
    long l_min = 0;
    std::vector<double> first;   // from phi_l = q^(-l/2)
    std::vector<double> second;  // from phi~_l = (1+alpha^2 q^l)(1-q^l) q^(-3l/2)
};

inline ZeroEnergySolutions zero_energy_solutions(const QParams& p, long l_min, long l_max) {
    p.validate();
    if (p.beta != 0.0) throw domain_error("zero_energy_solutions: defined for beta = 0");
    if (l_min > l_max) throw domain_error("zero_energy_solutions: empty range");
    ZeroEnergySolutions s;
    s.l_min = l_min;
    const double a2 = p.alpha * p.alpha, q = p.q;
    for (long l = l_min; l <= l_max; ++l) {
        const double g = sign_pow(l) * std::sqrt(1.0 + a2 * ipow(q, 2 * l));
        const double f1 = detail::half_pow(1.0 / q, l);
        const double f2 = (1.0 + a2 * ipow(q, l)) * (1.0 - ipow(q, l)) * detail::half_pow(1.0 / (q * q * q), l);
        s.first.push_back(g * f1);
        s.second.push_back(g * f2);
    }
    return s;
}

}  // namespace ascop
