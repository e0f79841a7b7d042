#pragma once

// The discrete orthogonality measures lambda_alpha^(beta) on the grid
// Z(alpha), closed-form norms, mixed orthogonality, the orthogonal-basis
// complement functions Phi^(beta), the N-extremal q^{-1}-Hermite family and
// the beta = 1/q splitting.
//
// Conventions.  The measure is stored unnormalized: weight_l is the grid
// weight of the bare orthogonality relation, total_mass its closed-form sum,
// and weight_l/total_mass the probability mass.  Weights are assembled from
// prod(beta + alpha^2 q^(2k)) so the beta -> 0 limit is exact and the single
// formula covers the q^{-1}-Hermite case.
//
// Eigenvector values at spectrum points are evaluated through the rescaled
// polynomial form sqrt(weight_l) h_n(x_l) (exact there, and stable at any l,
// unlike the generic-z continuation routes).  These carry no (-1)^n factor:
// the analytic continuation of psi fixes that sign, and it cancels in every
// quadratic quantity anyway.

#include <cmath>
#include <vector>

#include "ascop/eigenfunctions.hpp"
#include "ascop/polynomials.hpp"

namespace ascop {

/// (-alpha^2/beta; q^2)_l beta^l / (-alpha^2 beta q^2; q^2)_l, assembled as
/// prod (beta + alpha^2 q^(2k)) / (1 + alpha^2 beta q^(2k+2)) so the
/// beta -> 0 limit is exact and no intermediate factor overflows.
inline double weight_ratio(long l, const QParams& p) {
    const double a2 = p.alpha * p.alpha, q = p.q;
    double v = 1.0;
    if (l >= 0) {
        for (long k = 0; k < l; ++k) {
            const double q2k = ipow(q, 2 * k);
            v *= (p.beta + a2 * q2k) / (1.0 + a2 * p.beta * q2k * q * q);
        }
    } else {
        for (long k = 1; k <= -l; ++k) {
            const double qm2k = ipow(q, -2 * k);
            v *= (1.0 + a2 * p.beta * qm2k * q * q) / (p.beta + a2 * qm2k);
        }
    }
    return v;
}

/// Unnormalized mass at x_l(alpha); reduces to alpha^(4l)(1+alpha^2 q^(2l)) q^(l(2l-1))
/// when beta = 0.
inline double measure_weight(long l, const QParams& p) {
    const double a2 = p.alpha * p.alpha;
    return weight_ratio(l, p) * ipow(a2, l) * (1.0 + a2 * ipow(p.q, 2 * l)) * ipow(p.q, l * l);
}

/// Window half-width for bilateral sums with q^(l^2)-type summands.
inline long measure_window(double q, double tol) {
    detail::check_q(q);
    if (tol <= 0.0 || tol >= 1.0) throw domain_error("measure_window: tol in (0,1) required");
    return static_cast<long>(std::ceil(std::sqrt(std::log(tol) / std::log(q)))) + 10;
}

/// Closed-form total mass (the n = m = 0 diagonal of the orthogonality
/// relation); the beta = 0 substitution gives (-alpha^2, -q/alpha^2, q; q)_inf.
inline double closed_total_mass(const QParams& p, double tol = default_tol) {
    const double a2 = p.alpha * p.alpha, q = p.q;
    double v = qpoch_inf_many({cplx{-a2, 0}, cplx{-q / a2, 0}, cplx{-p.beta * q, 0}, cplx{q, 0}}, q, tol).real();
    v /= qpoch_inf(-a2 * p.beta * q * q, q * q, tol).value.real();
    v /= qpoch_inf(-p.beta * q * q / a2, q * q, tol).value.real();
    return v;
}

struct DiscreteMeasure {
    QParams params;
    std::vector<GridPoint> support;  // l = -L..L
    std::vector<double> weights;     // unnormalized, positive
    double total_mass = 0.0;         // closed form

    long window() const { return (static_cast<long>(support.size()) - 1) / 2; }
};

inline DiscreteMeasure build_measure(const QParams& p, double tol = 1e-14) {
    p.validate();
    DiscreteMeasure m;
    m.params = p;
    const long L = measure_window(p.q, tol);
    for (long l = -L; l <= L; ++l) {
        m.support.push_back(grid_point(p.alpha, p.q, l));
        m.weights.push_back(measure_weight(l, p));
    }
    m.total_mass = closed_total_mass(p, std::min(tol, default_tol));
    return m;
}

/// beta^n (-1/beta; q)_n = prod_{k=0}^{n-1} (beta + q^k); exact at beta = 0.
inline double beta_pow_poch(long n, double beta, double q) {
    double v = 1.0;
    for (long k = 0; k < n; ++k) v *= beta + ipow(q, k);
    return v;
}

/// Diagonal of the orthogonality relation at n = m.
inline double orthogonality_rhs(long n, const QParams& p, double tol = default_tol) {
    return beta_pow_poch(n, p.beta, p.q) * qpoch_finite(p.q, p.q, n) * ipow(p.q, -n * n) *
           closed_total_mass(p, tol);
}

/// ||psi(q^n)|| (sign +) and ||psi(-beta q^(n+1))|| (sign -, via the
/// beta -> 1/(beta q^2) substitution in the same closed formula).  The norm
/// itself is exposed (not only its square): the square overflows for
/// n >~ 30 at q = 1/2 through the q^(-n^2) factor, while the norm and the
/// normalized components stay representable.
inline double norm_psi(long n, int sign, const QParams& p, double tol = default_tol) {
    p.validate();
    if (n < 0) throw domain_error("norm_psi: n must be >= 0");
    QParams pp = p;
    if (sign < 0) {
        if (p.beta == 0.0) throw domain_error("norm_psi: negative branch needs beta > 0");
        pp = p.with_beta(1.0 / (p.beta * p.q * p.q));
    }
    const double a2 = pp.alpha * pp.alpha, q = pp.q, b = pp.beta;
    double v = ipow(std::abs(pp.alpha), n + 1) *
               std::sqrt(beta_pow_poch(n, b, q) * qpoch_finite(q, q, n)) /
               detail::q_half_square_pow(q, n);
    double c = qpoch_inf_many({cplx{-1.0 / a2, 0}, cplx{-b * q, 0}, cplx{q, 0}}, q, tol).real();
    c *= qpoch_inf(-a2 * b * q * q, q * q, tol).value.real();
    c /= qpoch_inf(-a2 * q, q, tol).value.real();
    c /= qpoch_inf(-b * q * q / a2, q * q, tol).value.real();
    return v * std::sqrt(c);
}

inline double norm_psi_sq(long n, int sign, const QParams& p, double tol = default_tol) {
    const double v = norm_psi(n, sign, p, tol);
    return v * v;
}

/// psi_l at the spectrum point q^n (sign +) or -beta q^(n+1) (sign -),
/// through the rescaled polynomial displays.
inline double psi_at_eigenvalue(long l, long n, int sign, const QParams& p,
                                double tol = default_tol) {
    p.validate();
    if (n < 0) throw domain_error("psi_at_eigenvalue: n must be >= 0");
    const double a2 = p.alpha * p.alpha, q = p.q;
    const double root = std::sqrt(1.0 + a2 * ipow(q, 2 * l));
    if (sign >= 0) {
        const double pref = qpoch_inf(-a2 * p.beta * q * q, q * q, tol).value.real() /
                            qpoch_inf(-a2 * q, q, tol).value.real();
        const double rad = weight_ratio(l, p);
        if (!(rad > 0.0)) return 0.0;  // underflow far out in the window
        return pref * std::sqrt(rad) * ipow(p.alpha, l) * detail::q_half_square_pow(q, l) * root *
               ipow(p.alpha, n) * sym_asc(n, grid_point(p.alpha, q, l).x, p.beta, q);
    }
    if (p.beta == 0.0) throw domain_error("psi_at_eigenvalue: negative branch needs beta > 0");
    const double pref = qpoch_inf(-a2 / p.beta, q * q, tol).value.real() /
                        qpoch_inf(-a2 * q, q, tol).value.real();
    const double rad = weight_ratio(l, p);
    if (!(rad > 0.0)) return 0.0;
    return pref / std::sqrt(rad) * sign_pow(l) * ipow(p.alpha, l) *
           detail::q_half_square_pow(q, l) * ipow(q, -l) * root * ipow(p.alpha, n) *
           sym_asc(n, grid_point(p.alpha, q, l).x, 1.0 / (p.beta * q * q), q);
}

/// Absolute residual of the orthogonality relation, scaled by the geometric
/// mean of the two diagonal entries.
inline double check_orthogonality(long n, long m, const QParams& p, double tol = 1e-14) {
    p.validate();
    const long L = measure_window(p.q, tol);
    double s = 0.0;
    for (long l = -L; l <= L; ++l) {
        const double x = grid_point(p.alpha, p.q, l).x;
        s += measure_weight(l, p) * sym_asc(n, x, p.beta, p.q) * sym_asc(m, x, p.beta, p.q);
    }
    const double rhs = (n == m) ? orthogonality_rhs(n, p) : 0.0;
    const double scale = std::sqrt(orthogonality_rhs(n, p) * orthogonality_rhs(m, p));
    return std::abs(s - rhs) / scale;
}

/// Residual of the mixed relation sum (-1)^l alpha^(2l)(1+alpha^2 q^(2l))
/// q^(l(l-1)) h_n^(beta) h_m^(1/beta q^2) = 0, relative to sum of |terms|.
inline double check_mixed_orthogonality(long n, long m, const QParams& p, double tol = 1e-14) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("check_mixed_orthogonality: beta must be positive");
    const double bq2 = 1.0 / (p.beta * p.q * p.q);
    const long L = measure_window(p.q, tol);
    double s = 0.0, sa = 0.0;
    for (long l = -L; l <= L; ++l) {
        const double x = grid_point(p.alpha, p.q, l).x;
        const double a2 = p.alpha * p.alpha;
        const double w = sign_pow(l) * ipow(a2, l) * (1.0 + a2 * ipow(p.q, 2 * l)) *
                         ipow(p.q, l * (l - 1));
        const double t = w * sym_asc(n, x, p.beta, p.q) * sym_asc(m, x, bq2, p.q);
        s += t;
        sa += std::abs(t);
    }
    return std::abs(s) / sa;
}

/// Moment identity: the same alternating weight annihilates every power x^k.
inline double mixed_moment_residual(long k, double alpha, double q, double tol = 1e-14) {
    const long L = measure_window(q, tol);
    double s = 0.0, sa = 0.0;
    const double a2 = alpha * alpha;
    for (long l = -L; l <= L; ++l) {
        const double x = grid_point(alpha, q, l).x;
        const double t = sign_pow(l) * ipow(a2, l) * (1.0 + a2 * ipow(q, 2 * l)) *
                         ipow(q, l * (l - 1)) * ipow(x, k);
        s += t;
        sa += std::abs(t);
    }
    return std::abs(s) / sa;
}

/// Grid form of the m-th complement function:
/// (-1)^l beta^(-l) q^(-l) (-a^2 b q^2;q^2)_l/(-a^2/b;q^2)_l h_m^(1/beta q^2)(x_l).
inline double complement_grid(long m, long l, const QParams& p) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("complement_grid: beta must be positive");
    const double x = grid_point(p.alpha, p.q, l).x;
    return sign_pow(l) * ipow(p.q, -l) / weight_ratio(l, p) *
           sym_asc(m, x, 1.0 / (p.beta * p.q * p.q), p.q);
}

/// Continuous form Phi^(beta)(sinh y | q) with the complex exponent
/// (i pi - log beta)/log q - 1.
inline cplx complement_continuous(double x, double beta, double q, double tol = default_tol) {
    detail::check_q(q);
    if (beta <= 0.0) throw domain_error("complement_continuous: beta must be positive");
    const double y = std::asinh(x);
    const double e2m = std::exp(-2.0 * y);
    cplx v = qpoch_inf(-e2m / beta, q * q, tol).value /
             qpoch_inf(-e2m * beta * q * q, q * q, tol).value;
    const cplx expo = (cplx{0.0, M_PI} - std::log(beta)) / std::log(q) - 1.0;
    return v * std::exp(-y * expo);
}

// The m-th function of the orthocomplement of the polynomials in
// L^2(lambda_alpha^(beta)), in its real grid form and the complex-valued
// continuous form.
struct ComplementFunction {
    double beta = 0.5;
    double q = 0.5;
    long m = 0;

    double grid_value(long l, const QParams& p) const { return complement_grid(m, l, p); }
    cplx continuous_value(double x, double tol = default_tol) const {
        return complement_continuous(x, beta, q, tol) *
               sym_asc(m, x, 1.0 / (beta * q * q), q);
    }
};

/// The beta = 0 measure: all N-extremal solutions of the q^{-1}-Hermite
/// moment problem arise this way for alpha in (q,1].
inline DiscreteMeasure nextremal_hermite(double alpha, double q, double tol = 1e-14) {
    return build_measure(QParams{q, alpha, 0.0}, tol);
}

/// Diagonal norm of the q^{-1}-Hermite orthogonality relation.
inline double hermite_norm(long n, double alpha, double q, double tol = default_tol) {
    const double a2 = alpha * alpha;
    double v = qpoch_finite(q, q, n) * detail::half_pow(1.0 / q, n * (n + 1));
    return v * qpoch_inf_many({cplx{-a2, 0}, cplx{-q / a2, 0}, cplx{q, 0}}, q, tol).real();
}

struct DualOrthogonalityResult {
    double residual = 0.0;       // sum - delta_{k,l}
    double tail_estimate = 0.0;  // magnitude of the last included level
};

/// h_n^(beta)(x) q^(n^2/2) / sqrt(beta^n (-1/beta;q)_n (q;q)_n) for
/// n = 0..n_max, by a rescaled three-term recurrence whose coefficients stay
/// O(1).  This is the n-growth-free part of the normalized eigenvector
/// component psi_k(q^n)/||psi(q^n)||, usable at any truncation order.
inline std::vector<double> scaled_sym_asc_sequence(long n_max, double x, double beta, double q) {
    detail::check_q(q);
    if (n_max < 0) throw domain_error("scaled_sym_asc_sequence: n_max must be >= 0");
    std::vector<double> h(n_max + 1);
    h[0] = 1.0;
    double hm = 0.0;
    for (long n = 0; n < n_max; ++n) {
        const double qn = ipow(q, n);
        const double den = (beta + qn) * (1.0 - qn * q);
        const double c1 = 2.0 * x * qn * std::sqrt(q) / std::sqrt(den);
        const double c2 =
            n == 0 ? 0.0 : q * std::sqrt((1.0 - qn) * (beta + qn / q) / den);
        const double next = c1 * h[n] - c2 * hm;
        hm = h[n];
        h[n + 1] = next;
    }
    return h;
}

/// Dual orthogonality: sum over both eigenvalue branches of
/// psi_k psi_l / ||psi||^2, truncated at n_max; beta = 0 sums only the
/// positive branch with the Hermite norm constants.
inline DualOrthogonalityResult dual_orthogonality(long k, long l, const QParams& p, long n_max,
                                                  double tol = default_tol) {
    p.validate();
    // normalized component u_k(n) = psi_k(lambda_n)/||psi(lambda_n)|| factors
    // as u_k(0) * hhat_n(x_k): the n = 0 value carries all k-dependence and
    // the rescaled polynomials carry all n-dependence, each O(1)
    double s = 0.0, last = 0.0;
    const double xk = grid_point(p.alpha, p.q, k).x;
    const double xl = grid_point(p.alpha, p.q, l).x;
    {
        const double n0 = norm_psi(0, +1, p, tol);
        const double uk0 = psi_at_eigenvalue(k, 0, +1, p, tol) / n0;
        const double ul0 = psi_at_eigenvalue(l, 0, +1, p, tol) / n0;
        auto hk = scaled_sym_asc_sequence(n_max, xk, p.beta, p.q);
        auto hl = scaled_sym_asc_sequence(n_max, xl, p.beta, p.q);
        for (long n = 0; n <= n_max; ++n) {
            const double t = uk0 * hk[n] * ul0 * hl[n];
            s += t;
            last = std::abs(t);
        }
    }
    if (p.beta > 0.0) {
        const double bq2 = 1.0 / (p.beta * p.q * p.q);
        const double n0 = norm_psi(0, -1, p, tol);
        const double uk0 = psi_at_eigenvalue(k, 0, -1, p, tol) / n0;
        const double ul0 = psi_at_eigenvalue(l, 0, -1, p, tol) / n0;
        auto hk = scaled_sym_asc_sequence(n_max, xk, bq2, p.q);
        auto hl = scaled_sym_asc_sequence(n_max, xl, bq2, p.q);
        for (long n = 0; n <= n_max; ++n) {
            const double t = uk0 * hk[n] * ul0 * hl[n];
            s += t;
            last = std::max(last, std::abs(t));
        }
    }
    return {s - (k == l ? 1.0 : 0.0), last};
}

struct WeightFunctionReport {
    double max_ratio_deviation = 0.0;  // constancy of mass / (w sqrt(x^2+1))
    double max_grid_form_deviation = 0.0;
};

/// Direct-integral consistency: lambda({x_l}) = M w(x_l) sqrt(x_l^2+1) with
/// w(x) = 1/(-e^(2y)/beta, -e^(-2y)/beta; q^2)_inf.
inline WeightFunctionReport weight_function_check(const QParams& p, long l_range,
                                                  double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("weight_function_check: beta must be positive");
    const double q = p.q, a2 = p.alpha * p.alpha;
    auto w_of_x = [&](double x) {
        const double y = std::asinh(x);
        return 1.0 / (qpoch_inf(-std::exp(2.0 * y) / p.beta, q * q, tol).value.real() *
                      qpoch_inf(-std::exp(-2.0 * y) / p.beta, q * q, tol).value.real());
    };
    WeightFunctionReport rep;
    double ref = 0.0;
    for (long l = -l_range; l <= l_range; ++l) {
        const double x = grid_point(p.alpha, q, l).x;
        const double ratio = measure_weight(l, p) / (w_of_x(x) * std::sqrt(x * x + 1.0));
        if (l == -l_range)
            ref = ratio;
        else
            rep.max_ratio_deviation = std::max(rep.max_ratio_deviation, std::abs(ratio / ref - 1.0));
        // printed grid evaluation of w(x_l)
        const double grid_form = weight_ratio(l, p) * ipow(a2, l) * ipow(q, l * (l + 1)) /
                                 (qpoch_inf(-1.0 / (a2 * p.beta), q * q, tol).value.real() *
                                  qpoch_inf(-a2 / p.beta, q * q, tol).value.real());
        rep.max_grid_form_deviation =
            std::max(rep.max_grid_form_deviation, std::abs(w_of_x(x) / grid_form - 1.0));
    }
    return rep;
}

struct BetaSplitReport {
    double max_abs_b = 0.0;            // b_l at beta = 1/q
    double even_block_residual = 0.0;  // L^2 even block vs L(alpha,0|q^2)
    double odd_block_residual = 0.0;   // L^2 odd block vs L(alpha q,0|q^2)
    double pairing_residual = 0.0;     // +-pairing of eigenvalues
    double sign_relation_residual = 0.0;
    double even_sum_residual = 0.0;    // orthogonality split, even part
    double odd_sum_residual = 0.0;
};

/// The beta = 1/q case: vanishing diagonal, L^2 block splitting into the two
/// base-q^2 Hermite operators, eigenvalue pairing, the (-1)^l sign relation
/// between psi(q^n) and psi(-q^n), and the even/odd split of the
/// orthogonality relation into base-q^2 N-extremal relations at alpha, alpha q.
inline BetaSplitReport beta_1q_split(double alpha, double q, long N = 20,
                                     double tol = default_tol) {
    QParams p{q, alpha, 1.0 / q};
    p.validate();
    BetaSplitReport rep;
    for (long l = -2 * N; l <= 2 * N; ++l)
        rep.max_abs_b = std::max(rep.max_abs_b, std::abs(coeff_b(l, p)));

    // L^2 blocks: (L^2)_{2j,2j} = a_{2j-1}^2 + a_{2j}^2, (L^2)_{2j,2j+2} = a_{2j} a_{2j+1}
    QParams pe{q * q, alpha, 0.0};
    QParams po{q * q, alpha * q, 0.0};
    for (long j = -N / 2; j <= N / 2; ++j) {
        const double de = ipow(coeff_a(2 * j - 1, p), 2L) + ipow(coeff_a(2 * j, p), 2L);
        const double oe = coeff_a(2 * j, p) * coeff_a(2 * j + 1, p);
        rep.even_block_residual = std::max(rep.even_block_residual,
                                           std::abs(de - coeff_b(j, pe)));
        rep.even_block_residual = std::max(rep.even_block_residual,
                                           std::abs(oe - coeff_a(j, pe)));
        const double dobl = ipow(coeff_a(2 * j, p), 2L) + ipow(coeff_a(2 * j + 1, p), 2L);
        const double oobl = coeff_a(2 * j + 1, p) * coeff_a(2 * j + 2, p);
        rep.odd_block_residual = std::max(rep.odd_block_residual,
                                          std::abs(dobl - coeff_b(j, po)));
        rep.odd_block_residual = std::max(rep.odd_block_residual,
                                          std::abs(oobl - coeff_a(j, po)));
    }

    // eigenvalue pairing of the truncation
    auto s = eig(truncate(p, N));
    const int dim = static_cast<int>(s.eigenvalues.size());
    for (int i = 0; i < 8 && i < dim / 2; ++i) {
        const double pos = s.eigenvalues[i];
        const double neg = s.eigenvalues[dim - 1 - i];
        rep.pairing_residual = std::max(rep.pairing_residual, std::abs(pos + neg));
    }

    // sign relation psi_l(q^n) = (-1)^l psi_l(-q^n)
    for (long n = 0; n <= 2; ++n) {
        for (long l = -2; l <= 3; ++l) {
            const cplx vp = psi(l, cplx{ipow(q, n), 0.0}, p, tol).value;
            const cplx vm = psi(l, cplx{-ipow(q, n), 0.0}, p, tol).value;
            rep.sign_relation_residual =
                std::max(rep.sign_relation_residual,
                         std::abs(vp - static_cast<double>(sign_pow(l)) * vm) /
                             std::max(1.0, std::abs(vp)));
        }
    }

    // even/odd split of the orthogonality sums
    const long L = measure_window(q, 1e-14);
    const double a2 = alpha * alpha;
    for (long n = 0; n <= 4; ++n) {
        for (long m = n; m <= 4; ++m) {
            double se = 0.0, so = 0.0;
            for (long l = -L; l <= L; ++l) {
                const double x = grid_point(alpha, q, l).x;
                const double w = ipow(a2, l) * (1.0 + a2 * ipow(q, 2 * l)) * ipow(q, l * (l - 1));
                const double t = w * sym_asc(n, x, 1.0 / q, q) * sym_asc(m, x, 1.0 / q, q);
                (l % 2 == 0 ? se : so) += t;
            }
            const double rhs_e = (n == m) ? hermite_norm(n, alpha, q * q, tol) : 0.0;
            const double rhs_o = (n == m) ? a2 * hermite_norm(n, alpha * q, q * q, tol) : 0.0;
            const double scale_e = std::sqrt(hermite_norm(n, alpha, q * q, tol) *
                                             hermite_norm(m, alpha, q * q, tol));
            const double scale_o = a2 * std::sqrt(hermite_norm(n, alpha * q, q * q, tol) *
                                                  hermite_norm(m, alpha * q, q * q, tol));
            rep.even_sum_residual = std::max(rep.even_sum_residual, std::abs(se - rhs_e) / scale_e);
            rep.odd_sum_residual = std::max(rep.odd_sum_residual, std::abs(so - rhs_o) / scale_o);
        }
    }
    return rep;
}

}  // namespace ascop
