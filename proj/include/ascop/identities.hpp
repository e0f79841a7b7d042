#pragma once

// Numerical verification of the contiguous relations, the generating
// function, the derived bilateral summation formulas, the Heine continuation
// step and theta quasi-periodicity.  Each check evaluates both sides
// independently and reports absolute and scaled residuals.

#include <map>
#include <string>

#include "ascop/measures.hpp"
#include "ascop/qseries.hpp"

namespace ascop {

struct IdentityReport {
    std::string identity_id;
    std::map<std::string, cplx> parameter_point;
    cplx lhs{0.0, 0.0};
    cplx rhs{0.0, 0.0};
    double abs_residual = 0.0;
    double rel_residual = 0.0;
};

namespace detail {
inline IdentityReport finish_report(std::string id, std::map<std::string, cplx> params, cplx lhs,
                                    cplx rhs, double scale_override = 0.0) {
    IdentityReport r;
    r.identity_id = std::move(id);
    r.parameter_point = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    const double scale = scale_override > 0.0
                             ? scale_override
                             : std::max({std::abs(lhs), std::abs(rhs), 1.0});
    r.rel_residual = r.abs_residual / scale;
    return r;
}
}  // namespace detail

/// Three-term contiguous relation among 2_phi_1(a q^e, b q^e; c q^(2e); q, z),
/// e = -1, 0, +1.
inline IdentityReport contiguous_3term(cplx a, cplx b, cplx c, cplx z, double q,
                                       double tol = default_tol) {
    auto f = [&](cplx aa, cplx bb, cplx cc) {
        return phi_series(make_phi_spec({aa, bb}, {cc}, q), z, tol).value;
    };
    const cplx mid = (c - a) * (c - b) / ((1.0 - c) * (q - c)) * z +
                     (q - a) * (q - b) / ((q * q - c) * (q - c)) * z * q + (1.0 - z);
    const cplx lead = (c - a) * (c - b) * (1.0 - a) * (1.0 - b) /
                      ((1.0 - c) * (1.0 - c) * (1.0 - q * c) * (q - c)) * z * z;
    const cplx lhs = f(a / q, b / q, c / (q * q)) + lead * f(a * q, b * q, c * q * q);
    const cplx rhs = mid * f(a, b, c);
    return detail::finish_report("contiguous_3term",
                                 {{"a", a}, {"b", b}, {"c", c}, {"z", z}, {"q", q}}, lhs, rhs);
}

/// Contiguous relation with fixed lower parameter -q and shifts a q^{+-1}, b q^{-+1}.
inline IdentityReport contiguous_shift(cplx a, cplx b, cplx z, double q,
                                       double tol = default_tol) {
    if (a == b || b == a * q || a == b * q)
        throw domain_error("contiguous_shift: parameters on an excluded line");
    auto f = [&](cplx aa, cplx bb) {
        return phi_series(make_phi_spec({aa, bb}, {cplx{-q, 0.0}}, q), z, tol).value;
    };
    const cplx lhs = (q * (1.0 + q) * (a * b - q) / ((a * q - b) * (a - b * q)) + z) * f(a, b);
    const cplx rhs = q * (1.0 - a) * (b + q) / ((a - b) * (b - a * q)) * f(a * q, b / q) +
                     q * (1.0 - b) * (a + q) / ((b - a) * (a - b * q)) * f(a / q, b * q);
    return detail::finish_report("contiguous_shift", {{"a", a}, {"b", b}, {"z", z}, {"q", q}},
                                 lhs, rhs);
}

/// Generating function sum_n h_n^(beta)(sinh y) q^binom(n,2) t^n/(q;q)_n
/// against the closed product (t e^{-y}, -t e^{y}; q)_inf / (-t^2 beta; q^2)_inf.
inline IdentityReport generating_function(cplx t, double y, double beta, double q, long n_max,
                                          double tol = default_tol) {
    detail::check_q(q);
    if (beta < 0.0) throw domain_error("generating_function: beta must be >= 0");
    if (beta > 0.0 && std::abs(t) >= 1.0 / std::sqrt(beta))
        throw domain_error("generating_function: requires |t| < 1/sqrt(beta)");
    const double x = std::sinh(y);
    cplx lhs{0.0, 0.0};
    cplx coef{1.0, 0.0};  // q^binom(n,2) t^n/(q;q)_n
    for (long n = 0; n <= n_max; ++n) {
        lhs += sym_asc(n, x, beta, q) * coef;
        coef *= ipow(q, n) * t / (1.0 - ipow(q, n + 1));
    }
    const cplx rhs = qpoch_inf(t * std::exp(-y), q, tol).value *
                     qpoch_inf(-t * std::exp(y), q, tol).value /
                     qpoch_inf(-t * t * beta, q * q, tol).value;
    return detail::finish_report("generating_function",
                                 {{"t", t}, {"y", y}, {"beta", beta}, {"q", q}}, lhs, rhs);
}

/// 4-parameter specialization of Bailey's 6_psi_6 summation: bilateral sum
/// against the closed product quotient.
inline IdentityReport bailey_special(double alpha, double beta, cplx t1, cplx t2, double q,
                                     double tol = default_tol) {
    detail::check_q(q);
    if (beta <= 0.0) throw domain_error("bailey_special: beta must be positive");
    const double sb = std::sqrt(beta);
    const cplx ia{0.0, alpha};
    auto spec = make_phi_spec({ia * q, -ia * q, ia / sb, -ia / sb, -alpha * q / t1, -alpha * q / t2},
                              {ia, -ia, ia * sb * q, -ia * sb * q, t1 * alpha, t2 * alpha}, q);
    const cplx lhs = bilateral_psi(spec, t1 * t2 * beta / q, tol).value;
    const cplx num = qpoch_inf_many({cplx{0.0, 1.0} * t1 * sb, cplx{0.0, -1.0} * t1 * sb,
                                     cplx{0.0, 1.0} * t2 * sb, cplx{0.0, -1.0} * t2 * sb,
                                     -t1 * t2 / q, cplx{-alpha * alpha * q, 0.0},
                                     cplx{-q / (alpha * alpha), 0.0}, cplx{-beta * q, 0.0},
                                     cplx{q, 0.0}},
                                    q, tol);
    const cplx den = qpoch_inf_many({t1 * alpha, t2 * alpha, -t1 / alpha, -t2 / alpha,
                                     t1 * t2 * beta / q, ia * sb * q, -ia * sb * q,
                                     cplx{0.0, sb * q / alpha}, cplx{0.0, -sb * q / alpha}},
                                    q, tol);
    return detail::finish_report(
        "bailey_6psi6",
        {{"alpha", alpha}, {"beta", beta}, {"t1", t1}, {"t2", t2}, {"q", q}}, lhs, num / den);
}

/// 4_psi_4 zero-sum special case; residual scaled by sum of |terms|.
inline IdentityReport psi4_special(double alpha, cplx t1, cplx t2, double q,
                                   double tol = default_tol) {
    detail::check_q(q);
    const cplx ia{0.0, alpha};
    auto spec = make_phi_spec({ia * q, -ia * q, -alpha * q / t1, -alpha * q / t2},
                              {ia, -ia, alpha * t1, alpha * t2}, q);
    double abs_sum = 1.0;
    const cplx lhs = bilateral_psi(spec, -t1 * t2 / (q * q), tol, 10000, &abs_sum).value;
    return detail::finish_report("mixed_4psi4",
                                 {{"alpha", alpha}, {"t1", t1}, {"t2", t2}, {"q", q}}, lhs,
                                 cplx{0.0, 0.0}, abs_sum);
}

/// End-to-end reversal: the generating function applied twice against
/// lambda_alpha^(beta) (double sum truncated at n_max) must reproduce the
/// 6_psi_6 bilateral value up to the closed connecting prefactor.
inline IdentityReport summation_from_orthogonality(const QParams& p, double t1, double t2,
                                                   long n_max, double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("summation_from_orthogonality: beta must be positive");
    if (std::max(std::abs(t1), std::abs(t2)) >= 1.0 / std::sqrt(p.beta))
        throw domain_error("summation_from_orthogonality: |t| must be < 1/sqrt(beta)");
    const double q = p.q;
    const long L = measure_window(q, 1e-14);
    auto gen_partial = [&](double t, long l) {
        const double x = grid_point(p.alpha, q, l).x;
        double s = 0.0, coef = 1.0;
        for (long n = 0; n <= n_max; ++n) {
            s += sym_asc(n, x, p.beta, q) * coef;
            coef *= ipow(q, n) * t / (1.0 - ipow(q, n + 1));
        }
        return s;
    };
    double ds = 0.0;
    for (long l = -L; l <= L; ++l)
        ds += measure_weight(l, p) * gen_partial(t1, l) * gen_partial(t2, l);

    // diagonal collapse of the right side: total_mass * 1_phi_0(-1/beta;;q,beta t1 t2/q)
    const double diag = closed_total_mass(p, tol) *
                        qpoch_inf(-t1 * t2 / q, q, tol).value.real() /
                        qpoch_inf(p.beta * t1 * t2 / q, q, tol).value.real();
    if (t1 == 0.0 || t2 == 0.0) {
        // the bilateral series degenerates (a numerator parameter -alpha q/t
        // leaves every bounded region); only the mass identity remains
        return detail::finish_report(
            "summation_from_orthogonality",
            {{"alpha", p.alpha}, {"beta", p.beta}, {"t1", t1}, {"t2", t2}, {"q", q}}, ds, diag);
    }
    // reconstructed 6_psi_6 vs the bilateral evaluation
    auto six = bailey_special(p.alpha, p.beta, t1, t2, q, tol);
    const cplx kappa = diag / six.rhs;  // connecting prefactor, from the closed sides
    return detail::finish_report(
        "summation_from_orthogonality",
        {{"alpha", p.alpha}, {"beta", p.beta}, {"t1", t1}, {"t2", t2}, {"q", q}},
        ds, kappa * six.lhs);
}

/// Mixed-route version: the alternating weight against h^(beta), h^(1/beta q^2)
/// generating sums vanishes (the 4_psi_4 degeneration).
inline IdentityReport summation_from_mixed_orthogonality(const QParams& p, double t1, double t2,
                                                         long n_max, double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0)
        throw domain_error("summation_from_mixed_orthogonality: beta must be positive");
    const double q = p.q, a2 = p.alpha * p.alpha;
    const double bq2 = 1.0 / (p.beta * q * q);
    if (std::abs(t1) >= 1.0 / std::sqrt(p.beta) || std::abs(t2) >= 1.0 / std::sqrt(bq2))
        throw domain_error(
            "summation_from_mixed_orthogonality: t outside the generating-function radius");
    const long L = measure_window(q, std::min(tol, 1e-14));
    auto gen_partial = [&](double t, long l, double beta) {
        const double x = grid_point(p.alpha, q, l).x;
        double s = 0.0, coef = 1.0;
        for (long n = 0; n <= n_max; ++n) {
            s += sym_asc(n, x, beta, q) * coef;
            coef *= ipow(q, n) * t / (1.0 - ipow(q, n + 1));
        }
        return s;
    };
    double s = 0.0, sa = 0.0;
    for (long l = -L; l <= L; ++l) {
        const double w = sign_pow(l) * ipow(a2, l) * (1.0 + a2 * ipow(q, 2 * l)) *
                         ipow(q, l * (l - 1));
        const double t = w * gen_partial(t1, l, p.beta) * gen_partial(t2, l, bq2);
        s += t;
        sa += std::abs(t);
    }
    return detail::finish_report(
        "summation_from_mixed_orthogonality",
        {{"alpha", p.alpha}, {"beta", p.beta}, {"t1", t1}, {"t2", t2}, {"q", q}}, s,
        cplx{0.0, 0.0}, sa);
}

/// One Heine transformation step, as used for the analytic continuation of
/// psi: both sides evaluated for |z| > 1 and alpha sqrt(beta) q^(l+1) < 1.
inline IdentityReport heine_continuation(long l, cplx z, const QParams& p,
                                         double tol = default_tol) {
    p.validate();
    if (p.beta <= 0.0) throw domain_error("heine_continuation: beta must be positive");
    const double q = p.q;
    const double sb = std::sqrt(p.beta);
    const cplx A{0.0, p.alpha * sb * ipow(q, l + 1)};
    const double c = -p.alpha * p.alpha * ipow(q, 2 * l + 1);
    const cplx lhs = qpoch_inf(1.0 / z, q, tol).value *
                     phi_series(make_phi_spec({A, -A}, {cplx{c, 0.0}}, q), 1.0 / z, tol).value;
    const cplx rhs = qpoch_inf(-A, q, tol).value * qpoch_inf(A / z, q, tol).value /
                     qpoch_inf(cplx{c, 0.0}, q, tol).value *
                     phi_series(make_phi_spec({1.0 / z, cplx{0.0, -p.alpha * ipow(q, l) / sb}},
                                              {A / z}, q),
                                -A, tol)
                         .value;
    return detail::finish_report("heine_continuation",
                                 {{"l", static_cast<double>(l)},
                                  {"z", z},
                                  {"alpha", p.alpha},
                                  {"beta", p.beta},
                                  {"q", q}},
                                 lhs, rhs);
}

/// theta(z q^l) = (-z)^(-l) q^(-binom(l,2)) theta(z).
inline IdentityReport theta_quasiperiodicity(cplx z, long l, double q, double tol = default_tol) {
    const cplx lhs = theta(z * ipow(q, l), q, tol);
    const cplx rhs = ipow(-z, -l) * ipow(q, -(l * (l - 1)) / 2) * theta(z, q, tol);
    return detail::finish_report("theta_quasiperiodicity",
                                 {{"z", z}, {"l", static_cast<double>(l)}, {"q", q}}, lhs, rhs);
}

}  // namespace ascop
