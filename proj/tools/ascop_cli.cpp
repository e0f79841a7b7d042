// Command-line driver: spectra of truncations of L(alpha,beta), discrete
// orthogonality measures, and named verification suites with JSON/CSV
// artifacts.  Exit codes: 0 success, 1 verification/solver failure,
// 2 usage or config errors.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ascop/identities.hpp"
#include "ascop/io.hpp"
#include "ascop/jacobi_operator.hpp"
#include "ascop/measures.hpp"

namespace {

constexpr const char* tool_version = "1.0.0";

struct RunConfig {
    double q = 0.5;
    double alpha = 1.0;
    double beta = 0.25;
    double tol = ascop::default_tol;
    std::string half_width = "auto";
    std::string format = "json";
    std::string output;
    unsigned seed = 12345;

    ascop::QParams params() const {
        ascop::QParams p{q, alpha, beta};
        p.validate();
        return p;
    }
    long resolve_half_width() const {
        if (half_width == "auto") return ascop::auto_half_width(params(), 1e-14);
        const long n = std::stol(half_width);
        if (n < 1) throw ascop::domain_error("half-width must be >= 1 or 'auto'");
        return n;
    }
};

ascop::JsonValue meta_block(const RunConfig& cfg, long resolved_half_width) {
    using ascop::JsonValue;
    JsonValue meta = JsonValue::object();
    meta.add("q", JsonValue::number(cfg.q));
    meta.add("alpha", JsonValue::number(cfg.alpha));
    meta.add("beta", JsonValue::number(cfg.beta));
    meta.add("tol", JsonValue::number(cfg.tol));
    meta.add("half_width", JsonValue::integer(resolved_half_width));
    meta.add("seed", JsonValue::integer(cfg.seed));
    meta.add("tool_version", JsonValue::string(tool_version));
    return meta;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty())
        std::cout << text;
    else
        ascop::write_file(cfg.output, text);
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& cfg, long levels) {
    using ascop::JsonValue;
    const ascop::QParams p = cfg.params();
    const long N = cfg.resolve_half_width();
    auto s = ascop::eig(ascop::truncate(p, N));
    const int dim = static_cast<int>(s.eigenvalues.size());

    struct Row {
        long level;
        int branch;  // +1 / -1
        double predicted, computed, deviation;
    };
    std::vector<Row> rows;
    for (long n = 0; n < levels && n < dim; ++n) {
        const double pred = ascop::ipow(p.q, n);
        rows.push_back({n, +1, pred, s.eigenvalues[n], s.eigenvalues[n] - pred});
    }
    if (p.beta > 0.0) {
        for (long n = 0; n < levels && n < dim; ++n) {
            const double pred = -p.beta * ascop::ipow(p.q, n + 1);
            const double got = s.eigenvalues[dim - 1 - n];
            rows.push_back({n, -1, pred, got, got - pred});
        }
    }

    if (cfg.format == "csv") {
        ascop::CsvWriter csv;
        csv.header({"level", "branch", "predicted", "computed", "deviation"});
        for (const auto& r : rows)
            csv.row_strings({std::to_string(r.level), std::to_string(r.branch),
                             ascop::format_double(r.predicted), ascop::format_double(r.computed),
                             ascop::format_double(r.deviation)});
        emit(cfg, csv.out);
        return 0;
    }
    JsonValue data = JsonValue::array();
    for (const auto& r : rows) {
        JsonValue row = JsonValue::object();
        row.add("level", JsonValue::integer(r.level));
        row.add("branch", JsonValue::integer(r.branch));
        row.add("predicted", JsonValue::number(r.predicted));
        row.add("computed", JsonValue::number(r.computed));
        row.add("deviation", JsonValue::number(r.deviation));
        data.push(std::move(row));
    }
    JsonValue doc = JsonValue::object();
    doc.add("meta", meta_block(cfg, N));
    doc.add("data", std::move(data));
    emit(cfg, doc.str());
    return 0;
}

// ----------------------------------------------------------------- measure

int cmd_measure(const RunConfig& cfg, long gram_degree) {
    using ascop::JsonValue;
    const ascop::QParams p = cfg.params();
    auto m = ascop::build_measure(p, std::min(cfg.tol, 1e-14));
    const long L = m.window();

    if (cfg.format == "csv") {
        ascop::CsvWriter csv;
        csv.header({"l", "x", "weight", "mass"});
        for (long l = -L; l <= L; ++l)
            csv.row_strings({std::to_string(l), ascop::format_double(m.support[l + L].x),
                             ascop::format_double(m.weights[l + L]),
                             ascop::format_double(m.weights[l + L] / m.total_mass)});
        emit(cfg, csv.out);
        return 0;
    }

    JsonValue data = JsonValue::array();
    for (long l = -L; l <= L; ++l) {
        JsonValue row = JsonValue::object();
        row.add("l", JsonValue::integer(l));
        row.add("x", JsonValue::number(m.support[l + L].x));
        row.add("weight", JsonValue::number(m.weights[l + L]));
        row.add("mass", JsonValue::number(m.weights[l + L] / m.total_mass));
        data.push(std::move(row));
    }
    JsonValue doc = JsonValue::object();
    JsonValue meta = meta_block(cfg, L);
    meta.add("total_mass", JsonValue::number(m.total_mass));
    doc.add("meta", std::move(meta));
    doc.add("data", std::move(data));
    if (gram_degree >= 0) {
        JsonValue gram = JsonValue::array();
        for (long n = 0; n <= gram_degree; ++n) {
            for (long mm = 0; mm <= gram_degree; ++mm) {
                double sum = 0.0;
                for (long l = -L; l <= L; ++l) {
                    const double x = m.support[l + L].x;
                    sum += m.weights[l + L] * ascop::sym_asc(n, x, p.beta, p.q) *
                           ascop::sym_asc(mm, x, p.beta, p.q);
                }
                JsonValue row = JsonValue::object();
                row.add("n", JsonValue::integer(n));
                row.add("m", JsonValue::integer(mm));
                row.add("value", JsonValue::number(sum));
                row.add("scaled", JsonValue::number(
                                      sum / std::sqrt(ascop::orthogonality_rhs(n, p) *
                                                      ascop::orthogonality_rhs(mm, p))));
                gram.push(std::move(row));
            }
        }
        doc.add("gram", std::move(gram));
    }
    emit(cfg, doc.str());
    return 0;
}

// ------------------------------------------------------------------ verify

struct SuiteResult {
    std::vector<ascop::IdentityReport> reports;
    double threshold = 1e-9;
    // residual used for pass/fail; defaults to rel_residual
};

// Independent parameter points evaluated across jobs threads; reports land
// in their precomputed slots, so the artifact is identical for any job count.
template <typename F>
void parallel_points(int count, int jobs, F eval_point) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) eval_point(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) eval_point(i);
        });
    for (auto& th : pool) th.join();
}

SuiteResult suite_wronskian(const RunConfig& cfg, int jobs) {
    SuiteResult out;
    out.threshold = 1e-10;
    const ascop::QParams p = cfg.params();
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> mag(1.1, 3.0), ph(0.15, M_PI - 0.15);
    std::vector<ascop::cplx> zs;
    for (int i = 0; i < 20; ++i) {
        const double r = mag(rng), t = ph(rng);
        zs.push_back(std::polar(r, t));
    }
    out.reports.resize(7 * zs.size());
    parallel_points(static_cast<int>(zs.size()), jobs, [&](int i) {
        const ascop::cplx z = zs[i];
        const ascop::cplx closed = ascop::wronskian_closed(z, p.q, p.beta, cfg.tol);
        ascop::cplx w0{0, 0};
        for (long l = -3; l <= 3; ++l) {
            const ascop::cplx w = ascop::wronskian_numeric(l, z, p, cfg.tol);
            if (l == -3) w0 = w;
            ascop::IdentityReport rep;
            rep.identity_id = l == -3 ? "wronskian_closed" : "wronskian_l_independence";
            rep.parameter_point = {{"z", z}, {"l", static_cast<double>(l)}};
            rep.lhs = w;
            rep.rhs = l == -3 ? closed : w0;
            rep.abs_residual = std::abs(rep.lhs - rep.rhs);
            rep.rel_residual = rep.abs_residual / std::abs(closed);
            out.reports[7 * i + (l + 3)] = rep;
        }
    });
    return out;
}

SuiteResult suite_orthogonality(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-10;
    const ascop::QParams p = cfg.params();
    for (int pass = 0; pass < 2; ++pass) {
        ascop::QParams pp = p;
        if (pass == 1) {
            if (p.beta == 0.0) continue;
            pp = p.with_beta(1.0 / (p.beta * p.q * p.q));
        }
        for (long n = 0; n <= 8; ++n)
            for (long m = n; m <= 8; ++m) {
                ascop::IdentityReport rep;
                rep.identity_id = pass == 0 ? "orthogonality" : "orthogonality_conjugate";
                rep.parameter_point = {{"n", static_cast<double>(n)},
                                       {"m", static_cast<double>(m)}};
                rep.rel_residual = ascop::check_orthogonality(n, m, pp, 1e-14);
                rep.abs_residual = rep.rel_residual;
                out.reports.push_back(rep);
            }
    }
    return out;
}

SuiteResult suite_mixed(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-10;
    const ascop::QParams p = cfg.params();
    for (long n = 0; n <= 6; ++n)
        for (long m = 0; m <= 6; ++m) {
            ascop::IdentityReport rep;
            rep.identity_id = "mixed_orthogonality";
            rep.parameter_point = {{"n", static_cast<double>(n)}, {"m", static_cast<double>(m)}};
            rep.rel_residual = ascop::check_mixed_orthogonality(n, m, p, 1e-14);
            rep.abs_residual = rep.rel_residual;
            out.reports.push_back(rep);
        }
    for (long k = 0; k <= 6; ++k) {
        ascop::IdentityReport rep;
        rep.identity_id = "mixed_moment";
        rep.parameter_point = {{"k", static_cast<double>(k)}};
        rep.rel_residual = ascop::mixed_moment_residual(k, p.alpha, p.q, 1e-14);
        rep.abs_residual = rep.rel_residual;
        out.reports.push_back(rep);
    }
    return out;
}

SuiteResult suite_basis(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-9;
    const ascop::QParams p = cfg.params();
    if (p.beta <= 0.0) throw ascop::domain_error("basis suite needs beta > 0");
    auto m = ascop::build_measure(p, 1e-14);
    const long L = m.window();
    // 14 basis functions: h_0..h_6 then complement_0..complement_6
    auto value = [&](long idx, long l) {
        const double x = m.support[l + L].x;
        return idx <= 6 ? ascop::sym_asc(idx, x, p.beta, p.q)
                        : ascop::complement_grid(idx - 7, l, p);
    };
    std::vector<double> diag(14, 0.0);
    for (long i = 0; i < 14; ++i)
        for (long l = -L; l <= L; ++l)
            diag[i] += m.weights[l + L] * value(i, l) * value(i, l);
    for (long i = 0; i < 14; ++i) {
        for (long j = i; j < 14; ++j) {
            double s = 0.0;
            for (long l = -L; l <= L; ++l) s += m.weights[l + L] * value(i, l) * value(j, l);
            ascop::IdentityReport rep;
            rep.identity_id = i == j ? "basis_gram_diagonal" : "basis_gram_offdiagonal";
            rep.parameter_point = {{"i", static_cast<double>(i)}, {"j", static_cast<double>(j)}};
            rep.lhs = s;
            rep.rhs = i == j ? s : 0.0;
            rep.abs_residual = i == j ? 0.0 : std::abs(s);
            rep.rel_residual = i == j ? (s > 0.0 ? 0.0 : 1.0)  // diagonal must be positive
                                      : std::abs(s) / std::sqrt(diag[i] * diag[j]);
            out.reports.push_back(rep);
        }
    }
    return out;
}

SuiteResult suite_dual(const RunConfig& cfg, long n_max) {
    SuiteResult out;
    out.threshold = 1e-9;
    const ascop::QParams p = cfg.params();
    for (long k = -2; k <= 2; ++k)
        for (long l = k; l <= 2; ++l) {
            auto d = ascop::dual_orthogonality(k, l, p, n_max, cfg.tol);
            ascop::IdentityReport rep;
            rep.identity_id = "dual_orthogonality";
            rep.parameter_point = {{"k", static_cast<double>(k)},
                                   {"l", static_cast<double>(l)},
                                   {"n_max", static_cast<double>(n_max)}};
            rep.lhs = d.residual + (k == l ? 1.0 : 0.0);
            rep.rhs = k == l ? 1.0 : 0.0;
            rep.abs_residual = std::abs(d.residual);
            rep.rel_residual = std::abs(d.residual);
            out.reports.push_back(rep);
        }
    return out;
}

SuiteResult suite_contiguous(const RunConfig& cfg, int jobs) {
    SuiteResult out;
    out.threshold = 1e-9;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.1, 0.7);
    struct Point {
        double q;
        ascop::cplx a, b, c, z;
    };
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) {
        Point pt;
        pt.q = 0.35 + 0.4 * uni(rng);
        pt.a = {uni(rng), 0.3 * uni(rng)};
        pt.b = {uni(rng), 0};
        pt.c = {uni(rng) + 0.2, 0};
        pt.z = {0.5 * uni(rng), 0.3 * uni(rng)};
        pts.push_back(pt);
    }
    out.reports.resize(2 * pts.size());
    parallel_points(static_cast<int>(pts.size()), jobs, [&](int i) {
        const Point& pt = pts[i];
        out.reports[2 * i] = ascop::contiguous_3term(pt.a, pt.b, pt.c, pt.z, pt.q, cfg.tol);
        out.reports[2 * i + 1] = ascop::contiguous_shift(pt.a, pt.b, pt.z, pt.q, cfg.tol);
    });
    return out;
}

SuiteResult suite_bailey(const RunConfig& cfg, int jobs) {
    SuiteResult out;
    out.threshold = 1e-9;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    struct Point {
        double q, alpha, beta, t1, t2;
    };
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) {
        Point pt;
        pt.q = 0.4 + 0.3 * uni(rng);
        pt.alpha = 0.7 + 0.3 * uni(rng);
        pt.beta = 0.3 + 0.9 * uni(rng);
        pt.t1 = 0.1 + 0.3 * uni(rng);
        pt.t2 = 0.1 + 0.3 * uni(rng);
        pts.push_back(pt);
    }
    out.reports.resize(pts.size());
    parallel_points(static_cast<int>(pts.size()), jobs, [&](int i) {
        const Point& pt = pts[i];
        out.reports[i] =
            ascop::bailey_special(pt.alpha, pt.beta, {pt.t1, 0}, {pt.t2, 0}, pt.q, cfg.tol);
    });
    return out;
}

SuiteResult suite_psi4(const RunConfig& cfg, int jobs) {
    SuiteResult out;
    out.threshold = 1e-10;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    struct Point {
        double q, alpha, t1, t2;
    };
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) {
        Point pt;
        pt.q = 0.4 + 0.35 * uni(rng);
        pt.alpha = 0.7 + 0.3 * uni(rng);
        pt.t1 = 0.1 + 0.35 * uni(rng);
        pt.t2 = 0.1 + 0.35 * uni(rng);
        pts.push_back(pt);
    }
    out.reports.resize(pts.size());
    parallel_points(static_cast<int>(pts.size()), jobs, [&](int i) {
        const Point& pt = pts[i];
        out.reports[i] = ascop::psi4_special(pt.alpha, {pt.t1, 0}, {pt.t2, 0}, pt.q, cfg.tol);
    });
    return out;
}

SuiteResult suite_genfun(const RunConfig& cfg, int jobs) {
    SuiteResult out;
    out.threshold = 1e-9;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    struct Point {
        double q, beta, t, y;
    };
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) {
        Point pt;
        pt.q = 0.4 + 0.3 * uni(rng);
        pt.beta = i == 0 ? 0.0 : 1.2 * uni(rng);
        pt.t = 0.1 + 0.4 * uni(rng);
        pt.y = 1.6 * uni(rng) - 0.8;
        pts.push_back(pt);
    }
    out.reports.resize(pts.size());
    parallel_points(static_cast<int>(pts.size()), jobs, [&](int i) {
        const Point& pt = pts[i];
        out.reports[i] = ascop::generating_function({pt.t, 0}, pt.y, pt.beta, pt.q, 40, cfg.tol);
    });
    return out;
}

SuiteResult suite_symmetries(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-13;
    const ascop::QParams p = cfg.params();
    const long N = 20;  // 41x41
    auto t = ascop::truncate(p, N);
    auto push = [&](const char* id, double residual) {
        ascop::IdentityReport rep;
        rep.identity_id = id;
        rep.abs_residual = rep.rel_residual = residual;
        out.reports.push_back(rep);
    };
    if (p.beta > 0.0) {
        auto tu = ascop::truncate(p.with_beta(1.0 / (p.beta * p.q * p.q)), N);
        double worst = 0.0;
        for (int i = 0; i < t.dim(); ++i)
            worst = std::max(worst, std::abs(-p.q * p.beta * tu.diag[i] - t.diag[i]));
        for (int i = 0; i + 1 < t.dim(); ++i)
            worst = std::max(worst, std::abs(-p.q * p.beta * tu.offdiag[i] + t.offdiag[i]));
        push("symmetry_U", worst);
    }
    auto tm = ascop::truncate(p.with_alpha(-p.alpha), N);
    double worst = 0.0;
    for (int i = 0; i < t.dim(); ++i)
        worst = std::max(worst, std::abs(tm.diag[i] - t.diag[i]));
    for (int i = 0; i + 1 < t.dim(); ++i)
        worst = std::max(worst, std::abs(tm.offdiag[i] + t.offdiag[i]));
    push("symmetry_U2", worst);
    auto tv = ascop::truncate(p.with_alpha(1.0 / p.alpha), N);
    worst = 0.0;
    const int dim = t.dim();
    for (int i = 0; i < dim; ++i)
        worst = std::max(worst, std::abs(tv.diag[i] - t.diag[dim - 1 - i]));
    for (int i = 0; i + 1 < dim; ++i)
        worst = std::max(worst, std::abs(tv.offdiag[i] - t.offdiag[dim - 2 - i]));
    push("symmetry_V", worst);
    return out;
}

SuiteResult suite_split_beta_1q(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-9;
    auto rep = ascop::beta_1q_split(cfg.alpha, cfg.q, 20, cfg.tol);
    auto push = [&](const char* id, double residual) {
        ascop::IdentityReport r;
        r.identity_id = id;
        r.abs_residual = r.rel_residual = residual;
        out.reports.push_back(r);
    };
    push("split_b_vanishes", rep.max_abs_b);
    push("split_even_block", rep.even_block_residual);
    push("split_odd_block", rep.odd_block_residual);
    push("split_pairing", rep.pairing_residual);
    push("split_sign_relation", rep.sign_relation_residual);
    push("split_even_sum", rep.even_sum_residual);
    push("split_odd_sum", rep.odd_sum_residual);
    return out;
}

SuiteResult suite_diffeq(const RunConfig& cfg) {
    SuiteResult out;
    out.threshold = 1e-9;
    const ascop::QParams p = cfg.params();
    for (long n : {0L, 2L, 3L, 6L}) {
        auto rep = ascop::verify_diffeq(n, p, 12);
        ascop::IdentityReport r;
        r.identity_id = "difference_equation";
        r.parameter_point = {{"n", static_cast<double>(n)}};
        r.abs_residual = rep.max_abs_residual;
        r.rel_residual = rep.max_scaled_residual;
        out.reports.push_back(r);
    }
    return out;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, double threshold_override,
               long n_max, int jobs) {
    using ascop::JsonValue;
    SuiteResult res;
    if (suite == "wronskian")
        res = suite_wronskian(cfg, jobs);
    else if (suite == "orthogonality")
        res = suite_orthogonality(cfg);
    else if (suite == "mixed")
        res = suite_mixed(cfg);
    else if (suite == "basis")
        res = suite_basis(cfg);
    else if (suite == "dual")
        res = suite_dual(cfg, n_max);
    else if (suite == "contiguous")
        res = suite_contiguous(cfg, jobs);
    else if (suite == "bailey")
        res = suite_bailey(cfg, jobs);
    else if (suite == "psi4")
        res = suite_psi4(cfg, jobs);
    else if (suite == "genfun")
        res = suite_genfun(cfg, jobs);
    else if (suite == "symmetries")
        res = suite_symmetries(cfg);
    else if (suite == "split-beta-1q")
        res = suite_split_beta_1q(cfg);
    else if (suite == "diffeq")
        res = suite_diffeq(cfg);
    else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    if (threshold_override > 0.0) res.threshold = threshold_override;

    bool all_pass = true;
    JsonValue data = JsonValue::array();
    for (const auto& rep : res.reports) {
        const bool pass = rep.rel_residual < res.threshold;
        all_pass = all_pass && pass;
        JsonValue row = JsonValue::object();
        row.add("identity", JsonValue::string(rep.identity_id));
        JsonValue pt = JsonValue::object();
        for (const auto& [k, v] : rep.parameter_point) {
            if (v.imag() == 0.0)
                pt.add(k, JsonValue::number(v.real()));
            else {
                JsonValue c = JsonValue::array();
                c.push(JsonValue::number(v.real()));
                c.push(JsonValue::number(v.imag()));
                pt.add(k, std::move(c));
            }
        }
        row.add("point", std::move(pt));
        row.add("abs_residual", JsonValue::number(rep.abs_residual));
        row.add("rel_residual", JsonValue::number(rep.rel_residual));
        row.add("threshold", JsonValue::number(res.threshold));
        row.add("pass", JsonValue::boolean(pass));
        data.push(std::move(row));
    }
    JsonValue doc = JsonValue::object();
    JsonValue meta = meta_block(cfg, 0);
    meta.add("suite", JsonValue::string(suite));
    doc.add("meta", std::move(meta));
    doc.add("data", std::move(data));
    emit(cfg, doc.str());
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral toolkit for the symmetric Al-Salam-Chihara difference operator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "optional key=value config file (flags win)");

    RunConfig cfg;
    if (const char* env = std::getenv("QSPEC_TOL")) cfg.tol = std::atof(env);

    // parameters live on the top-level app so plain key=value config files
    // apply to every subcommand; fallthrough lets them be written after the
    // subcommand name as usual
    app.add_option("--q", cfg.q, "base q in (0,1)");
    app.add_option("--alpha", cfg.alpha, "grid parameter alpha (nonzero)");
    app.add_option("--beta", cfg.beta, "family parameter beta >= 0");
    app.add_option("--tol", cfg.tol, "series/product tolerance");
    app.add_option("--half-width", cfg.half_width, "truncation half-width or 'auto'");
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output, "artifact path (stdout when omitted)");
    app.add_option("--seed", cfg.seed, "seed for sampled parameter boxes");

    long levels = 8;
    auto* sp = app.add_subcommand("spectrum", "eigenvalues of a truncation vs the closed spectrum");
    sp->fallthrough();
    sp->add_option("--levels", levels, "levels per branch");

    long gram_degree = -1;
    auto* me = app.add_subcommand("measure", "discrete orthogonality measure on the grid");
    me->fallthrough();
    me->add_option("--gram-degree", gram_degree, "also emit the Gram matrix up to this degree");

    std::string suite;
    double threshold_override = 0.0;
    long n_max = 25;
    int jobs = 1;
    auto* ve = app.add_subcommand("verify", "run a named verification suite");
    ve->fallthrough();
    ve->add_option("suite", suite,
                   "wronskian | orthogonality | mixed | basis | dual | contiguous | bailey | "
                   "psi4 | genfun | symmetries | split-beta-1q | diffeq")
        ->required();
    ve->add_option("--threshold", threshold_override, "override the suite pass threshold");
    ve->add_option("--nmax", n_max, "eigenvalue levels for the dual suite");
    ve->add_option("--jobs", jobs, "evaluate independent sampled points on this many threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(cfg, levels);
        if (me->parsed()) return cmd_measure(cfg, gram_degree);
        if (ve->parsed()) return cmd_verify(cfg, suite, threshold_override, n_max, jobs);
    } catch (const ascop::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
