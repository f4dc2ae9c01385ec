// Acceptance suite: end-to-end checks of the benchmark problems, solver
// behavior, and structural guarantees. Prints one PASS/FAIL line per
// criterion and exits nonzero if any of them fail.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ebfd/harness.hpp"
#include "ebfd/interpolation.hpp"
#include "ebfd/problems.hpp"
#include "ebfd/spd.hpp"
#include "ebfd/timestepping.hpp"

using namespace ebfd;

namespace {

int n_fail = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d: %s  %-34s %s\n", id, pass ? "PASS" : "FAIL",
                what.c_str(), detail.c_str());
    if (!pass) ++n_fail;
}

// Least-squares slope of log(err) against log(h) over a refinement sweep.
double fit_rate(const std::vector<ResultRow>& rows, bool linf) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const ResultRow& r : rows) {
        double x = std::log(r.h), y = std::log(linf ? r.e_linf : r.e_l2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double fit_rate_grad(const std::vector<ResultRow>& rows, bool linf) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const ResultRow& r : rows) {
        double x = std::log(r.h), y = std::log(linf ? r.grad_linf : r.grad_l2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

bool in_band(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// --- criterion 1: glass convergence, both strategies -----------------------

void criterion_1() {
    bool pass = true;
    std::string detail;
    for (Strategy s : {Strategy::Mixed, Strategy::Rbf}) {
        auto rows = poisson_convergence(make_problem("glass"), {50, 100, 200}, s,
                                        Cycle::W);
        double r2 = fit_rate(rows, false), ri = fit_rate(rows, true);
        double g2 = fit_rate_grad(rows, false), gi = fit_rate_grad(rows, true);
        pass = pass && in_band(r2, 1.8, 2.2) && in_band(ri, 1.8, 2.2) && g2 >= 1.5 &&
               gi >= 0.8;
        detail += fmt(s == Strategy::Mixed ? "mixed: l2 %.2f linf %.2f g2 %.2f gi %.2f  "
                                           : "rbf: l2 %.2f linf %.2f g2 %.2f gi %.2f",
                      r2, ri, g2, gi);
        for (const ResultRow& r : rows) pass = pass && r.error.empty();
    }
    report(1, pass, "glass rates (both strategies)", detail);
}

// --- criterion 2: largest scaled eigenvalue approaches 8 --------------------

void criterion_2() {
    BenchmarkProblem glass = make_problem("glass");
    std::vector<double> lam;
    for (int n : {50, 100, 200})
        lam.push_back(run_eig(glass, n, Strategy::Mixed, false).lambda_max_scaled);
    bool mono = std::abs(lam[1] - 8.0) < std::abs(lam[0] - 8.0) &&
                std::abs(lam[2] - 8.0) < std::abs(lam[1] - 8.0);
    bool close = std::abs(lam[2] - 8.0) / 8.0 < 0.05;
    report(2, mono && close, "glass extreme eigenvalue -> 8",
           fmt("lambda/|beta| = %.3f %.3f %.4f", lam[0], lam[1], lam[2]));
}

// --- criterion 3: solver iteration scaling ----------------------------------

void criterion_3() {
    BenchmarkProblem glass = make_problem("glass");
    std::vector<int> ns{50, 100, 200, 320};
    auto w = poisson_convergence(glass, ns, Strategy::Mixed, Cycle::W);
    bool w_ok = true;
    std::string detail = "W:";
    for (const ResultRow& r : w) {
        w_ok = w_ok && r.iters >= 6 && r.iters <= 10;
        detail += fmt(" %.0f", r.iters);
    }
    auto v = poisson_convergence(glass, ns, Strategy::Mixed, Cycle::V);
    // growth exponent: log(iters) against log(DOF)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    detail += "  V:";
    for (const ResultRow& r : v) {
        double x = std::log(static_cast<double>(r.n) * r.n), y = std::log(r.iters);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        detail += fmt(" %.0f", r.iters);
    }
    int m = static_cast<int>(v.size());
    double expo = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    detail += fmt("  exponent %.3f", expo);
    report(3, w_ok && expo <= 0.25, "glass iteration scaling", detail);
}

// --- criterion 4: tilted square certification under rotation ----------------

void criterion_4() {
    auto rows = poisson_convergence(make_problem("tilted_square"), {50, 100, 200, 320},
                                    Strategy::Mixed, Cycle::W);
    bool pass = true;
    for (const ResultRow& r : rows)
        pass = pass && r.error.empty() && r.certified == "certified";
    double r2 = fit_rate(rows, false), ri = fit_rate(rows, true);
    pass = pass && in_band(r2, 1.8, 2.2) && in_band(ri, 1.8, 2.2);
    report(4, pass, "tilted square certified + rates",
           fmt("l2 %.2f linf %.2f, all rows certified", r2, ri));
}

// --- criterion 5: bone shape -------------------------------------------------

void criterion_5() {
    BenchmarkProblem bone = make_problem("bone");
    auto rows = poisson_convergence(bone, {50, 100, 200}, Strategy::Mixed, Cycle::W);
    double r2 = fit_rate(rows, false), ri = fit_rate(rows, true);
    bool pass = in_band(r2, 1.6, 2.0) && in_band(ri, 1.6, 2.1);
    std::string detail = fmt("l2 %.2f linf %.2f, eig:", r2, ri);
    for (int n : {50, 100, 200}) {
        double lam = run_eig(bone, n, Strategy::Mixed, false).lambda_max_scaled;
        pass = pass && lam < 24.0;
        detail += fmt(" %.2f", lam);
    }
    report(5, pass, "bone rates + spectrum bound", detail);
}

// --- criterion 6: heat equation ----------------------------------------------

void criterion_6() {
    auto rows = heat_convergence(make_problem("heat_disk"), {50, 100, 200},
                                 Strategy::Mixed, 0.5);
    double r2 = fit_rate(rows, false), ri = fit_rate(rows, true);
    bool pass = in_band(r2, 1.5, 2.5) && in_band(ri, 1.5, 2.5);
    std::string detail = fmt("l2 %.2f linf %.2f, its/step:", r2, ri);
    for (const ResultRow& r : rows) {
        pass = pass && r.iters <= 4.0 && r.error.empty();
        detail += fmt(" %.1f", r.iters);
    }
    report(6, pass, "heat disk rates + warm starts", detail);
}

// --- criteria 7 and 8: wave equation ------------------------------------------

void criterion_7() {
    BenchmarkProblem wave = make_problem("wave_disk");
    ResultRow a = run_wave(wave, 100, 0.0, 0.7, 10.2);  // h = 2.2e-2
    ResultRow b = run_wave(wave, 200, 0.0, 0.7, 10.2);  // h = 1.1e-2
    bool stable = a.error.empty() && b.error.empty();
    bool anchors = a.e_l2 > 3.6e-2 / 2.0 && a.e_l2 < 3.6e-2 * 2.0 &&
                   b.e_l2 > 9.2e-3 / 2.0 && b.e_l2 < 9.2e-3 * 2.0;
    double rate = std::log2(a.e_l2 / b.e_l2);
    report(7, stable && anchors && in_band(rate, 1.8, 2.2),
           "leapfrog wave anchors + rate",
           fmt("E(h=2.2e-2) %.3e E(1.1e-2) %.3e rate %.2f", a.e_l2, b.e_l2, rate));
}

void criterion_8() {
    BenchmarkProblem wave = make_problem("wave_disk");
    // unconditional stability: dt = 2h, far beyond the explicit limit
    bool bounded = true;
    std::string detail;
    for (double theta : {0.5, 0.25}) {
        ResultRow r = run_wave(wave, 100, theta, 2.0, 10.2);
        bounded = bounded && r.error.empty() && std::isfinite(r.e_linf) &&
                  r.e_linf < 10.0;
        detail += fmt("th=%.2f E %.2e  ", theta, r.e_linf);
    }
    // theta = 1/12 at dt = 0.85 h: second order on the two finest pairs
    std::vector<double> errs;
    for (int n : {200, 400, 800})
        errs.push_back(run_wave(wave, n, 1.0 / 12.0, 0.85, 10.2).e_l2);
    double r1 = std::log2(errs[0] / errs[1]);
    double r2 = std::log2(errs[1] / errs[2]);
    detail += fmt("th=1/12 rates %.2f %.2f", r1, r2);
    report(8, bounded && in_band(r1, 1.8, 2.2) && in_band(r2, 1.8, 2.2),
           "implicit wave schemes", detail);
}

// --- criterion 9: positive definiteness certification vs dense oracle ---------

void criterion_9() {
    int false_cert = 0, checked = 0;
    for (int n = 1; n <= 8; ++n)
        for (int ia = 1; ia <= 60; ++ia)
            for (int ib = 1; ib <= 60; ++ib) {
                double a = 0.05 * ia, b = 0.05 * ib;
                SegmentCertificate c = check_segment(n, a, b);
                // independent oracle: dense unpivoted elimination in long
                // double; the k-th leading minor is the product of the first
                // k pivots, so the matrix is positive definite exactly when
                // every pivot stays positive
                long double m[8][8] = {};
                for (int i = 0; i < n; ++i) {
                    m[i][i] = 2.0L;
                    if (i > 0) m[i][i - 1] = -1.0L;
                    if (i + 1 < n) m[i][i + 1] = -1.0L;
                }
                if (n == 1) {
                    m[0][0] = static_cast<long double>(a) + b - 2.0L;
                } else {
                    m[0][0] = a;
                    m[n - 1][n - 1] = b;
                }
                bool all_pos = true;
                for (int k = 0; k < n && all_pos; ++k) {
                    if (!(m[k][k] > 0.0L)) {
                        all_pos = false;
                        break;
                    }
                    for (int i = k + 1; i < n; ++i) {
                        long double f = m[i][k] / m[k][k];
                        for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
                    }
                }
                ++checked;
                if (c.spd && !all_pos) ++false_cert;
            }
    // recurrences relating consecutive segment sizes, to 1e-10 relative
    int rec_bad = 0;
    for (int n = 3; n <= 8; ++n)
        for (int ia = 1; ia <= 60; ++ia) {
            double a = 0.05 * ia;
            double ared = 2.0 - 1.0 / a;
            auto big = segment_minors(n, a, 1.0);
            auto small = segment_minors(n - 1, ared, 1.0);
            double lhs = big[n - 2], rhs = a * small[n - 3];
            if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(rhs))) ++rec_bad;
            for (int ib = 1; ib <= 60; ++ib) {
                double b = 0.05 * ib;
                double pl = segment_minors(n, a, b)[n - 1];
                double pr = a * segment_minors(n - 1, ared, b)[n - 2];
                if (std::abs(pl - pr) > 1e-10 * std::max(1.0, std::abs(pr))) ++rec_bad;
            }
        }
    report(9, false_cert == 0 && rec_bad == 0, "segment certification oracle",
           fmt("%d cases, %d false certifications, %d recurrence misses",
               static_cast<double>(checked), static_cast<double>(false_cert),
               static_cast<double>(rec_bad)));
}

// --- criterion 10: interpolation properties -----------------------------------

void criterion_10() {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int bad_w = 0;
    for (int t = 0; t < 100000; ++t) {
        double xi_g = -2.0 + 4.0 * uni(rng);
        double h = 1e-3 + uni(rng);
        double xi_1 = xi_g + h;
        double xi_bp = xi_g + (xi_1 - xi_g) * uni(rng) * (1.0 - 1e-12);
        auto [gg, gc] = line_weights(xi_g, xi_bp, xi_1);
        if (std::abs(gg + gc - 1.0) > 1e-12 || gg < 0 || gg > 1 || gc < 0 || gc > 1)
            ++bad_w;
    }
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    int bad_lin = 0;
    for (int t = 0; t < 1000; ++t) {
        Point xi{sym(rng), sym(rng)}, g1{sym(rng), sym(rng)}, g2{sym(rng), sym(rng)};
        double area = std::abs((g1.x - xi.x) * (g2.y - xi.y) -
                               (g2.x - xi.x) * (g1.y - xi.y));
        if (area < 0.05) {
            --t;
            continue;
        }
        Point bp{sym(rng), sym(rng)};
        auto w = rbf_weights(xi, bp, g1, g2);
        double a = sym(rng), b = sym(rng), c = sym(rng);
        auto lin = [&](Point p) { return a + b * p.x + c * p.y; };
        double v = w[0] * lin(xi) + w[1] * lin(g1) + w[2] * lin(g2);
        if (std::abs(v - lin(bp)) > 1e-10 * std::max(1.0, std::abs(lin(bp)))) ++bad_lin;
    }
    // collocation: evaluating at a data site returns that site's value
    Point xi{0.0, 0.0}, g1{1.0, 0.2}, g2{0.3, 1.1};
    auto wd = rbf_weights(xi, g1, g1, g2);
    bool colloc = std::abs(wd[1] - 1.0) < 1e-12 && std::abs(wd[0]) < 1e-12 &&
                  std::abs(wd[2]) < 1e-12;
    report(10, bad_w == 0 && bad_lin == 0 && colloc, "interpolation properties",
           fmt("%d bad line weights, %d linear-field misses",
               static_cast<double>(bad_w), static_cast<double>(bad_lin)));
}

// --- criterion 11: geometry-parameter study ------------------------------------

void criterion_11() {
    // multiplicatively symmetric sweep a = rho^k, k = -7..7, including a = 1
    std::vector<double> params;
    const double rho = std::pow(1.0 / 0.7, 1.0 / 7.0);
    for (int k = -7; k <= 7; ++k) params.push_back(std::pow(rho, k));
    const int n = 100;
    auto rows = qoi_sweep_ellipse(params, n, Strategy::Mixed, Cycle::W);
    bool pass = rows.size() == params.size();

    // center value at a = 1 within 5 h^2 of the analytic -0.75
    double h = 4.4 / n;
    const QoiRow& mid = rows[7];
    pass = pass && std::abs(mid.qoi_point + 0.75) < 5.0 * h * h;

    // symmetry under a <-> 1/a, within twice the measured field error
    for (int k = 0; k < 7; ++k) {
        double tol = 2.0 * std::max(rows[k].e_linf, rows[14 - k].e_linf);
        pass = pass && std::abs(rows[k].qoi_point - rows[14 - k].qoi_point) <= tol;
    }

    // the minimum of the center value sits at a = 1
    int argmin = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].qoi_point < rows[argmin].qoi_point) argmin = static_cast<int>(i);
    pass = pass && argmin == 7;

    // smoothness proxy on both curves and their derivatives: finite values,
    // no jump more than 10x its neighbors
    auto smooth = [&](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        for (std::size_t i = 2; i + 1 < v.size(); ++i) {
            double jump = std::abs(v[i] - v[i - 1]);
            double nb = std::max(std::abs(v[i - 1] - v[i - 2]),
                                 std::abs(v[i + 1] - v[i]));
            if (jump > 10.0 * nb && jump > 1e-12) return false;
        }
        return true;
    };
    std::vector<double> qp, qi;
    for (const QoiRow& r : rows) {
        qp.push_back(r.qoi_point);
        qi.push_back(r.qoi_integral);
    }
    pass = pass && smooth(qp) && smooth(qi);
    pass = pass && smooth(central_difference(params, qp)) &&
           smooth(central_difference(params, qi));

    // the rotated-ellipse family is also smooth in the angle
    std::vector<double> angles;
    for (int k = 0; k <= 8; ++k) angles.push_back(k * M_PI / 16.0);
    auto rot = qoi_sweep_rotated(angles, n, Strategy::Mixed, Cycle::W);
    std::vector<double> rp;
    for (const QoiRow& r : rot) rp.push_back(r.qoi_point);
    pass = pass && smooth(rp);

    report(11, pass, "elliptical inclusion study",
           fmt("u(0,0)|a=1 = %.5f (target -0.75), argmin index %d (expect 7)",
               mid.qoi_point, static_cast<double>(argmin)));
}

// --- criterion 12: indefinite scattering solve ----------------------------------

void criterion_12() {
    BenchmarkProblem star = make_problem("star");
    HelmholtzRun a = run_helmholtz(star, 200, Strategy::Mixed, 1e-10);
    HelmholtzRun b = run_helmholtz(star, 280, Strategy::Mixed, 1e-10);
    // regression values frozen at first build; near-resonance, the peak
    // magnitude is sensitive to the grid, so each resolution is banded
    // against its own frozen value rather than the other resolution
    const double ref200 = 1244.005, ref280 = 1462.696;
    bool pass = a.iterations > 0 && b.iterations > 0 &&
                std::abs(a.linf - ref200) / ref200 < 0.10 &&
                std::abs(b.linf - ref280) / ref280 < 0.10;
    report(12, pass, "star-domain indefinite solve",
           fmt("its %d/%d, max|u| %.2f / %.2f", static_cast<double>(a.iterations),
               static_cast<double>(b.iterations), a.linf, b.linf));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (n_fail == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", n_fail);
    return 1;
}
