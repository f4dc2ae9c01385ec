#include "ebfd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ebfd/timestepping.hpp"

namespace ebfd {

namespace {

constexpr double kPi = 3.14159265358979323846;

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string certification_label(const CertificationReport& rep) {
    switch (rep.verdict) {
        case Certification::Certified: return "certified";
        case Certification::NotCertified: return "not_certified";
        default: return "skipped";
    }
}

std::vector<double> sample_exact(
    const GridContext& ctx, const std::function<double(double, double, double)>& exact,
    double t) {
    std::vector<double> u(ctx.cls.n_comp);
    for (int k = 0; k < ctx.cls.n_comp; ++k) {
        int flat = ctx.cls.points[k];
        int i = flat % ctx.grid.nx, j = flat / ctx.grid.nx;
        u[k] = exact(ctx.grid.x(i), ctx.grid.y(j), t);
    }
    return u;
}

}  // namespace

std::vector<double> grid_values(const GridContext& ctx, const OperatorSystem& sys,
                                const ProblemSpec& problem, std::span<const double> u,
                                double t) {
    std::vector<double> vals(ctx.grid.size(),
                             std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < ctx.cls.n_comp; ++k) vals[ctx.cls.points[k]] = u[k];
    for (auto [bp, v] : reconstruct_boundary_values(sys, ctx.cls, u)) vals[bp] = v;
    // isolated boundary points: fall back to the boundary data at the nearest
    // boundary location
    for (int j = 0; j < ctx.grid.ny; ++j)
        for (int i = 0; i < ctx.grid.nx; ++i) {
            int flat = ctx.grid.idx(i, j);
            if (ctx.cls.tag_at(i, j) == PointTag::Boundary && std::isnan(vals[flat])) {
                Point q = problem.geometry.closest_point({ctx.grid.x(i), ctx.grid.y(j)});
                vals[flat] = problem.dirichlet(q.x, q.y, t);
            }
        }
    return vals;
}

ErrorNorms error_norms(const GridContext& ctx, std::span<const double> vals,
                       const std::function<double(double, double, double)>& exact,
                       double t, const OperatorSystem* sys) {
    // Norms run over the solution unknowns, i.e. the computational points.
    // Boundary points are eliminated from the system and their reconstructed
    // values carry the interpolation constant rather than the scheme's
    // convergence behavior; they are reported separately when needed.
    (void)sys;
    ErrorNorms norms;
    double sum = 0.0;
    for (int j = 0; j < ctx.grid.ny; ++j)
        for (int i = 0; i < ctx.grid.nx; ++i) {
            if (ctx.cls.tag_at(i, j) != PointTag::Computational) continue;
            double e = vals[ctx.grid.idx(i, j)] - exact(ctx.grid.x(i), ctx.grid.y(j), t);
            sum += e * e;
            norms.linf = std::max(norms.linf, std::abs(e));
        }
    norms.l2 = std::sqrt(ctx.grid.h * ctx.grid.h * sum);
    return norms;
}

ErrorNorms gradient_error(const GridContext& ctx, std::span<const double> vals,
                          const std::function<Point(double, double, double)>& exact_grad,
                          double t) {
    ErrorNorms norms;
    double sum = 0.0;
    const double inv2h = 0.5 / ctx.grid.h;
    // Each derivative component is evaluated with a centered difference where
    // both direction-neighbors are computational, and skipped otherwise:
    // one-sided stencils anchored at near-boundary points amplify the local
    // boundary-correction error by 1/h and bury the interior convergence
    // trend. Components are accumulated independently in both norms.
    auto comp = [&](int ii, int jj) {
        return ii >= 0 && jj >= 0 && ii < ctx.cls.nx && jj < ctx.cls.ny &&
               ctx.cls.tag_at(ii, jj) == PointTag::Computational;
    };
    auto v = [&](int ii, int jj) { return vals[ctx.grid.idx(ii, jj)]; };
    for (int k = 0; k < ctx.cls.n_comp; ++k) {
        int flat = ctx.cls.points[k];
        int i = flat % ctx.grid.nx, j = flat / ctx.grid.nx;
        Point g = exact_grad(ctx.grid.x(i), ctx.grid.y(j), t);
        if (comp(i + 1, j) && comp(i - 1, j)) {
            double ex = (v(i + 1, j) - v(i - 1, j)) * inv2h - g.x;
            sum += ex * ex;
            norms.linf = std::max(norms.linf, std::abs(ex));
        }
        if (comp(i, j + 1) && comp(i, j - 1)) {
            double ey = (v(i, j + 1) - v(i, j - 1)) * inv2h - g.y;
            sum += ey * ey;
            norms.linf = std::max(norms.linf, std::abs(ey));
        }
    }
    norms.l2 = std::sqrt(ctx.grid.h * ctx.grid.h * sum);
    return norms;
}

std::string csv_header() {
    return "N,h,E_l2,E_linf,rate_l2,rate_linf,grad_l2,grad_linf,iters,certified,"
           "t_setup_s,t_solve_s";
}

std::string csv_line(const ResultRow& r) {
    std::ostringstream os;
    os.precision(12);
    os << r.n << ',' << r.h << ',' << r.e_l2 << ',' << r.e_linf << ',' << r.rate_l2
       << ',' << r.rate_linf << ',' << r.grad_l2 << ',' << r.grad_linf << ','
       << r.iters << ',' << r.certified << ',' << r.t_setup_s << ',' << r.t_solve_s;
    return os.str();
}

void write_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    out << csv_header() << '\n';
    for (const ResultRow& r : rows) out << csv_line(r) << '\n';
}

void fill_rates(std::vector<ResultRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].e_l2 > 0.0 && rows[i].e_l2 > 0.0)
            rows[i].rate_l2 = std::log2(rows[i - 1].e_l2 / rows[i].e_l2) /
                              std::log2(rows[i].h > 0 ? rows[i - 1].h / rows[i].h : 2.0);
        if (rows[i - 1].e_linf > 0.0 && rows[i].e_linf > 0.0)
            rows[i].rate_linf = std::log2(rows[i - 1].e_linf / rows[i].e_linf) /
                                std::log2(rows[i].h > 0 ? rows[i - 1].h / rows[i].h : 2.0);
    }
}

PoissonRun run_poisson(const BenchmarkProblem& problem, int n, Strategy strategy,
                       Cycle cycle, double tol) {
    PoissonRun run{};
    run.row.n = n;
    double t0 = now_s();
    run.ctx = build_context(problem.box, n, problem.spec.geometry);
    run.row.h = run.ctx.grid.h;
    run.sys = assemble(problem.spec, run.ctx, strategy);
    run.row.certified = certification_label(check_operator(run.sys));
    AmgHierarchy hier = AmgHierarchy::setup(run.sys.a, cycle);
    run.row.t_setup_s = now_s() - t0;

    t0 = now_s();
    auto rep = cg_solve(run.sys.a, run.sys.b, {}, tol, &hier);
    run.row.t_solve_s = now_s() - t0;
    run.row.iters = rep.iterations;
    run.u = std::move(rep.x);

    if (problem.exact) {
        auto vals = grid_values(run.ctx, run.sys, problem.spec, run.u, 0.0);
        ErrorNorms e = error_norms(run.ctx, vals, problem.exact, 0.0, &run.sys);
        run.row.e_l2 = e.l2;
        run.row.e_linf = e.linf;
        if (problem.exact_grad) {
            ErrorNorms g = gradient_error(run.ctx, vals, problem.exact_grad, 0.0);
            run.row.grad_l2 = g.l2;
            run.row.grad_linf = g.linf;
        }
    }
    return run;
}

std::vector<ResultRow> poisson_convergence(const BenchmarkProblem& problem,
                                           const std::vector<int>& ns, Strategy strategy,
                                           Cycle cycle, double tol) {
    std::vector<ResultRow> rows;
    for (int n : ns) {
        try {
            rows.push_back(run_poisson(problem, n, strategy, cycle, tol).row);
        } catch (const std::exception& e) {
            ResultRow row;
            row.n = n;
            row.error = e.what();
            rows.push_back(row);
        }
    }
    fill_rates(rows);
    return rows;
}

ResultRow run_heat(const BenchmarkProblem& problem, int n, Strategy strategy,
                   double t_final, double tol) {
    ResultRow row;
    row.n = n;
    double t0 = now_s();
    GridContext ctx = build_context(problem.box, n, problem.spec.geometry);
    row.h = ctx.grid.h;
    OperatorSystem sys = assemble(problem.spec, ctx, strategy, 0.0);
    row.certified = certification_label(check_operator(sys));

    int steps = std::max(1, static_cast<int>(std::lround(t_final / ctx.grid.h)));
    double dt = t_final / steps;
    double h2 = ctx.grid.h * ctx.grid.h;
    auto forcing = [&](double t) {
        refresh_rhs(sys, problem.spec, ctx, t);
        std::vector<double> f(sys.b.size());
        for (std::size_t k = 0; k < f.size(); ++k)
            f[k] = (sys.b_boundary[k] - sys.b_source[k]) / h2;
        return f;
    };
    std::vector<double> u0 = sample_exact(ctx, problem.exact, 0.0);
    CrankNicolson cn(sys.a, ctx.grid.h, dt, forcing, std::move(u0), 0.0, tol, Cycle::W);
    row.t_setup_s = now_s() - t0;

    t0 = now_s();
    for (int s = 0; s < steps; ++s) cn.step();
    row.t_solve_s = now_s() - t0;
    row.iters = cn.mean_iterations();

    refresh_rhs(sys, problem.spec, ctx, t_final);
    auto vals = grid_values(ctx, sys, problem.spec, cn.current(), t_final);
    ErrorNorms e = error_norms(ctx, vals, problem.exact, t_final, &sys);
    row.e_l2 = e.l2;
    row.e_linf = e.linf;
    if (problem.exact_grad) {
        ErrorNorms g = gradient_error(ctx, vals, problem.exact_grad, t_final);
        row.grad_l2 = g.l2;
        row.grad_linf = g.linf;
    }
    return row;
}

std::vector<ResultRow> heat_convergence(const BenchmarkProblem& problem,
                                        const std::vector<int>& ns, Strategy strategy,
                                        double t_final, double tol) {
    std::vector<ResultRow> rows;
    for (int n : ns) {
        try {
            rows.push_back(run_heat(problem, n, strategy, t_final, tol));
        } catch (const std::exception& e) {
            ResultRow row;
            row.n = n;
            row.error = e.what();
            rows.push_back(row);
        }
    }
    fill_rates(rows);
    return rows;
}

ResultRow run_wave(const BenchmarkProblem& problem, int n, double theta, double cfl,
                   double periods, double tol) {
    constexpr double kPeriod = 0.1999562886971;
    ResultRow row;
    row.n = n;
    double t0 = now_s();
    GridContext ctx = build_context(problem.box, n, problem.spec.geometry);
    row.h = ctx.grid.h;
    OperatorSystem sys = assemble(problem.spec, ctx, Strategy::Mixed, 0.0);
    row.certified = certification_label(check_operator(sys));

    double t_final = periods * kPeriod;
    int steps =
        std::max(2, static_cast<int>(std::lround(t_final / (cfl * ctx.grid.h))));
    double dt = t_final / steps;

    std::vector<double> u0 = sample_exact(ctx, problem.exact, 0.0);
    std::vector<double> u1 = sample_exact(ctx, problem.exact, dt);
    ThetaScheme scheme(sys.a, ctx.grid.h, dt, theta, std::move(u0), std::move(u1), tol);
    row.t_setup_s = now_s() - t0;

    t0 = now_s();
    for (int s = 1; s < steps; ++s) scheme.step();
    row.t_solve_s = now_s() - t0;
    row.iters = scheme.mean_iterations();

    auto vals = grid_values(ctx, sys, problem.spec, scheme.current(), t_final);
    ErrorNorms e = error_norms(ctx, vals, problem.exact, t_final, &sys);
    row.e_l2 = e.l2;
    row.e_linf = e.linf;
    return row;
}

std::vector<ResultRow> wave_convergence(const BenchmarkProblem& problem,
                                        const std::vector<int>& ns, double theta,
                                        double cfl, double periods, double tol) {
    std::vector<ResultRow> rows;
    for (int n : ns) {
        try {
            rows.push_back(run_wave(problem, n, theta, cfl, periods, tol));
        } catch (const std::exception& e) {
            ResultRow row;
            row.n = n;
            row.error = e.what();
            rows.push_back(row);
        }
    }
    fill_rates(rows);
    return rows;
}

HelmholtzRun run_helmholtz(const BenchmarkProblem& problem, int n, Strategy strategy,
                           double tol, int max_iter) {
    HelmholtzRun run{};
    run.ctx = build_context(problem.box, n, problem.spec.geometry);
    const Grid& g = run.ctx.grid;
    const double h = g.h;

    // point source: 2h x 2h hat centered on the grid point nearest (xs, ys),
    // normalized so its discrete integral is one
    const double xs = -0.375, ys = 0.125;
    double xc = g.x_lo + std::lround((xs - g.x_lo) / h) * h;
    double yc = g.y_lo + std::lround((ys - g.y_lo) / h) * h;
    ProblemSpec spec = problem.spec;
    spec.source = [xc, yc, h](double x, double y, double) {
        double tx = std::max(0.0, 1.0 - std::abs(x - xc) / h);
        double ty = std::max(0.0, 1.0 - std::abs(y - yc) / h);
        return 1000.0 * tx * ty / (h * h);
    };

    OperatorSystem sys = assemble(spec, run.ctx, strategy);
    double omega = problem.omega;
    SparseSym m = shifted_operator(-omega * omega * h * h, 1.0, sys.a);
    auto rep = minres_solve(m, sys.b, tol, max_iter);
    run.iterations = rep.iterations;
    run.u = std::move(rep.x);
    for (double v : run.u) run.linf = std::max(run.linf, std::abs(v));
    return run;
}

EigReport run_eig(const BenchmarkProblem& problem, int n, Strategy strategy,
                  bool want_min, double tol) {
    EigReport rep;
    rep.n = n;
    GridContext ctx = build_context(problem.box, n, problem.spec.geometry);
    OperatorSystem sys = assemble(problem.spec, ctx, strategy);
    rep.n_comp = ctx.cls.n_comp;
    rep.lambda_max = extremal_eig(sys.a, Extremal::Max, tol);
    rep.lambda_max_scaled = rep.lambda_max / sys.beta_scale;
    if (want_min) rep.lambda_min = extremal_eig(sys.a, Extremal::Min, 1e-8);
    return rep;
}

double interpolate_at(const GridContext& ctx, std::span<const double> vals, double x,
                      double y) {
    const Grid& g = ctx.grid;
    int i = static_cast<int>(std::floor((x - g.x_lo) / g.h));
    int j = static_cast<int>(std::floor((y - g.y_lo) / g.h));
    i = std::clamp(i, 0, g.nx - 2);
    j = std::clamp(j, 0, g.ny - 2);
    double fx = (x - g.x(i)) / g.h, fy = (y - g.y(j)) / g.h;
    double v00 = vals[g.idx(i, j)], v10 = vals[g.idx(i + 1, j)];
    double v01 = vals[g.idx(i, j + 1)], v11 = vals[g.idx(i + 1, j + 1)];
    return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 +
           fx * fy * v11;
}

namespace {

QoiRow evaluate_qoi(const BenchmarkProblem& problem, double param, int n,
                    Strategy strategy, Cycle cycle) {
    PoissonRun run = run_poisson(problem, n, strategy, cycle);
    auto vals = grid_values(run.ctx, run.sys, problem.spec, run.u, 0.0);
    QoiRow row;
    row.param = param;
    row.qoi_point = interpolate_at(run.ctx, vals, 0.0, 0.0);
    const Grid& g = run.ctx.grid;
    double sum = 0.0;
    for (int k = 0; k < run.ctx.cls.n_comp; ++k) {
        int flat = run.ctx.cls.points[k];
        int i = flat % g.nx, j = flat / g.nx;
        double x = g.x(i), y = g.y(j);
        if (x >= -1.0 && x <= 1.0 && y >= -0.5 && y <= 0.5) sum += run.u[k];
    }
    row.qoi_integral = g.h * g.h * sum;
    if (problem.exact)
        row.e_linf = error_norms(run.ctx, vals, problem.exact, 0.0, &run.sys).linf;
    return row;
}

}  // namespace

std::vector<QoiRow> qoi_sweep_ellipse(const std::vector<double>& params, int n,
                                      Strategy strategy, Cycle cycle) {
    std::vector<QoiRow> rows;
    for (double a : params)
        rows.push_back(evaluate_qoi(make_ellipse_problem(a), a, n, strategy, cycle));
    return rows;
}

std::vector<QoiRow> qoi_sweep_rotated(const std::vector<double>& params, int n,
                                      Strategy strategy, Cycle cycle) {
    std::vector<QoiRow> rows;
    for (double alpha : params)
        rows.push_back(
            evaluate_qoi(make_rotated_ellipse_problem(alpha), alpha, n, strategy, cycle));
    return rows;
}

std::vector<double> central_difference(const std::vector<double>& params,
                                       const std::vector<double>& values) {
    const std::size_t n = params.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (values[i + 1] - values[i - 1]) / (params[i + 1] - params[i - 1]);
    d[0] = (values[1] - values[0]) / (params[1] - params[0]);
    d[n - 1] = (values[n - 1] - values[n - 2]) / (params[n - 1] - params[n - 2]);
    return d;
}

}  // namespace ebfd
