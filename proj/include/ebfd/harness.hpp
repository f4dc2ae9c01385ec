#pragma once

#include <string>
#include <vector>

#include "ebfd/amg.hpp"
#include "ebfd/problems.hpp"
#include "ebfd/solvers.hpp"

namespace ebfd {

struct ErrorNorms {
    double l2 = 0.0;
    double linf = 0.0;
};

/// Full-grid solution values: computational points from u, boundary points
/// reconstructed from the corrections, isolated boundary points from the
/// Dirichlet data at the nearest boundary location; NaN outside the domain.
std::vector<double> grid_values(const GridContext& ctx, const OperatorSystem& sys,
                                const ProblemSpec& problem, std::span<const double> u,
                                double t);

/// l2 (h-weighted) and max norms of vals - exact over computational and
/// boundary points. When `sys` is given, isolated boundary points (those with
/// no stored correction, whose values are only nearest-datum fallbacks) are
/// skipped: they carry no unknown and their fallback is first-order only.
ErrorNorms error_norms(const GridContext& ctx, std::span<const double> vals,
                       const std::function<double(double, double, double)>& exact,
                       double t, const OperatorSystem* sys = nullptr);

/// Gradient errors by central differences at computational points.
ErrorNorms gradient_error(const GridContext& ctx, std::span<const double> vals,
                          const std::function<Point(double, double, double)>& exact_grad,
                          double t);

struct ResultRow {
    int n = 0;
    double h = 0.0;
    double e_l2 = 0.0, e_linf = 0.0;
    double rate_l2 = 0.0, rate_linf = 0.0;
    double grad_l2 = 0.0, grad_linf = 0.0;
    double iters = 0.0;
    std::string certified = "skipped";
    double t_setup_s = 0.0, t_solve_s = 0.0;
    std::string error;  // non-empty when this sweep entry failed
};

std::string csv_header();
std::string csv_line(const ResultRow& row);
void write_csv(const std::string& path, const std::vector<ResultRow>& rows);

/// Fills rate columns from consecutive rows (log2 of error ratios).
void fill_rates(std::vector<ResultRow>& rows);

struct PoissonRun {
    ResultRow row;
    GridContext ctx;
    OperatorSystem sys;
    std::vector<double> u;
};

PoissonRun run_poisson(const BenchmarkProblem& problem, int n, Strategy strategy,
                       Cycle cycle, double tol = 1e-12);

std::vector<ResultRow> poisson_convergence(const BenchmarkProblem& problem,
                                           const std::vector<int>& ns, Strategy strategy,
                                           Cycle cycle, double tol = 1e-12);

/// Crank-Nicolson heat run to final time T with dt = h. The per-step CG
/// tolerance only needs to keep the algebraic error below the O(dt^2)
/// discretization error; 1e-8 leaves orders of magnitude of headroom at
/// desk scales while keeping warm-started solves to a few iterations.
ResultRow run_heat(const BenchmarkProblem& problem, int n, Strategy strategy,
                   double t_final, double tol = 1e-8);
std::vector<ResultRow> heat_convergence(const BenchmarkProblem& problem,
                                        const std::vector<int>& ns, Strategy strategy,
                                        double t_final, double tol = 1e-8);

/// Theta-scheme wave run: dt = cfl * h, evolved for `periods` periods of the
/// standing mode; errors at the final time. As with the heat stepper, the
/// per-step CG tolerance only needs to dominate the discretization error.
ResultRow run_wave(const BenchmarkProblem& problem, int n, double theta, double cfl,
                   double periods, double tol = 1e-9);
std::vector<ResultRow> wave_convergence(const BenchmarkProblem& problem,
                                        const std::vector<int>& ns, double theta,
                                        double cfl, double periods, double tol = 1e-9);

struct HelmholtzRun {
    GridContext ctx;
    std::vector<double> u;
    int iterations = 0;
    double linf = 0.0;  // max solution magnitude
};

HelmholtzRun run_helmholtz(const BenchmarkProblem& problem, int n, Strategy strategy,
                           double tol = 1e-10, int max_iter = -1);

struct EigReport {
    int n = 0;
    int n_comp = 0;
    double lambda_min = 0.0;       // smallest eigenvalue of A
    double lambda_max = 0.0;       // largest eigenvalue of A
    double lambda_max_scaled = 0;  // lambda_max / |beta| for constant beta
};

EigReport run_eig(const BenchmarkProblem& problem, int n, Strategy strategy,
                  bool want_min = true, double tol = 1e-9);

struct QoiRow {
    double param = 0.0;
    double qoi_point = 0.0;     // u(0,0) by bilinear interpolation
    double qoi_integral = 0.0;  // h^2 sum of u over [-1,1]x[-0.5,0.5]
    double e_linf = 0.0;        // from exact solution when available, else 0
};

std::vector<QoiRow> qoi_sweep_ellipse(const std::vector<double>& params, int n,
                                      Strategy strategy, Cycle cycle);
std::vector<QoiRow> qoi_sweep_rotated(const std::vector<double>& params, int n,
                                      Strategy strategy, Cycle cycle);
std::vector<double> central_difference(const std::vector<double>& params,
                                       const std::vector<double>& values);

/// Bilinear interpolation of grid values at (x, y).
double interpolate_at(const GridContext& ctx, std::span<const double> vals, double x,
                      double y);

}  // namespace ebfd
