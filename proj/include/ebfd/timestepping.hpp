#pragma once

#include <functional>
#include <vector>

#include "ebfd/amg.hpp"
#include "ebfd/solvers.hpp"
#include "ebfd/sparse.hpp"

namespace ebfd {

struct TimeSteppingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// shift*I + alpha*A
SparseSym shifted_operator(double shift, double alpha, const SparseSym& a);

/// Two-step theta scheme for u_tt = Laplacian(u) with homogeneous forcing:
///   (I + theta dt^2 K) u^{n+1} = 2u^n - u^{n-1} - (1-2theta) dt^2 K u^n
///                                - theta dt^2 K u^{n-1},
/// where K = A / h^2 is the (positive) discrete -Laplacian. theta = 0 is the
/// explicit leap-frog scheme and performs no linear solves; theta > 0 solves
/// with AMG-preconditioned CG, warm-started from the previous solution.
class ThetaScheme {
  public:
    ThetaScheme(const SparseSym& a, double h, double dt, double theta,
                std::vector<double> u0, std::vector<double> u1, double cg_tol = 1e-12,
                Cycle cycle = Cycle::V);

    const std::vector<double>& step();
    const std::vector<double>& current() const { return u_cur_; }
    const std::vector<double>& previous() const { return u_prev_; }
    int steps_taken() const { return steps_; }
    double mean_iterations() const {
        return steps_ > 0 ? static_cast<double>(total_iters_) / steps_ : 0.0;
    }

  private:
    const SparseSym& a_;
    double inv_h2_, dt_, theta_, cg_tol_;
    SparseSym implicit_;     // I + theta dt^2 K, theta > 0 only
    AmgHierarchy hierarchy;  // for the implicit operator
    std::vector<double> u_prev_, u_cur_;
    double blowup_scale_ = 0.0;
    int steps_ = 0;
    long total_iters_ = 0;
};

/// Crank-Nicolson for u_t = -K u + F(t), K = A / h^2:
///   (I + dt/2 K) u^{n+1} = (I - dt/2 K) u^n + dt/2 (F^n + F^{n+1}).
/// F bundles the source and the boundary contribution (f + c / h^2).
class CrankNicolson {
  public:
    CrankNicolson(const SparseSym& a, double h, double dt,
                  std::function<std::vector<double>(double)> forcing,
                  std::vector<double> u0, double t0 = 0.0, double cg_tol = 1e-12,
                  Cycle cycle = Cycle::V);

    const std::vector<double>& step();
    const std::vector<double>& current() const { return u_; }
    double time() const { return t_; }
    int steps_taken() const { return steps_; }
    double mean_iterations() const {
        return steps_ > 0 ? static_cast<double>(total_iters_) / steps_ : 0.0;
    }

  private:
    const SparseSym& a_;
    double inv_h2_, dt_, cg_tol_, t_;
    SparseSym implicit_;
    AmgHierarchy hierarchy;
    std::function<std::vector<double>(double)> forcing_;
    std::vector<double> u_, u_prev_, u_prev2_, f_cur_;
    int steps_ = 0;
    long total_iters_ = 0;
};

/// Bessel function of the first kind, m in [0, 20], z in [0, 200]; ascending
/// series for small arguments, Miller's backward recurrence otherwise.
double bessel_j(int m, double z);

/// nth positive zero of J_m, by bisection on bessel_j.
double bessel_zero(int m, int n);

/// Standing mode of the unit disk, J_m(kappa r) cos(m phi) cos(kappa t).
double standing_mode(double r, double phi, double t, int m, double kappa);

}  // namespace ebfd
