#include "ebfd/timestepping.hpp"

#include <algorithm>
#include <cmath>

namespace ebfd {

SparseSym shifted_operator(double shift, double alpha, const SparseSym& a) {
    std::vector<SparseSym::Triplet> trips;
    trips.reserve(a.nnz() + a.rows());
    const auto& row_ptr = a.row_ptr();
    const auto& col = a.col_idx();
    const auto& val = a.values();
    for (int i = 0; i < a.rows(); ++i) {
        trips.push_back({i, i, shift});
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            trips.push_back({i, col[k], alpha * val[k]});
    }
    return SparseSym::from_triplets(a.rows(), a.cols(), std::move(trips));
}

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

constexpr double kBlowupFactor = 1e6;

}  // namespace

ThetaScheme::ThetaScheme(const SparseSym& a, double h, double dt, double theta,
                         std::vector<double> u0, std::vector<double> u1, double cg_tol,
                         Cycle cycle)
    : a_(a),
      inv_h2_(1.0 / (h * h)),
      dt_(dt),
      theta_(theta),
      cg_tol_(cg_tol),
      u_prev_(std::move(u0)),
      u_cur_(std::move(u1)) {
    blowup_scale_ = std::max({inf_norm(u_prev_), inf_norm(u_cur_), 1e-14});
    if (theta_ > 0.0) {
        implicit_ = shifted_operator(1.0, theta_ * dt_ * dt_ * inv_h2_, a_);
        hierarchy = AmgHierarchy::setup(implicit_, cycle);
    }
}

const std::vector<double>& ThetaScheme::step() {
    const std::size_t n = u_cur_.size();
    double c = dt_ * dt_ * inv_h2_;
    std::vector<double> ku(n), rhs(n);
    a_.multiply(u_cur_, ku);
    if (theta_ == 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = 2.0 * u_cur_[i] - u_prev_[i] - c * ku[i];
        u_prev_ = std::move(u_cur_);
        u_cur_ = std::move(rhs);
    } else {
        std::vector<double> ku_prev(n);
        a_.multiply(u_prev_, ku_prev);
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = 2.0 * u_cur_[i] - u_prev_[i] -
                     (1.0 - 2.0 * theta_) * c * ku[i] - theta_ * c * ku_prev[i];
        // warm start from the leapfrog prediction of the next level
        std::vector<double> x0(n);
        for (std::size_t i = 0; i < n; ++i) x0[i] = 2.0 * u_cur_[i] - u_prev_[i];
        auto rep = cg_solve(implicit_, rhs, x0, cg_tol_, &hierarchy);
        total_iters_ += rep.iterations;
        u_prev_ = std::move(u_cur_);
        u_cur_ = std::move(rep.x);
    }
    ++steps_;
    if (inf_norm(u_cur_) > kBlowupFactor * blowup_scale_)
        throw TimeSteppingError("time stepping diverged at step " +
                                std::to_string(steps_));
    return u_cur_;
}

CrankNicolson::CrankNicolson(const SparseSym& a, double h, double dt,
                             std::function<std::vector<double>(double)> forcing,
                             std::vector<double> u0, double t0, double cg_tol,
                             Cycle cycle)
    : a_(a),
      inv_h2_(1.0 / (h * h)),
      dt_(dt),
      cg_tol_(cg_tol),
      t_(t0),
      forcing_(std::move(forcing)),
      u_(std::move(u0)) {
    implicit_ = shifted_operator(1.0, 0.5 * dt_ * inv_h2_, a_);
    hierarchy = AmgHierarchy::setup(implicit_, cycle);
    f_cur_ = forcing_(t_);
}

const std::vector<double>& CrankNicolson::step() {
    const std::size_t n = u_.size();
    std::vector<double> ku(n), rhs(n);
    a_.multiply(u_, ku);
    std::vector<double> f_next = forcing_(t_ + dt_);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = u_[i] - 0.5 * dt_ * inv_h2_ * ku[i] +
                 0.5 * dt_ * (f_cur_[i] + f_next[i]);
    // Warm start from polynomial extrapolation of the previous steps; each
    // extra history level shrinks the initial residual by a factor of dt,
    // cutting a couple of CG iterations per step.
    std::vector<double> x0 = u_;
    if (!u_prev2_.empty())
        for (std::size_t i = 0; i < n; ++i)
            x0[i] = 3.0 * u_[i] - 3.0 * u_prev_[i] + u_prev2_[i];
    else if (!u_prev_.empty())
        for (std::size_t i = 0; i < n; ++i) x0[i] = 2.0 * u_[i] - u_prev_[i];
    auto rep = cg_solve(implicit_, rhs, x0, cg_tol_, &hierarchy);
    total_iters_ += rep.iterations;
    u_prev2_ = std::move(u_prev_);
    u_prev_ = std::move(u_);
    u_ = std::move(rep.x);
    f_cur_ = std::move(f_next);
    t_ += dt_;
    ++steps_;
    return u_;
}

double bessel_j(int m, double z) {
    if (m < 0 || m > 20 || z < 0.0 || z > 200.0)
        throw TimeSteppingError("bessel_j: order/argument out of supported range");
    if (z == 0.0) return m == 0 ? 1.0 : 0.0;
    if (z <= 14.0) {
        // ascending series sum_k (-1)^k (z/2)^{m+2k} / (k! (m+k)!)
        double half = 0.5 * z;
        double term = 1.0;
        for (int k = 1; k <= m; ++k) term *= half / k;  // (z/2)^m / m!
        double sum = term;
        for (int k = 1; k <= 60; ++k) {
            term *= -half * half / (static_cast<double>(k) * (m + k));
            sum += term;
            if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
        }
        return sum;
    }
    // Miller's backward recurrence, normalized by J_0 + 2 sum J_{2k} = 1
    int start = 2 * ((std::max(m, static_cast<int>(z)) + 40) / 2);
    double jp = 0.0, jc = 1e-30;
    double norm = 0.0, target = 0.0;
    for (int k = start; k >= 1; --k) {
        double jm = (2.0 * k / z) * jc - jp;
        jp = jc;
        jc = jm;
        if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? jc : 2.0 * jc;
        if (k - 1 == m) target = jc;
        // rescale to avoid overflow
        if (std::abs(jc) > 1e100) {
            jc *= 1e-100;
            jp *= 1e-100;
            norm *= 1e-100;
            target *= 1e-100;
        }
    }
    return target / norm;
}

double bessel_zero(int m, int n) {
    double step = 0.05;
    double z_prev = 1e-9;
    double f_prev = bessel_j(m, z_prev);
    int found = 0;
    for (double z = step; z <= 200.0; z += step) {
        double f = bessel_j(m, z);
        if ((f_prev < 0.0) != (f < 0.0)) {
            ++found;
            if (found == n) {
                double lo = z_prev, hi = z;
                for (int it = 0; it < 200; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double fm = bessel_j(m, mid);
                    if ((fm < 0.0) == (f_prev < 0.0))
                        lo = mid;
                    else
                        hi = mid;
                    if (hi - lo < 1e-13) break;
                }
                return 0.5 * (lo + hi);
            }
        }
        z_prev = z;
        f_prev = f;
    }
    throw TimeSteppingError("bessel_zero: zero not found in range");
}

double standing_mode(double r, double phi, double t, int m, double kappa) {
    return bessel_j(m, r * kappa) * std::cos(m * phi) * std::cos(kappa * t);
}

}  // namespace ebfd
