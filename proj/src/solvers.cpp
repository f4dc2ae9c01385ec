#include "ebfd/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace ebfd {

namespace {
int default_cap(int n, int factor) {
    return std::max(100, static_cast<int>(factor * std::sqrt(static_cast<double>(n))));
}
}  // namespace

SolveReport cg_solve(const SparseSym& a, std::span<const double> b,
                     std::span<const double> x0, double tol,
                     const AmgHierarchy* precond, int max_iter) {
    const int n = a.rows();
    if (max_iter < 0) max_iter = default_cap(n, 10);

    SolveReport rep;
    rep.x.assign(b.begin(), b.end());
    std::vector<double>& x = rep.x;
    if (!x0.empty()) {
        std::copy(x0.begin(), x0.end(), x.begin());
    } else {
        std::fill(x.begin(), x.end(), 0.0);
    }

    double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        rep.converged = true;
        rep.residual_history.push_back(0.0);
        return rep;
    }

    std::vector<double> r(n), z(n), p(n), ap(n);
    a.multiply(x, ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];

    auto apply_precond = [&](std::span<const double> rr, std::span<double> zz) {
        if (precond)
            precond->apply(rr, zz);
        else
            std::copy(rr.begin(), rr.end(), zz.begin());
    };

    apply_precond(r, z);
    p = z;
    double rz = dot(r, z);
    double rel = norm2(r) / bnorm;
    rep.residual_history.push_back(rel);
    if (rel <= tol) {
        rep.converged = true;
        return rep;
    }

    for (int it = 1; it <= max_iter; ++it) {
        a.multiply(p, ap);
        double pap = dot(p, ap);
        if (pap <= 0.0)
            throw SolverError("cg: indefiniteness detected (p'Ap <= 0), consider MINRES",
                              std::move(rep));
        double alpha = rz / pap;
        axpy(alpha, p, x);
        axpy(-alpha, ap, r);
        rel = norm2(r) / bnorm;
        rep.iterations = it;
        rep.residual_history.push_back(rel);
        if (rel <= tol) {
            rep.converged = true;
            return rep;
        }
        apply_precond(r, z);
        double rz_new = dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("cg: no convergence within " + std::to_string(max_iter) +
                          " iterations (residual " + std::to_string(rel) + ")",
                      std::move(rep));
}

SolveReport minres_solve(const SparseSym& a, std::span<const double> b, double tol,
                         int max_iter) {
    const int n = a.rows();
    // Indefinite systems can need far more iterations than SPD ones; fall
    // back to the exact-termination bound of the Krylov method.
    if (max_iter < 0) max_iter = std::max(100, n);

    SolveReport rep;
    rep.x.assign(n, 0.0);
    double bnorm = norm2(b);
    if (bnorm == 0.0) {
        rep.converged = true;
        return rep;
    }

    // standard Lanczos-based MINRES recurrence
    std::vector<double> v_prev(n, 0.0), v(b.begin(), b.end());
    double beta = bnorm;
    for (int i = 0; i < n; ++i) v[i] /= beta;
    std::vector<double> w(n, 0.0), w_prev(n, 0.0), w_prev2(n, 0.0);
    double eta = beta;
    double c_prev = 1.0, c = 1.0, s_prev = 0.0, s = 0.0;
    std::vector<double> av(n);

    double rel = 1.0;
    rep.residual_history.push_back(rel);
    for (int it = 1; it <= max_iter; ++it) {
        a.multiply(v, av);
        double alpha = dot(v, av);
        for (int i = 0; i < n; ++i) av[i] -= alpha * v[i] + beta * v_prev[i];
        double beta_new = norm2(av);

        double delta = c * alpha - c_prev * s * beta;
        double rho1 = std::hypot(delta, beta_new);
        double rho2 = s * alpha + c_prev * c * beta;
        double rho3 = s_prev * beta;

        c_prev = c;
        s_prev = s;
        if (rho1 == 0.0) rho1 = 1e-300;
        c = delta / rho1;
        s = beta_new / rho1;

        w_prev2 = w_prev;
        w_prev = w;
        for (int i = 0; i < n; ++i)
            w[i] = (v[i] - rho2 * w_prev[i] - rho3 * w_prev2[i]) / rho1;
        axpy(c * eta, w, rep.x);
        eta = -s * eta;

        rel = std::abs(eta) / bnorm;
        rep.iterations = it;
        rep.residual_history.push_back(rel);
        if (rel <= tol) {
            rep.converged = true;
            return rep;
        }
        if (beta_new == 0.0) break;
        v_prev = v;
        for (int i = 0; i < n; ++i) v[i] = av[i] / beta_new;
        beta = beta_new;
    }
    if (rel <= tol) {
        rep.converged = true;
        return rep;
    }
    throw SolverError("minres: no convergence within " + std::to_string(max_iter) +
                          " iterations (residual " + std::to_string(rel) + ")",
                      std::move(rep));
}

namespace {

// deterministic pseudo-random start vector
std::vector<double> seed_vector(int n) {
    std::vector<double> v(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < n; ++i) {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        v[i] = static_cast<double>(state % 10007) / 10007.0 - 0.5;
    }
    return v;
}

void normalize(std::vector<double>& v) {
    double nv = norm2(v);
    for (double& e : v) e /= nv;
}

// number of eigenvalues of the symmetric tridiagonal (alpha, beta) below x,
// by the Sturm sequence of the LDL^T pivots
int sturm_count(const std::vector<double>& alpha, const std::vector<double>& beta,
                double x) {
    int count = 0;
    double d = alpha[0] - x;
    if (d < 0.0) ++count;
    for (std::size_t k = 1; k < alpha.size(); ++k) {
        double denom = (d == 0.0) ? 1e-300 : d;
        d = alpha[k] - x - beta[k - 1] * beta[k - 1] / denom;
        if (d < 0.0) ++count;
    }
    return count;
}

double tridiag_max_eig(const std::vector<double>& alpha,
                       const std::vector<double>& beta) {
    const std::size_t m = alpha.size();
    double lo = alpha[0], hi = alpha[0];
    for (std::size_t k = 0; k < m; ++k) {
        double off = (k > 0 ? std::abs(beta[k - 1]) : 0.0) +
                     (k + 1 < m ? std::abs(beta[k]) : 0.0);
        lo = std::min(lo, alpha[k] - off);
        hi = std::max(hi, alpha[k] + off);
    }
    const int target = static_cast<int>(m) - 1;  // index of the largest
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (std::abs(hi) + 1.0); ++it) {
        double mid = 0.5 * (lo + hi);
        if (sturm_count(alpha, beta, mid) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Lanczos with full reorthogonalization; the extreme eigenvalues of these
// operators are clustered, where plain power iteration stalls.
double lanczos_max(const SparseSym& a, double tol, int max_iter) {
    const int n = a.rows();
    const int m_max = std::min(n, std::max(50, std::min(max_iter, 600)));
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;
    std::vector<double> v = seed_vector(n);
    normalize(v);
    basis.push_back(v);

    double theta = 0.0, theta_prev = 0.0;
    int stable = 0;
    std::vector<double> w(n);
    for (int j = 0; j < m_max; ++j) {
        a.multiply(basis[j], w);
        double aj = dot(basis[j], w);
        alpha.push_back(aj);
        axpy(-aj, basis[j], w);
        if (j > 0) axpy(-beta[j - 1], basis[j - 1], w);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) axpy(-dot(q, w), q, w);
        double bj = norm2(w);

        theta_prev = theta;
        theta = tridiag_max_eig(alpha, beta);
        if (j > 2) {
            if (std::abs(theta - theta_prev) <= tol * 1e-3 * std::abs(theta))
                ++stable;
            else
                stable = 0;
            if (stable >= 3) return theta;
        }
        if (bj <= 1e-14 * std::abs(aj)) return theta;  // invariant subspace
        beta.push_back(bj);
        for (double& e : w) e /= bj;
        basis.push_back(w);
    }
    return theta;
}

}  // namespace

double extremal_eig(const SparseSym& a, Extremal which, double tol, int max_iter) {
    const int n = a.rows();
    if (which == Extremal::Max) return lanczos_max(a, tol, max_iter);

    std::vector<double> v = seed_vector(n);
    normalize(v);
    std::vector<double> w(n);

    AmgHierarchy hier = AmgHierarchy::setup(a, Cycle::V);

    double lambda = 0.0, lambda1 = 0.0, lambda2 = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        {
            auto rep = cg_solve(a, v, {}, 1e-12, &hier);
            w = std::move(rep.x);
        }
        normalize(w);
        std::vector<double> aw(n);
        a.multiply(w, aw);
        double mu = dot(w, aw);
        v = std::move(w);
        w.resize(n);

        lambda2 = lambda1;
        lambda1 = lambda;
        lambda = mu;
        if (it >= 2) {
            double d1 = lambda - lambda1;
            double d0 = lambda1 - lambda2;
            if (d0 != 0.0) {
                double rho = d1 / d0;
                if (rho > 0.0 && rho < 1.0) {
                    double err = std::abs(d1) * rho / (1.0 - rho);
                    if (err <= tol * std::abs(lambda)) return lambda + d1 * rho / (1.0 - rho);
                }
            }
            if (std::abs(d1) <= 1e-15 * std::abs(lambda)) return lambda;
        }
    }
    return lambda;  // best available estimate at the iteration cap
}

}  // namespace ebfd
