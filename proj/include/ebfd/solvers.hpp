#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ebfd/amg.hpp"
#include "ebfd/sparse.hpp"

namespace ebfd {

struct SolveReport {
    std::vector<double> x;
    int iterations = 0;
    std::vector<double> residual_history;  // relative residuals
    bool converged = false;
};

struct SolverError : std::runtime_error {
    SolverError(const std::string& what, SolveReport rep)
        : std::runtime_error(what), report(std::move(rep)) {}
    SolveReport report;
};

/// Preconditioned conjugate gradient; stops at ||b - Ax|| / ||b|| <= tol.
/// Throws on max_iter exhaustion and on detected indefiniteness (p'Ap <= 0).
SolveReport cg_solve(const SparseSym& a, std::span<const double> b,
                     std::span<const double> x0, double tol,
                     const AmgHierarchy* precond = nullptr, int max_iter = -1);

/// MINRES for symmetric (possibly indefinite) systems.
SolveReport minres_solve(const SparseSym& a, std::span<const double> b, double tol,
                         int max_iter = -1);

enum class Extremal { Min, Max };

/// Extremal eigenvalue of a symmetric positive definite matrix: power
/// iteration for the largest, inverse iteration (AMG-CG inner solves) for
/// the smallest.
double extremal_eig(const SparseSym& a, Extremal which, double tol = 1e-6,
                    int max_iter = 200000);

}  // namespace ebfd
