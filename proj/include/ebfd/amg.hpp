#pragma once

#include <vector>

#include "ebfd/sparse.hpp"

namespace ebfd {

enum class Cycle { V, W };

struct AmgParams {
    double strength_threshold = 0.25;
    int max_levels = 25;
    int coarse_cutoff = 50;
    int n_smooth = 1;  // Gauss-Seidel sweeps per pre/post smoothing stage
};

/// Ruge-Stuben hierarchy with direct interpolation, Galerkin coarse operators
/// and a dense Cholesky factorization on the coarsest level. Applied as one
/// V or W cycle with symmetric Gauss-Seidel smoothing (forward pre-sweep,
/// backward post-sweep), which makes the cycle a symmetric linear operator
/// suitable as a CG preconditioner.
class AmgHierarchy {
  public:
    AmgHierarchy() = default;

    struct Level {
        SparseSym a;
        SparseSym p;  // prolongation
        SparseSym r;  // restriction = p^T
    };

    static AmgHierarchy setup(const SparseSym& a, Cycle cycle, AmgParams params = {});

    /// z = M r for one cycle (zero initial guess).
    void apply(std::span<const double> r, std::span<double> z) const;
    std::vector<double> apply(std::span<const double> r) const;

    int n_levels() const { return static_cast<int>(ops_.size()); }
    const SparseSym& level_operator(int l) const { return ops_[l]; }
    const SparseSym& prolongation(int l) const { return levels_[l].p; }
    Cycle cycle() const { return cycle_; }

  private:
    void solve_level(int level, std::span<const double> rhs, std::span<double> x,
                     std::vector<std::vector<double>>& work_r,
                     std::vector<std::vector<double>>& work_e) const;
    void coarse_solve(std::span<const double> rhs, std::span<double> x) const;

    std::vector<Level> levels_;       // inter-level transfers (one per non-coarsest level)
    std::vector<SparseSym> ops_;      // operators, ops_[0] = finest
    std::vector<double> coarse_factor_;  // dense Cholesky of the coarsest operator
    int coarse_n_ = 0;
    Cycle cycle_ = Cycle::V;
    int n_smooth_ = 1;
};

void gauss_seidel_forward(const SparseSym& a, std::span<const double> b,
                          std::span<double> x);
void gauss_seidel_backward(const SparseSym& a, std::span<const double> b,
                           std::span<double> x);

}  // namespace ebfd
