#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ebfd/geometry.hpp"
#include "ebfd/grid.hpp"
#include "ebfd/interpolation.hpp"
#include "ebfd/sparse.hpp"
#include "ebfd/spd.hpp"

namespace ebfd {

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Strategy { Mixed, Rbf };

/// Problem data for div(beta grad u) = f with Dirichlet data on the boundary.
/// A negative constant beta is assembled with its magnitude and the source
/// sign folded in, so the discrete operator stays positive definite.
struct ProblemSpec {
    Geometry geometry;
    double beta_const = 1.0;
    bool beta_is_constant = true;
    std::function<double(double, double)> beta;           // used when not constant
    std::function<double(double, double, double)> source;  // f(x, y, t)
    std::function<double(double, double, double)> dirichlet;  // u_D(x, y, t)
};

/// Discrete system A u = b with A = -h^2 L over computational points.
/// b splits into the source part (-h^2 * sign(beta) * f) and the boundary
/// part (sum of beta_face * g_D per corrected row).
struct OperatorSystem {
    SparseSym a;
    std::vector<double> b;
    std::vector<double> b_source;
    std::vector<double> b_boundary;
    std::vector<BoundaryCorrection> corrections;
    std::vector<Segment> seg_x, seg_y;  // endpoint values filled for constant beta
    Strategy strategy = Strategy::Mixed;
    bool beta_is_constant = true;
    double beta_scale = 1.0;  // |beta| for constant beta, 1 otherwise
    double beta_sign = 1.0;
    double h = 0.0;
};

/// beta at the face midpoint between grid point (i, j) and its neighbor one
/// step up in `axis`; always evaluated from the lower-indexed point so the
/// two rows sharing the face receive bit-identical values.
double face_coefficient(const ProblemSpec& problem, const Grid& grid, int i, int j,
                        Axis axis);

OperatorSystem assemble(const ProblemSpec& problem, const GridContext& ctx,
                        Strategy strategy, double t = 0.0);

/// Re-evaluates f and the boundary data at time t; the matrix and the
/// interpolation weights are untouched.
void refresh_rhs(OperatorSystem& sys, const ProblemSpec& problem, const GridContext& ctx,
                 double t);

/// Values at boundary points recovered from the stored corrections,
/// u_BP = w_C u_C + g_D; points referenced by several corrections average the
/// candidates. Returns (grid flat index, value) pairs.
std::vector<std::pair<int, double>> reconstruct_boundary_values(
    const OperatorSystem& sys, const Classification& cls, std::span<const double> u);

enum class Certification { Certified, NotCertified, Skipped };

struct CertificationReport {
    Certification verdict = Certification::Skipped;
    SpdReport x, y;
    bool diag_dominant = false;
};

/// Per-segment positive definiteness check in both sweep directions; only
/// applicable to constant beta, otherwise reports Skipped plus the diagonal
/// dominance verdict.
CertificationReport check_operator(const OperatorSystem& sys);

}  // namespace ebfd
