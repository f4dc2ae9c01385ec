#pragma once

#include <array>
#include <utility>

#include "ebfd/geometry.hpp"

namespace ebfd {

struct InterpolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CorrectionMethod : std::uint8_t { Line, Rbf };

/// One eliminated boundary-point value, u_bp = w_c * u_c + g_d, tied to the
/// stencil of one computational point in one direction. The boundary samples
/// (gamma points and their weights) are kept so g_d can be re-evaluated for
/// time-dependent Dirichlet data without rebuilding the weights.
struct BoundaryCorrection {
    int comp = -1;       // unknown index of the computational point
    int bp = -1;         // grid flat index of the boundary point
    Axis dir = Axis::X;  // direction of the corrected stencil
    CorrectionMethod method = CorrectionMethod::Line;
    double beta_face = 1.0;
    double w_c = 0.0;
    double g_d = 0.0;
    Point gamma1{};  // boundary sample(s) feeding g_d
    double gw1 = 0.0;
    Point gamma2{};
    double gw2 = 0.0;
    bool has_gamma2 = false;
};

/// Lagrange weights (g_gamma, g_1) of the two-point interpolant evaluated at
/// xi_bp. Requires xi_gamma <= xi_bp < xi_1.
std::pair<double, double> line_weights(double xi_gamma, double xi_bp, double xi_1);

/// Algorithm for picking the two boundary nodes of the RBF stencil: closest
/// points to x_bp and x_ij when distinct (separation > eps*h), otherwise the
/// pi/4-rotated ray intersection (counterclockwise first, then clockwise).
std::pair<Point, Point> select_rbf_points(const Geometry& geom, Point x_ij, Point x_bp,
                                          double h, double eps = 0.025);

/// Evaluation weights (w_ij, w_g1, w_g2) of the r^3 polyharmonic interpolant
/// with linear augmentation, u_bp = w_ij u_ij + w_g1 u_g1 + w_g2 u_g2.
std::array<double, 3> rbf_weights(Point x_ij, Point x_bp, Point x_g1, Point x_g2);

constexpr double kRbfEpsDistinct = 0.025;

}  // namespace ebfd
