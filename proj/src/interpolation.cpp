#include "ebfd/interpolation.hpp"

#include <cmath>

namespace ebfd {

std::pair<double, double> line_weights(double xi_gamma, double xi_bp, double xi_1) {
    if (!(xi_gamma <= xi_bp && xi_bp < xi_1))
        throw InterpolationError("line_weights: requires xi_gamma <= xi_bp < xi_1");
    double g_gamma = (xi_bp - xi_1) / (xi_gamma - xi_1);
    double g_1 = (xi_bp - xi_gamma) / (xi_1 - xi_gamma);
    return {g_gamma, g_1};
}

std::pair<Point, Point> select_rbf_points(const Geometry& geom, Point x_ij, Point x_bp,
                                          double h, double eps) {
    Point g1 = geom.closest_point(x_bp);
    Point g2 = geom.closest_point(x_ij);
    if (dist(g1, g2) > eps * h) return {g1, g2};
    try {
        return {g1, geom.rotated_ray_intersection(x_bp, g1, 0.25 * h, false)};
    } catch (const GeometryError&) {
        return {g1, geom.rotated_ray_intersection(x_bp, g1, 0.25 * h, true)};
    }
}

namespace {

inline double phi(double r) { return r * r * r; }

// partial-pivoted elimination on the 6x6 saddle system
void solve6(double B[6][6], double rhs[6], double out[6]) {
    int piv[6] = {0, 1, 2, 3, 4, 5};
    double max_pivot = 0.0;
    for (int col = 0; col < 6; ++col) {
        int best = col;
        for (int r = col + 1; r < 6; ++r)
            if (std::abs(B[piv[r]][col]) > std::abs(B[piv[best]][col])) best = r;
        std::swap(piv[col], piv[best]);
        double p = B[piv[col]][col];
        max_pivot = std::max(max_pivot, std::abs(p));
        if (std::abs(p) <= 1e-12 * max_pivot)
            throw InterpolationError("rbf_weights: degenerate stencil (singular system)");
        for (int r = col + 1; r < 6; ++r) {
            double m = B[piv[r]][col] / p;
            for (int c = col; c < 6; ++c) B[piv[r]][c] -= m * B[piv[col]][c];
            rhs[piv[r]] -= m * rhs[piv[col]];
        }
    }
    for (int col = 5; col >= 0; --col) {
        double s = rhs[piv[col]];
        for (int c = col + 1; c < 6; ++c) s -= B[piv[col]][c] * out[c];
        out[col] = s / B[piv[col]][col];
    }
}

}  // namespace

std::array<double, 3> rbf_weights(Point x_ij, Point x_bp, Point x_g1, Point x_g2) {
    const Point nodes[3] = {x_ij, x_g1, x_g2};
    double B[6][6] = {};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) B[r][c] = phi(dist(nodes[r], nodes[c]));
        B[r][3] = B[3][r] = 1.0;
        B[r][4] = B[4][r] = nodes[r].x;
        B[r][5] = B[5][r] = nodes[r].y;
    }
    // weights are B^{-1} (phi_bp; p_bp) restricted to the data rows
    double rhs[6] = {phi(dist(x_bp, x_ij)), phi(dist(x_bp, x_g1)), phi(dist(x_bp, x_g2)),
                     1.0, x_bp.x, x_bp.y};
    double v[6];
    solve6(B, rhs, v);
    return {v[0], v[1], v[2]};
}

}  // namespace ebfd
