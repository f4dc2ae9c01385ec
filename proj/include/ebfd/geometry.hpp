#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebfd {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
inline Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
double norm(Point p);
double dist(Point p, Point q);

struct Box {
    double x_lo = 0.0, y_lo = 0.0;
    double x_hi = 1.0, y_hi = 1.0;

    double width() const { return x_hi - x_lo; }
    double height() const { return y_hi - y_lo; }
    bool contains(double x, double y) const {
        return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    }
};

enum class Axis { X, Y };

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Domain description. The interior of the domain is psi(x,y) < 0. For
/// parametric curves psi is the signed distance, computed from the closest
/// point on the curve with the orientation fixed by the tangent direction
/// (counterclockwise curves enclose the interior).
class Geometry {
  public:
    using ScalarField = std::function<double(double, double)>;
    using Curve = std::function<Point(double)>;

    static Geometry level_set(ScalarField psi, Box bounding_box);
    static Geometry level_set(ScalarField psi, ScalarField grad_x, ScalarField grad_y,
                              Box bounding_box);
    static Geometry parametric(Curve curve, double theta_lo, double theta_hi,
                               Box bounding_box, int n_guess = 1000);
    static Geometry circle(Point center, double radius);

    double level_set_eval(double x, double y) const;
    bool inside(double x, double y) const { return level_set_eval(x, y) < 0.0; }

    /// Root of psi along a grid line, restricted to [lo, hi]. Empty when psi
    /// does not change sign over the bracket.
    std::optional<double> line_intersection(Axis axis, double fixed, double lo,
                                            double hi) const;

    Point closest_point(Point p) const;
    double signed_distance(Point p) const;

    /// Intersection of the ray from x_bp through rot(pi/4) * (x_g1 - x_bp)
    /// with the boundary. `clockwise` flips the rotation direction.
    Point rotated_ray_intersection(Point x_bp, Point x_g1, double march_step = 0.0,
                                   bool clockwise = false) const;

    const Box& bounding_box() const { return box_; }
    bool is_parametric() const { return static_cast<bool>(curve_); }
    bool has_exact_distance() const { return is_parametric() || is_circle_; }

    static constexpr double kRootTol = 1e-12;
    static constexpr int kMaxRootIter = 100;

    Geometry() = default;  // empty; assign from a factory before use

  private:
    Point closest_point_projection(Point p) const;
    Point closest_point_parametric(Point p) const;

    ScalarField psi_;
    ScalarField grad_x_, grad_y_;
    Box box_;

    Curve curve_;
    double theta_lo_ = 0.0, theta_hi_ = 0.0;
    int n_guess_ = 1000;
    std::vector<Point> guess_samples_;
    std::vector<double> guess_params_;

    bool is_circle_ = false;
    Point center_;
    double radius_ = 0.0;
};

/// Distance from the inner sample to the boundary, from two level-set values
/// straddling it: psi_in/(psi_in - psi_out) * h.
double approx_boundary_distance(double psi_in, double psi_out, double h);

/// Root of a scalar function on a bracket with a guaranteed sign change.
/// Secant steps with bisection fallback; |f| <= tol at the result.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      double tol = Geometry::kRootTol, int max_iter = Geometry::kMaxRootIter);

}  // namespace ebfd
