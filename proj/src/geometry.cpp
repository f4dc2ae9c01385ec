#include "ebfd/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ebfd {

double norm(Point p) { return std::hypot(p.x, p.y); }
double dist(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

Geometry Geometry::level_set(ScalarField psi, Box bounding_box) {
    Geometry g;
    g.psi_ = std::move(psi);
    g.box_ = bounding_box;
    return g;
}

Geometry Geometry::level_set(ScalarField psi, ScalarField grad_x, ScalarField grad_y,
                             Box bounding_box) {
    Geometry g = level_set(std::move(psi), bounding_box);
    g.grad_x_ = std::move(grad_x);
    g.grad_y_ = std::move(grad_y);
    return g;
}

Geometry Geometry::parametric(Curve curve, double theta_lo, double theta_hi,
                              Box bounding_box, int n_guess) {
    Geometry g;
    g.curve_ = std::move(curve);
    g.theta_lo_ = theta_lo;
    g.theta_hi_ = theta_hi;
    g.n_guess_ = n_guess;
    g.box_ = bounding_box;
    g.guess_params_.resize(n_guess);
    g.guess_samples_.resize(n_guess);
    for (int k = 0; k < n_guess; ++k) {
        double t = theta_lo + (theta_hi - theta_lo) * k / (n_guess - 1.0);
        g.guess_params_[k] = t;
        g.guess_samples_[k] = g.curve_(t);
    }
    return g;
}

Geometry Geometry::circle(Point center, double radius) {
    Geometry g;
    g.is_circle_ = true;
    g.center_ = center;
    g.radius_ = radius;
    double pad = 0.1 * radius;
    g.box_ = {center.x - radius - pad, center.y - radius - pad,
              center.x + radius + pad, center.y + radius + pad};
    g.psi_ = [center, radius](double x, double y) {
        double dx = x - center.x, dy = y - center.y;
        return dx * dx + dy * dy - radius * radius;
    };
    return g;
}

double Geometry::level_set_eval(double x, double y) const {
    if (is_circle_ || psi_) {
        if (curve_) return signed_distance({x, y});
        return psi_(x, y);
    }
    return signed_distance({x, y});
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                      double tol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw GeometryError("bracketed_root: no sign change on bracket");

    double a = lo, b = hi, fa = flo, fb = fhi;
    double x = a, fx = fa;
    for (int it = 0; it < max_iter; ++it) {
        // secant step, falling back to bisection when it leaves the bracket
        double denom = fb - fa;
        double cand = (std::abs(denom) > 0.0) ? b - fb * (b - a) / denom
                                              : 0.5 * (a + b);
        if (!(cand > a && cand < b)) cand = 0.5 * (a + b);
        x = cand;
        fx = f(x);
        if (std::abs(fx) <= tol) return x;
        if (fa * fx < 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        if (b - a < 1e-16 * (std::abs(a) + std::abs(b) + 1.0)) return 0.5 * (a + b);
    }
    if (std::abs(fx) <= 1e3 * tol) return x;
    throw GeometryError("bracketed_root: no convergence, residual " + std::to_string(fx));
}

std::optional<double> Geometry::line_intersection(Axis axis, double fixed, double lo,
                                                  double hi) const {
    if (is_circle_) {
        // analytic chord endpoints
        double c = (axis == Axis::X) ? center_.x : center_.y;
        double other = (axis == Axis::X) ? center_.y : center_.x;
        double disc = radius_ * radius_ - (fixed - other) * (fixed - other);
        if (disc < 0.0) return std::nullopt;
        double s = std::sqrt(disc);
        for (double root : {c - s, c + s})
            if (root >= lo && root <= hi) return root;
        return std::nullopt;
    }
    auto f = [&](double t) {
        return (axis == Axis::X) ? level_set_eval(t, fixed) : level_set_eval(fixed, t);
    };
    if (f(lo) * f(hi) > 0.0) return std::nullopt;
    return bracketed_root(f, lo, hi);
}

Point Geometry::closest_point(Point p) const {
    if (is_circle_) {
        Point d = p - center_;
        double r = norm(d);
        if (r == 0.0) return {center_.x + radius_, center_.y};
        return center_ + (radius_ / r) * d;
    }
    if (curve_) return closest_point_parametric(p);
    return closest_point_projection(p);
}

Point Geometry::closest_point_projection(Point p) const {
    // x <- x - psi(x) grad(psi)/|grad(psi)|^2, at most 50 steps
    double h = std::min(box_.width(), box_.height());
    double delta = 1e-6 * h;
    Point x = p;
    for (int it = 0; it < 50; ++it) {
        double v = psi_(x.x, x.y);
        if (std::abs(v) <= kRootTol) return x;
        double gx, gy;
        if (grad_x_ && grad_y_) {
            gx = grad_x_(x.x, x.y);
            gy = grad_y_(x.x, x.y);
        } else {
            gx = (psi_(x.x + delta, x.y) - psi_(x.x - delta, x.y)) / (2 * delta);
            gy = (psi_(x.x, x.y + delta) - psi_(x.x, x.y - delta)) / (2 * delta);
        }
        double g2 = gx * gx + gy * gy;
        if (g2 == 0.0)
            throw GeometryError("closest_point: vanishing level-set gradient");
        x = {x.x - v * gx / g2, x.y - v * gy / g2};
    }
    double r = psi_(x.x, x.y);
    if (std::abs(r) <= 1e-9) return x;
    throw GeometryError("closest_point: projection did not converge, psi = " +
                        std::to_string(r));
}

Point Geometry::closest_point_parametric(Point p) const {
    // best of the uniform samples, then golden-section refinement over the
    // two neighboring sub-intervals
    int best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (int k = 0; k < n_guess_; ++k) {
        double d = dist(p, guess_samples_[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    double lo = guess_params_[std::max(best - 1, 0)];
    double hi = guess_params_[std::min(best + 1, n_guess_ - 1)];
    auto d2 = [&](double t) {
        Point q = curve_(t);
        double dx = q.x - p.x, dy = q.y - p.y;
        return dx * dx + dy * dy;
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = d2(c), fd = d2(d);
    while (b - a > 1e-13 * (theta_hi_ - theta_lo_) + 1e-15) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = d2(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = d2(d);
        }
    }
    return curve_(0.5 * (a + b));
}

double Geometry::signed_distance(Point p) const {
    if (is_circle_) return dist(p, center_) - radius_;
    if (!curve_) {
        Point q = closest_point(p);
        double mag = dist(p, q);
        return psi_(p.x, p.y) < 0.0 ? -mag : mag;
    }
    // parameter of the closest point, recovered for the tangent evaluation
    Point q = closest_point_parametric(p);
    double mag = dist(p, q);
    // orientation: cross product of normal (p -> q) with the curve tangent
    int best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (int k = 0; k < n_guess_; ++k) {
        double d = dist(q, guess_samples_[k]);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    double t = guess_params_[best];
    double dt = 1e-6 * (theta_hi_ - theta_lo_);
    Point tp = curve_(std::min(t + dt, theta_hi_));
    Point tm = curve_(std::max(t - dt, theta_lo_));
    Point tau = tp - tm;
    Point n = q - p;
    double cross = n.x * tau.y - n.y * tau.x;
    // counterclockwise curve encloses the interior on the left of tau, so for
    // an inside point the outward normal n = q - p gives cross(n, tau) > 0
    double sign = (cross > 0.0) ? -1.0 : 1.0;
    return sign * mag;
}

Point Geometry::rotated_ray_intersection(Point x_bp, Point x_g1, double march_step,
                                         bool clockwise) const {
    Point d = x_g1 - x_bp;
    double len = norm(d);
    if (len == 0.0)
        throw GeometryError("rotated_ray_intersection: coincident points");
    d = (1.0 / len) * d;
    const double c = std::sqrt(0.5);  // cos(pi/4) = sin(pi/4)
    Point dir = clockwise ? Point{c * d.x + c * d.y, -c * d.x + c * d.y}
                          : Point{c * d.x - c * d.y, c * d.x + c * d.y};

    double diag = std::hypot(box_.width(), box_.height());
    double step = (march_step > 0.0) ? march_step : diag / 2000.0;
    auto f = [&](double t) {
        Point p = x_bp + t * dir;
        return level_set_eval(p.x, p.y);
    };
    double t_prev = 0.0;
    double f_prev = f(0.0);
    for (double t = step; t <= diag; t += step) {
        double ft = f(t);
        if (f_prev < 0.0 && ft >= 0.0) {
            double root = bracketed_root(f, t_prev, t);
            return x_bp + root * dir;
        }
        t_prev = t;
        f_prev = ft;
    }
    throw GeometryError("rotated_ray_intersection: ray does not meet the boundary");
}

double approx_boundary_distance(double psi_in, double psi_out, double h) {
    if (!(psi_in < 0.0 && psi_out >= 0.0))
        throw GeometryError("approx_boundary_distance: samples do not straddle the boundary");
    double denom = psi_in - psi_out;
    if (denom == 0.0) throw GeometryError("approx_boundary_distance: degenerate samples");
    return psi_in / denom * h;
}

}  // namespace ebfd
