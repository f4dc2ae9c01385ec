#include "ebfd/problems.hpp"

#include <cmath>

#include "ebfd/timestepping.hpp"

namespace ebfd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kKappa77 = 31.4227941922;

BenchmarkProblem make_glass() {
    BenchmarkProblem p;
    p.name = "glass";
    p.box = {0.0, 0.0, 1.0, 1.0};
    auto psi = [](double x, double y) {
        double s1 = (x - 0.25) * (x - 0.25) + (y - 0.5) * (y - 0.5);
        double s2 = (x - 0.75) * (x - 0.75) + (y - 0.5) * (y - 0.5);
        return 0.5 - std::exp(-20.0 * s1) - std::exp(-20.0 * s2);
    };
    auto grad = [](double x, double y) {
        double s1 = (x - 0.25) * (x - 0.25) + (y - 0.5) * (y - 0.5);
        double s2 = (x - 0.75) * (x - 0.75) + (y - 0.5) * (y - 0.5);
        double e1 = std::exp(-20.0 * s1), e2 = std::exp(-20.0 * s2);
        return Point{40.0 * (x - 0.25) * e1 + 40.0 * (x - 0.75) * e2,
                     40.0 * (y - 0.5) * e1 + 40.0 * (y - 0.5) * e2};
    };
    p.spec.geometry = Geometry::level_set(psi, p.box);
    p.spec.beta_const = -8.0;
    p.spec.beta_is_constant = true;
    p.spec.source = [](double x, double y, double) {
        double s1 = (x - 0.25) * (x - 0.25) + (y - 0.5) * (y - 0.5);
        double s2 = (x - 0.75) * (x - 0.75) + (y - 0.5) * (y - 0.5);
        double lap = -((1600.0 * s1 - 80.0) * std::exp(-20.0 * s1) +
                       (1600.0 * s2 - 80.0) * std::exp(-20.0 * s2));
        return -8.0 * lap;
    };
    p.spec.dirichlet = [psi](double x, double y, double) { return psi(x, y); };
    p.exact = [psi](double x, double y, double) { return psi(x, y); };
    p.exact_grad = [grad](double x, double y, double) { return grad(x, y); };
    return p;
}

BenchmarkProblem make_tilted_square() {
    BenchmarkProblem p;
    p.name = "tilted_square";
    p.box = {-3.0, -3.0, 3.0, 3.0};
    const double px = 0.691, py = 0.357, th = 0.313 * kPi;
    const double ct = std::cos(th), st = std::sin(th);
    auto psi = [=](double x, double y) {
        double xt = (x - px) * ct - (y - py) * st;
        double yt = (x - px) * st + (y - py) * ct;
        return std::max(std::abs(xt - yt), std::abs(xt + yt)) - 1.0;
    };
    p.spec.geometry = Geometry::level_set(psi, p.box);
    p.spec.beta_const = 1.0;
    p.spec.beta_is_constant = true;
    auto u = [](double x, double y) { return std::exp(-x * x - y * y); };
    p.spec.source = [u](double x, double y, double) {
        return (4.0 * (x * x + y * y) - 4.0) * u(x, y);
    };
    p.spec.dirichlet = [u](double x, double y, double) { return u(x, y); };
    p.exact = [u](double x, double y, double) { return u(x, y); };
    p.exact_grad = [u](double x, double y, double) {
        return Point{-2.0 * x * u(x, y), -2.0 * y * u(x, y)};
    };
    return p;
}

BenchmarkProblem make_bone() {
    BenchmarkProblem p;
    p.name = "bone";
    p.box = {-2.0, -1.0, 2.0, 3.0};
    auto curve = [](double th) {
        return Point{0.6 * std::cos(th) - 0.3 * std::cos(3.0 * th),
                     1.5 + 0.7 * std::sin(th) - 0.07 * std::sin(3.0 * th) +
                         0.2 * std::sin(7.0 * th)};
    };
    p.spec.geometry = Geometry::parametric(curve, 0.0, 2.0 * kPi, p.box);
    p.spec.beta_is_constant = false;
    p.spec.beta = [](double x, double y) { return 2.0 + std::sin(x * y); };
    auto u = [](double x, double y) {
        return std::exp(x) * (x * x * std::sin(y) + y * y);
    };
    auto ux = [](double x, double y) {
        return std::exp(x) * ((x * x + 2.0 * x) * std::sin(y) + y * y);
    };
    auto uy = [](double x, double y) {
        return std::exp(x) * (x * x * std::cos(y) + 2.0 * y);
    };
    p.spec.source = [ux, uy](double x, double y, double) {
        double lap =
            std::exp(x) * ((4.0 * x + 2.0) * std::sin(y) + y * y + 2.0);
        double bx = y * std::cos(x * y), by = x * std::cos(x * y);
        return (2.0 + std::sin(x * y)) * lap + bx * ux(x, y) + by * uy(x, y);
    };
    p.spec.dirichlet = [u](double x, double y, double) { return u(x, y); };
    p.exact = [u](double x, double y, double) { return u(x, y); };
    p.exact_grad = [ux, uy](double x, double y, double) {
        return Point{ux(x, y), uy(x, y)};
    };
    return p;
}

BenchmarkProblem make_star() {
    BenchmarkProblem p;
    p.name = "star";
    p.box = {-1.0, -1.0, 1.0, 1.0};
    const double c = 0.02 * std::sqrt(5.0);
    auto curve = [c](double th) {
        double r = 0.5 + 0.2 * std::sin(5.0 * th);
        return Point{c + r * std::cos(th), c + r * std::sin(th)};
    };
    p.spec.geometry = Geometry::parametric(curve, 0.0, 2.0 * kPi, p.box, 2000);
    p.spec.beta_const = 1.0;
    p.spec.beta_is_constant = true;
    p.spec.source = [](double, double, double) { return 0.0; };  // set by harness (hat)
    p.spec.dirichlet = [](double, double, double) { return 0.0; };
    p.helmholtz = true;
    p.omega = 50.0;
    return p;
}

BenchmarkProblem make_heat_disk() {
    BenchmarkProblem p;
    p.name = "heat_disk";
    p.box = {-1.0, -1.0, 1.0, 1.0};
    p.spec.geometry = Geometry::circle({0.0, 0.0}, 0.5);
    p.spec.beta_is_constant = false;
    p.spec.beta = [](double x, double y) { return 0.25 - x * x - y * y; };
    p.spec.source = [](double x, double y, double t) {
        return std::exp(-t) * (7.0 * (x * x + y * y) - 0.75);
    };
    p.spec.dirichlet = [](double, double, double) { return 0.0; };
    p.exact = [](double x, double y, double t) {
        return std::exp(-t) * (x * x + y * y - 0.25);
    };
    p.exact_grad = [](double x, double y, double t) {
        return Point{2.0 * x * std::exp(-t), 2.0 * y * std::exp(-t)};
    };
    return p;
}

BenchmarkProblem make_wave_disk() {
    BenchmarkProblem p;
    p.name = "wave_disk";
    p.box = {-1.1, -1.1, 1.1, 1.1};
    p.spec.geometry = Geometry::circle({0.0, 0.0}, 1.0);
    p.spec.beta_const = 1.0;
    p.spec.beta_is_constant = true;
    p.spec.source = [](double, double, double) { return 0.0; };
    p.spec.dirichlet = [](double, double, double) { return 0.0; };
    p.exact = [](double x, double y, double t) {
        return standing_mode(std::hypot(x, y), std::atan2(y, x), t, 7, kKappa77);
    };
    return p;
}

}  // namespace

BenchmarkProblem make_problem(const std::string& name) {
    if (name == "glass") return make_glass();
    if (name == "tilted_square") return make_tilted_square();
    if (name == "bone") return make_bone();
    if (name == "star") return make_star();
    if (name == "heat_disk") return make_heat_disk();
    if (name == "wave_disk") return make_wave_disk();
    throw AssemblyError("unknown problem: " + name);
}

BenchmarkProblem make_ellipse_problem(double a) {
    BenchmarkProblem p;
    p.name = "ellipse";
    p.box = {-2.2, -2.2, 2.2, 2.2};
    auto psi = [a](double x, double y) {
        return x * x / (a * a) + a * a * y * y - 1.0;
    };
    p.spec.geometry = Geometry::level_set(psi, p.box);
    p.spec.beta_const = 1.0;
    p.spec.beta_is_constant = true;
    p.spec.source = [](double, double, double) { return 3.0; };
    p.spec.dirichlet = [](double, double, double) { return 0.0; };
    // Laplace(c * psi) = c (2/a^2 + 2 a^2) = 3
    const double c = 3.0 / (2.0 / (a * a) + 2.0 * a * a);
    p.exact = [psi, c](double x, double y, double) { return c * psi(x, y); };
    p.exact_grad = [a, c](double x, double y, double) {
        return Point{2.0 * c * x / (a * a), 2.0 * c * a * a * y};
    };
    return p;
}

BenchmarkProblem make_rotated_ellipse_problem(double alpha) {
    BenchmarkProblem p;
    p.name = "rotated_ellipse";
    p.box = {-5.0, -5.0, 5.0, 5.0};
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    auto psi = [ca, sa](double x, double y) {
        double xr = x * ca - y * sa;
        double yr = x * sa + y * ca;
        return xr * xr / 16.0 + yr * yr / 4.0 - 1.0;
    };
    p.spec.geometry = Geometry::level_set(psi, p.box);
    p.spec.beta_const = 1.0;
    p.spec.beta_is_constant = true;
    p.spec.source = [](double, double, double) { return 3.0; };
    p.spec.dirichlet = [](double, double, double) { return 0.0; };
    // Laplace(c * psi) = c (2/16 + 2/4) = 3
    const double c = 24.0 / 5.0;
    p.exact = [psi, c](double x, double y, double) { return c * psi(x, y); };
    p.exact_grad = [ca, sa, c](double x, double y, double) {
        double xr = x * ca - y * sa, yr = x * sa + y * ca;
        return Point{c * (xr * ca / 8.0 + yr * sa / 2.0),
                     c * (-xr * sa / 8.0 + yr * ca / 2.0)};
    };
    return p;
}

}  // namespace ebfd
