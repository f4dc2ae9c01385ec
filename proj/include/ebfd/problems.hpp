#pragma once

#include <string>

#include "ebfd/assembly.hpp"

namespace ebfd {

/// A named benchmark setup: problem data plus (when available) the exact
/// solution and gradient for error measurement. Time-independent problems
/// ignore the t argument.
struct BenchmarkProblem {
    std::string name;
    ProblemSpec spec;
    Box box;  // grid box
    std::function<double(double, double, double)> exact;
    std::function<Point(double, double, double)> exact_grad;
    // Helmholtz extras
    bool helmholtz = false;
    double omega = 0.0;
};

/// Built-in problems: "glass", "tilted_square", "bone", "star", "heat_disk",
/// "wave_disk".
BenchmarkProblem make_problem(const std::string& name);

/// Ellipse x^2/a^2 + a^2 y^2 = 1 (area fixed), f = 3, zero boundary data.
BenchmarkProblem make_ellipse_problem(double a);

/// Ellipse with semiaxes 4 and 2 rotated by alpha, f = 3, zero boundary data.
BenchmarkProblem make_rotated_ellipse_problem(double alpha);

}  // namespace ebfd
