#include "ebfd/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace ebfd {

double face_coefficient(const ProblemSpec& problem, const Grid& grid, int i, int j,
                        Axis axis) {
    if (problem.beta_is_constant) return std::abs(problem.beta_const);
    double x = grid.x(i), y = grid.y(j);
    if (axis == Axis::X)
        return problem.beta(x + 0.5 * grid.h, y);
    return problem.beta(x, y + 0.5 * grid.h);
}

namespace {

// Horizontal/vertical distance from the boundary point to the interface,
// crossing between bp (inside) and out (outside).
double boundary_distance(const Geometry& geom, double h, Point bp, Point out,
                         Axis axis) {
    double psi_in = geom.level_set_eval(bp.x, bp.y);
    double psi_out = geom.level_set_eval(out.x, out.y);
    if (geom.is_parametric())
        return approx_boundary_distance(psi_in, psi_out, h);
    double fixed = (axis == Axis::X) ? bp.y : bp.x;
    double c_bp = (axis == Axis::X) ? bp.x : bp.y;
    double c_out = (axis == Axis::X) ? out.x : out.y;
    auto root = geom.line_intersection(axis, fixed, std::min(c_bp, c_out),
                                       std::max(c_bp, c_out));
    if (root) return std::abs(c_bp - *root);
    return approx_boundary_distance(psi_in, psi_out, h);
}

double eval_gd(const BoundaryCorrection& c, const ProblemSpec& problem, double t) {
    double g = c.gw1 * problem.dirichlet(c.gamma1.x, c.gamma1.y, t);
    if (c.has_gamma2) g += c.gw2 * problem.dirichlet(c.gamma2.x, c.gamma2.y, t);
    return g;
}

}  // namespace

OperatorSystem assemble(const ProblemSpec& problem, const GridContext& ctx,
                        Strategy strategy, double t) {
    const Grid& grid = ctx.grid;
    const Mask& mask = ctx.mask;
    const Classification& cls = ctx.cls;
    const Geometry& geom = problem.geometry;
    const double h = grid.h;
    const int n_comp = cls.n_comp;
    if (n_comp < 1) throw AssemblyError("no computational points on this grid");

    OperatorSystem sys;
    sys.strategy = strategy;
    sys.beta_is_constant = problem.beta_is_constant;
    sys.beta_scale = problem.beta_is_constant ? std::abs(problem.beta_const) : 1.0;
    sys.beta_sign =
        (problem.beta_is_constant && problem.beta_const < 0.0) ? -1.0 : 1.0;
    sys.h = h;

    std::vector<SparseSym::Triplet> trips;
    trips.reserve(static_cast<std::size_t>(n_comp) * 5);
    // per-direction diagonal in the unit normalization (interior value 2),
    // meaningful for constant beta only
    std::vector<double> diag_x(n_comp, 2.0), diag_y(n_comp, 2.0);

    struct Neighbor {
        int di, dj;
        Axis axis;
    };
    constexpr Neighbor kNeighbors[4] = {
        {-1, 0, Axis::X}, {1, 0, Axis::X}, {0, -1, Axis::Y}, {0, 1, Axis::Y}};

    for (int k = 0; k < n_comp; ++k) {
        int flat = cls.points[k];
        int i = flat % grid.nx, j = flat / grid.nx;
        Point xc{grid.x(i), grid.y(j)};
        double diag = 0.0;

        for (const Neighbor& nb : kNeighbors) {
            int in = i + nb.di, jn = j + nb.dj;
            // face midpoint indexed from the lower end of the edge
            double bf = (nb.di + nb.dj < 0)
                            ? face_coefficient(problem, grid, in, jn, nb.axis)
                            : face_coefficient(problem, grid, i, j, nb.axis);
            diag += bf;
            PointTag tag = cls.tag_at(in, jn);
            if (tag == PointTag::Computational) {
                trips.push_back({k, cls.unknown(in, jn), -bf});
                continue;
            }
            if (tag != PointTag::Boundary)
                throw AssemblyError("computational point with exterior neighbor");

            Point xb{grid.x(in), grid.y(jn)};
            int io = i + 2 * nb.di, jo = j + 2 * nb.dj;
            bool outward_outside = io < 0 || io >= grid.nx || jo < 0 || jo >= grid.ny ||
                                   !mask.inside(io, jo);

            BoundaryCorrection corr;
            corr.comp = k;
            corr.bp = grid.idx(in, jn);
            corr.dir = nb.axis;
            corr.beta_face = bf;

            if (strategy == Strategy::Mixed && outward_outside) {
                Point xo{grid.x(io), grid.y(jo)};
                double d = boundary_distance(geom, h, xb, xo, nb.axis);
                auto [g_gamma, g_1] = line_weights(-d, 0.0, h);
                corr.method = CorrectionMethod::Line;
                corr.w_c = g_1;
                corr.gamma1 = {xb.x + nb.di * d, xb.y + nb.dj * d};
                corr.gw1 = g_gamma;
            } else if (Point g0 = geom.closest_point(xb); dist(xb, g0) <= 1e-9 * h) {
                // The point lies on the boundary to rounding accuracy: its value
                // is the boundary datum itself.
                corr.method = CorrectionMethod::Line;
                corr.w_c = 0.0;
                corr.gamma1 = g0;
                corr.gw1 = 1.0;
            } else {
                auto [g1, g2] = select_rbf_points(geom, xc, xb, h);
                std::array<double, 3> w;
                try {
                    w = rbf_weights(xc, xb, g1, g2);
                } catch (const InterpolationError&) {
                    // Collinear stencil: replace the second boundary point by a
                    // rotated-ray intersection (either rotation sense) and retry.
                    bool ok = false;
                    for (bool cw : {false, true}) {
                        try {
                            g2 = geom.rotated_ray_intersection(xb, g1, 0.25 * h, cw);
                            w = rbf_weights(xc, xb, g1, g2);
                            ok = true;
                            break;
                        } catch (const std::exception&) {
                        }
                    }
                    if (!ok)
                        throw AssemblyError("degenerate interpolation stencil at boundary point (" +
                                            std::to_string(xb.x) + ", " + std::to_string(xb.y) + ")");
                }
                corr.method = CorrectionMethod::Rbf;
                corr.w_c = w[0];
                corr.gamma1 = g1;
                corr.gw1 = w[1];
                corr.gamma2 = g2;
                corr.gw2 = w[2];
                corr.has_gamma2 = true;
            }
            corr.g_d = eval_gd(corr, problem, t);
            diag -= corr.w_c * bf;
            (nb.axis == Axis::X ? diag_x : diag_y)[k] -= corr.w_c;
            sys.corrections.push_back(corr);
        }
        trips.push_back({k, k, diag});
    }
    sys.a = SparseSym::from_triplets(n_comp, n_comp, std::move(trips));

    sys.seg_x = extract_segments(cls, Axis::X);
    sys.seg_y = extract_segments(cls, Axis::Y);
    if (problem.beta_is_constant) {
        auto fill = [](std::vector<Segment>& segs, const std::vector<double>& d) {
            for (Segment& s : segs) {
                if (s.n == 1) {
                    s.a = d[s.first_unknown];
                    s.b = 2.0;
                } else {
                    s.a = d[s.first_unknown];
                    s.b = d[s.last_unknown];
                }
            }
        };
        fill(sys.seg_x, diag_x);
        fill(sys.seg_y, diag_y);
    }

    refresh_rhs(sys, problem, ctx, t);
    return sys;
}

void refresh_rhs(OperatorSystem& sys, const ProblemSpec& problem, const GridContext& ctx,
                 double t) {
    const Grid& grid = ctx.grid;
    const int n = sys.a.rows();
    sys.b_source.assign(n, 0.0);
    sys.b_boundary.assign(n, 0.0);
    double h2 = sys.h * sys.h;
    for (int k = 0; k < n; ++k) {
        int flat = ctx.cls.points[k];
        int i = flat % grid.nx, j = flat / grid.nx;
        sys.b_source[k] = -h2 * sys.beta_sign * problem.source(grid.x(i), grid.y(j), t);
    }
    for (BoundaryCorrection& c : sys.corrections) {
        c.g_d = eval_gd(c, problem, t);
        sys.b_boundary[c.comp] += c.beta_face * c.g_d;
    }
    sys.b.resize(n);
    for (int k = 0; k < n; ++k) sys.b[k] = sys.b_source[k] + sys.b_boundary[k];
}

std::vector<std::pair<int, double>> reconstruct_boundary_values(
    const OperatorSystem& sys, const Classification& cls, std::span<const double> u) {
    // When a boundary point is referenced from several directions it carries
    // one correction per direction. Line-by-line relations (exact intersection,
    // one-dimensional) are the primary rule of the mixed strategy, so they take
    // precedence over RBF relations when reconstructing the point value;
    // within the same kind the reconstructions are averaged.
    struct Slot {
        double sum = 0.0;
        int count = 0;
        bool line = false;
    };
    std::map<int, Slot> acc;  // bp grid index -> accumulator
    for (const BoundaryCorrection& c : sys.corrections) {
        double v = c.w_c * u[static_cast<std::size_t>(c.comp)] + c.g_d;
        auto& slot = acc[c.bp];
        bool line = c.method == CorrectionMethod::Line;
        if (line && !slot.line) slot = Slot{0.0, 0, true};
        if (line == slot.line) {
            slot.sum += v;
            slot.count += 1;
        }
    }
    std::vector<std::pair<int, double>> out;
    out.reserve(acc.size());
    for (auto& [bp, slot] : acc) out.emplace_back(bp, slot.sum / slot.count);
    (void)cls;
    return out;
}

CertificationReport check_operator(const OperatorSystem& sys) {
    CertificationReport rep;
    rep.diag_dominant = diagonally_dominant(sys.a);
    if (!sys.beta_is_constant) {
        rep.verdict = Certification::Skipped;
        return rep;
    }
    auto convert = [](const std::vector<Segment>& segs) {
        std::vector<SegmentAB> out;
        out.reserve(segs.size());
        for (const Segment& s : segs) out.push_back({s.n, s.a, s.b});
        return out;
    };
    auto sx = convert(sys.seg_x);
    auto sy = convert(sys.seg_y);
    rep.x = check_segments(sx);
    rep.y = check_segments(sy);
    rep.verdict = (rep.x.certified && rep.y.certified) ? Certification::Certified
                                                       : Certification::NotCertified;
    return rep;
}

}  // namespace ebfd
