#include "ebfd/grid.hpp"

#include <cmath>

namespace ebfd {

Grid Grid::cover(const Box& box, int n) {
    if (n < 2) throw GridError("Grid::cover: need at least 2 intervals");
    Grid g;
    g.x_lo = box.x_lo;
    g.y_lo = box.y_lo;
    g.h = box.width() / n;
    g.nx = n + 1;
    g.ny = static_cast<int>(std::ceil(box.height() / g.h - 1e-12)) + 1;
    return g;
}

Mask build_mask(const Grid& grid, const Geometry& geom) {
    Mask mask;
    mask.nx = grid.nx;
    mask.ny = grid.ny;
    mask.m.assign(static_cast<size_t>(grid.nx) * grid.ny, 0);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (geom.level_set_eval(grid.x(i), grid.y(j)) < 0.0)
                mask.m[grid.idx(i, j)] = 1;
    return mask;
}

Classification classify(const Mask& mask) {
    const int nx = mask.nx, ny = mask.ny;
    Classification cls;
    cls.nx = nx;
    cls.ny = ny;
    cls.tag.assign(static_cast<size_t>(nx) * ny, PointTag::Exterior);
    cls.index.assign(static_cast<size_t>(nx) * ny, -1);

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (mask.at(i, j) != 1) continue;
            if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1)
                throw GridError("classify: geometry touches the grid boundary");
            int nb = mask.at(i + 1, j) + mask.at(i - 1, j) + mask.at(i, j + 1) +
                     mask.at(i, j - 1);
            cls.tag[static_cast<size_t>(j) * nx + i] =
                (nb == 4) ? PointTag::Computational : PointTag::Boundary;
        }
    }

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (cls.tag_at(i, j) == PointTag::Computational) {
                cls.index[static_cast<size_t>(j) * nx + i] = cls.n_comp++;
                cls.points.push_back(j * nx + i);
            }

    // permutation to the fast-in-y ordering
    cls.perm.assign(cls.n_comp, -1);
    int pos = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            int k = cls.unknown(i, j);
            if (k >= 0) cls.perm[k] = pos++;
        }
    return cls;
}

std::vector<Segment> extract_segments(const Classification& cls, Axis dir) {
    std::vector<Segment> segs;
    const int nx = cls.nx, ny = cls.ny;
    int n_lines = (dir == Axis::X) ? ny : nx;
    int line_len = (dir == Axis::X) ? nx : ny;
    for (int line = 0; line < n_lines; ++line) {
        int run = 0;
        for (int t = 0; t <= line_len; ++t) {
            int i = (dir == Axis::X) ? t : line;
            int j = (dir == Axis::X) ? line : t;
            bool comp = t < line_len && cls.tag_at(i, j) == PointTag::Computational;
            if (comp) {
                ++run;
            } else if (run > 0) {
                Segment s;
                s.dir = dir;
                s.line = line;
                s.start = t - run;
                s.n = run;
                int i0 = (dir == Axis::X) ? s.start : line;
                int j0 = (dir == Axis::X) ? line : s.start;
                int i1 = (dir == Axis::X) ? t - 1 : line;
                int j1 = (dir == Axis::X) ? line : t - 1;
                s.first_unknown = cls.unknown(i0, j0);
                s.last_unknown = cls.unknown(i1, j1);
                segs.push_back(s);
                run = 0;
            }
        }
    }
    return segs;
}

std::string dump_classification(const Classification& cls) {
    std::string out;
    out.reserve(static_cast<size_t>(cls.nx + 1) * cls.ny);
    for (int j = cls.ny - 1; j >= 0; --j) {
        for (int i = 0; i < cls.nx; ++i) {
            switch (cls.tag_at(i, j)) {
                case PointTag::Exterior: out += '0'; break;
                case PointTag::Boundary: out += 'B'; break;
                case PointTag::Computational: out += 'C'; break;
            }
        }
        out += '\n';
    }
    return out;
}

GridContext build_context(const Box& box, int n, const Geometry& geom) {
    GridContext ctx;
    ctx.grid = Grid::cover(box, n);
    ctx.mask = build_mask(ctx.grid, geom);
    ctx.cls = classify(ctx.mask);
    return ctx;
}

}  // namespace ebfd
