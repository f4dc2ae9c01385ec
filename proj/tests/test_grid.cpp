#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "ebfd/grid.hpp"

using namespace ebfd;

TEST_CASE("cover partitions the box with n intervals along x") {
    Grid g = Grid::cover({0.0, 0.0, 1.0, 1.0}, 10);
    CHECK(g.h == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.nx == 11);
    CHECK(g.ny == 11);
    CHECK(g.x(0) == 0.0);
    CHECK(g.x(10) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.idx(3, 2) == 2 * 11 + 3);
    CHECK(g.size() == 121);
}

TEST_CASE("cover rounds the point count up for non-multiple heights") {
    Grid g = Grid::cover({0.0, 0.0, 1.0, 0.95}, 10);
    CHECK(g.h == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(g.ny == 11);  // 0.95 / 0.1 rounded up to 10 intervals
}

namespace {
GridContext square_context(int n) {
    // Circle of radius 0.4 about the box center: the zero level set stays
    // strictly inside the grid box.
    Geometry geom = Geometry::circle({0.5, 0.5}, 0.4);
    return build_context({0.0, 0.0, 1.0, 1.0}, n, geom);
}
}  // namespace

TEST_CASE("mask is 1 exactly where the level set is negative") {
    GridContext ctx = square_context(10);
    for (int j = 0; j < ctx.grid.ny; ++j)
        for (int i = 0; i < ctx.grid.nx; ++i) {
            bool in = std::hypot(ctx.grid.x(i) - 0.5, ctx.grid.y(j) - 0.5) < 0.4;
            CHECK(ctx.mask.inside(i, j) == in);
        }
    CHECK(!ctx.mask.inside(-1, 0));  // off-grid counts as outside
    CHECK(!ctx.mask.inside(0, 11));
}

TEST_CASE("classification splits inside points by neighbor count") {
    GridContext ctx = square_context(10);
    const Classification& c = ctx.cls;
    int n_b = 0, n_c = 0;
    for (int j = 0; j < c.ny; ++j)
        for (int i = 0; i < c.nx; ++i) {
            PointTag t = c.tag_at(i, j);
            if (!ctx.mask.inside(i, j)) {
                CHECK(t == PointTag::Exterior);
                CHECK(c.unknown(i, j) == -1);
                continue;
            }
            int nb = ctx.mask.inside(i - 1, j) + ctx.mask.inside(i + 1, j) +
                     ctx.mask.inside(i, j - 1) + ctx.mask.inside(i, j + 1);
            if (nb == 4) {
                CHECK(t == PointTag::Computational);
                CHECK(c.unknown(i, j) >= 0);
                ++n_c;
            } else {
                CHECK(t == PointTag::Boundary);
                CHECK(c.unknown(i, j) == -1);
                ++n_b;
            }
        }
    CHECK(n_c == c.n_comp);
    CHECK(n_b > 0);
    CHECK(static_cast<int>(c.points.size()) == c.n_comp);
    for (int k = 0; k < c.n_comp; ++k) CHECK(c.index[c.points[k]] == k);
}

TEST_CASE("perm is a permutation converting fast-in-x to fast-in-y order") {
    GridContext ctx = square_context(10);
    const Classification& c = ctx.cls;
    std::vector<int> seen(c.n_comp, 0);
    for (int k = 0; k < c.n_comp; ++k) {
        REQUIRE(c.perm[k] >= 0);
        REQUIRE(c.perm[k] < c.n_comp);
        ++seen[c.perm[k]];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    // fast-in-y position orders by (i, j) lexicographically
    for (int k = 0; k + 1 < c.n_comp; ++k) {
        int pa = c.points[k], pb = c.points[k + 1];
        int ia = pa % c.nx, ja = pa / c.nx, ib = pb % c.nx, jb = pb / c.nx;
        CHECK(std::pair(ja, ia) < std::pair(jb, ib));  // lexicographic in x
        (void)ib;
        (void)jb;
    }
}

TEST_CASE("segments are maximal runs of computational points") {
    GridContext ctx = square_context(10);
    auto segs = extract_segments(ctx.cls, Axis::X);
    CHECK(!segs.empty());
    int covered = 0;
    for (const Segment& s : segs) {
        CHECK(s.n >= 1);
        covered += s.n;
        for (int i = s.start; i < s.start + s.n; ++i)
            CHECK(ctx.cls.tag_at(i, s.line) == PointTag::Computational);
        // maximality: flanked by non-computational points (or the grid edge)
        if (s.start > 0)
            CHECK(ctx.cls.tag_at(s.start - 1, s.line) != PointTag::Computational);
        if (s.start + s.n < ctx.cls.nx)
            CHECK(ctx.cls.tag_at(s.start + s.n, s.line) != PointTag::Computational);
        CHECK(s.first_unknown == ctx.cls.unknown(s.start, s.line));
        CHECK(s.last_unknown == ctx.cls.unknown(s.start + s.n - 1, s.line));
    }
    CHECK(covered == ctx.cls.n_comp);
    auto segs_y = extract_segments(ctx.cls, Axis::Y);
    int covered_y = std::accumulate(segs_y.begin(), segs_y.end(), 0,
                                    [](int acc, const Segment& s) { return acc + s.n; });
    CHECK(covered_y == ctx.cls.n_comp);
}

TEST_CASE("classification dump uses the three tag characters") {
    GridContext ctx = square_context(8);
    std::string dump = dump_classification(ctx.cls);
    CHECK(dump.find('C') != std::string::npos);
    CHECK(dump.find('B') != std::string::npos);
    for (char ch : dump) CHECK((ch == '0' || ch == 'B' || ch == 'C' || ch == '\n'));
    CHECK(std::count(dump.begin(), dump.end(), '\n') == ctx.cls.ny);
}
