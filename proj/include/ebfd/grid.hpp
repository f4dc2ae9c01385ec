#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebfd/geometry.hpp"

namespace ebfd {

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform Cartesian grid with nodes (x_lo + i*h, y_lo + j*h),
/// 0 <= i < nx, 0 <= j < ny.
struct Grid {
    double x_lo = 0.0, y_lo = 0.0;
    double h = 1.0;
    int nx = 0, ny = 0;

    double x(int i) const { return x_lo + i * h; }
    double y(int j) const { return y_lo + j * h; }
    int idx(int i, int j) const { return j * nx + i; }
    int size() const { return nx * ny; }

    /// Partition `box` with n intervals along x; if the box height is not an
    /// integer multiple of h the point count is rounded up (the box extends).
    static Grid cover(const Box& box, int n);
};

struct Mask {
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> m;

    std::uint8_t at(int i, int j) const { return m[static_cast<size_t>(j) * nx + i]; }
    bool inside(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && at(i, j) == 1;
    }
};

enum class PointTag : std::uint8_t { Exterior = 0, Boundary = 1, Computational = 2 };

/// Point classification plus the unknown index maps. Unknown k corresponds
/// to grid point points[k]; the lexicographic order is fast in x. perm maps a
/// fast-in-x unknown index to its position in the fast-in-y ordering.
struct Classification {
    int nx = 0, ny = 0;
    std::vector<PointTag> tag;
    std::vector<int> index;   // grid flat index -> unknown k, or -1
    std::vector<int> points;  // unknown k -> grid flat index
    std::vector<int> perm;    // fast-in-x k -> fast-in-y position
    int n_comp = 0;

    PointTag tag_at(int i, int j) const { return tag[static_cast<size_t>(j) * nx + i]; }
    int unknown(int i, int j) const { return index[static_cast<size_t>(j) * nx + i]; }
};

/// Maximal run of consecutive computational points along one grid line.
/// a and b are the endpoint diagonal values in the unit-normalized form
/// (interior diagonal 2); they are filled by assembly for constant beta.
struct Segment {
    Axis dir;
    int line = 0;   // j for x-segments, i for y-segments
    int start = 0;  // i (or j) of the first computational point
    int n = 0;
    int first_unknown = 0;  // lexicographic unknown id of the first point
    int last_unknown = 0;
    double a = 2.0, b = 2.0;
};

Mask build_mask(const Grid& grid, const Geometry& geom);
Classification classify(const Mask& mask);
std::vector<Segment> extract_segments(const Classification& cls, Axis dir);

/// ASCII dump, one row per grid line (top row = largest j): '0' exterior,
/// 'B' boundary, 'C' computational.
std::string dump_classification(const Classification& cls);

struct GridContext {
    Grid grid;
    Mask mask;
    Classification cls;
};

GridContext build_context(const Box& box, int n, const Geometry& geom);

}  // namespace ebfd
