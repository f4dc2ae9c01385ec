#pragma once

#include <span>
#include <vector>

#include "ebfd/sparse.hpp"

namespace ebfd {

/// Normalized data for one grid-line segment: a tridiagonal block with
/// off-diagonal entries -1, interior diagonal entries 2, and corrected
/// endpoint diagonal entries a (first) and b (last).
struct SegmentAB {
    int n = 0;
    double a = 2.0;
    double b = 2.0;
};

struct SegmentCertificate {
    bool spd = false;
    bool fast_path = false;  // a > 1 and b > 1: positive definite for any n
    int n = 0;
    double a = 0.0;
    double b = 0.0;
    double det = 0.0;  // determinant of the full block
};

/// Leading principal minors of the segment block, d[k-1] = det of the k-th
/// leading principal submatrix. The block is positive definite exactly when
/// all of them are strictly positive.
std::vector<double> segment_minors(int n, double a, double b);

/// Certify one segment block via its leading principal minors.
SegmentCertificate check_segment(int n, double a, double b);

struct SpdReport {
    bool certified = false;    // every segment in every direction passed
    int n_segments = 0;
    int n_fast_path = 0;       // segments settled by the a>1, b>1 shortcut
    std::vector<SegmentCertificate> failures;
};

/// Certify a full operator from its per-direction segment data (x sweeps
/// followed by y sweeps, concatenated by the caller).
SpdReport check_segments(std::span<const SegmentAB> segments);

/// Weak diagonal dominance with at least one strictly dominant row; a
/// fallback positivity check used when the segment structure does not apply
/// (variable coefficients couple the directional contributions).
bool diagonally_dominant(const SparseSym& a, double tol = 1e-12);

}  // namespace ebfd
