#include "ebfd/spd.hpp"

#include <cmath>

namespace ebfd {

std::vector<double> segment_minors(int n, double a, double b) {
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        // The single point carries both endpoint corrections: its diagonal
        // entry is a + b - 2 (interior value 2 adjusted from both sides).
        d.push_back(a + b - 2.0);
        return d;
    }
    // Leading minors of tridiag(-1; a, 2, ..., 2, b; -1):
    //   Q_1 = a, Q_2 = 2a - 1, Q_k = 2 Q_{k-1} - Q_{k-2},
    // and the full determinant replaces the last diagonal 2 by b:
    //   P = b Q_{n-1} - Q_{n-2}.
    double q_prev = 1.0;  // Q_0
    double q = a;         // Q_1
    d.push_back(q);
    for (int k = 2; k < n; ++k) {
        double q_next = 2.0 * q - q_prev;
        q_prev = q;
        q = q_next;
        d.push_back(q);
    }
    d.push_back(b * q - q_prev);
    return d;
}

SegmentCertificate check_segment(int n, double a, double b) {
    SegmentCertificate cert;
    cert.n = n;
    cert.a = a;
    cert.b = b;
    cert.fast_path = (a > 1.0 && b > 1.0);
    auto minors = segment_minors(n, a, b);
    cert.det = minors.back();
    cert.spd = true;
    for (double m : minors)
        if (!(m > 0.0)) cert.spd = false;
    return cert;
}

SpdReport check_segments(std::span<const SegmentAB> segments) {
    SpdReport rep;
    rep.certified = true;
    for (const SegmentAB& s : segments) {
        ++rep.n_segments;
        if (s.a > 1.0 && s.b > 1.0 && s.n > 1) {
            ++rep.n_fast_path;
            continue;
        }
        SegmentCertificate cert = check_segment(s.n, s.a, s.b);
        if (!cert.spd) {
            rep.certified = false;
            rep.failures.push_back(cert);
        }
    }
    return rep;
}

bool diagonally_dominant(const SparseSym& a, double tol) {
    const int n = a.rows();
    const auto& row_ptr = a.row_ptr();
    const auto& col = a.col_idx();
    const auto& val = a.values();
    bool strict_somewhere = false;
    for (int i = 0; i < n; ++i) {
        double diag = 0.0, off = 0.0;
        for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col[k] == i)
                diag = val[k];
            else
                off += std::abs(val[k]);
        }
        if (diag < off - tol * std::abs(diag)) return false;
        if (diag > off + tol * std::abs(diag)) strict_somewhere = true;
    }
    return strict_somewhere;
}

}  // namespace ebfd
