#include "ebfd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ebfd {

SparseSym SparseSym::from_triplets(int n_rows, int n_cols,
                                   std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseSym m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.row_ptr_.assign(n_rows + 1, 0);
    m.col_.reserve(entries.size());
    m.val_.reserve(entries.size());
    std::size_t k = 0;
    for (int r = 0; r < n_rows; ++r) {
        while (k < entries.size() && entries[k].row == r) {
            int c = entries[k].col;
            double v = 0.0;
            while (k < entries.size() && entries[k].row == r && entries[k].col == c)
                v += entries[k++].val;
            if (v != 0.0) {
                m.col_.push_back(c);
                m.val_.push_back(v);
            }
        }
        m.row_ptr_[r + 1] = static_cast<int>(m.col_.size());
    }
    if (k != entries.size()) throw LinalgError("from_triplets: row index out of range");
    return m;
}

double SparseSym::diag(int i) const { return coeff(i, i); }

double SparseSym::coeff(int i, int j) const {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (col_[k] == j) return val_[k];
    return 0.0;
}

void SparseSym::multiply(std::span<const double> x, std::span<double> y) const {
    for (int r = 0; r < n_rows_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * x[col_[k]];
        y[r] = s;
    }
}

std::vector<double> SparseSym::multiply(std::span<const double> x) const {
    std::vector<double> y(n_rows_);
    multiply(x, y);
    return y;
}

SparseSym SparseSym::transpose() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            t.push_back({col_[k], r, val_[k]});
    return from_triplets(n_cols_, n_rows_, std::move(t));
}

bool SparseSym::pattern_symmetric() const {
    SparseSym t = transpose();
    return t.row_ptr_ == row_ptr_ && t.col_ == col_;
}

double SparseSym::max_asymmetry() const {
    SparseSym t = transpose();
    double worst = 0.0;
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            worst = std::max(worst, std::abs(val_[k] - t.coeff(r, col_[k])));
    return worst;
}

std::string SparseSym::to_coordinate_text() const {
    std::ostringstream out;
    out.precision(17);
    out << n_rows_ << " " << n_cols_ << " " << nnz() << "\n";
    for (int r = 0; r < n_rows_; ++r)
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
            out << r + 1 << " " << col_[k] + 1 << " " << val_[k] << "\n";
    return out.str();
}

SparseSym multiply(const SparseSym& a, const SparseSym& b) {
    if (a.cols() != b.rows()) throw LinalgError("multiply: dimension mismatch");
    SparseSym m;
    m.n_rows_ = a.rows();
    m.n_cols_ = b.cols();
    m.row_ptr_.assign(a.rows() + 1, 0);
    std::vector<double> acc(b.cols(), 0.0);
    std::vector<int> marker(b.cols(), -1);
    std::vector<int> cols_in_row;
    for (int r = 0; r < a.rows(); ++r) {
        cols_in_row.clear();
        for (int ka = a.row_ptr_[r]; ka < a.row_ptr_[r + 1]; ++ka) {
            int mid = a.col_[ka];
            double av = a.val_[ka];
            for (int kb = b.row_ptr_[mid]; kb < b.row_ptr_[mid + 1]; ++kb) {
                int c = b.col_[kb];
                if (marker[c] != r) {
                    marker[c] = r;
                    acc[c] = 0.0;
                    cols_in_row.push_back(c);
                }
                acc[c] += av * b.val_[kb];
            }
        }
        std::sort(cols_in_row.begin(), cols_in_row.end());
        for (int c : cols_in_row) {
            if (acc[c] == 0.0) continue;
            m.col_.push_back(c);
            m.val_.push_back(acc[c]);
        }
        m.row_ptr_[r + 1] = static_cast<int>(m.col_.size());
    }
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace ebfd
