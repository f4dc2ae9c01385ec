#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ebfd {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compressed-row sparse matrix. Column indices are sorted within each row
/// and explicit zeros are dropped on construction.
class SparseSym {
  public:
    SparseSym() = default;

    struct Triplet {
        int row, col;
        double val;
    };

    static SparseSym from_triplets(int n_rows, int n_cols, std::vector<Triplet> entries);

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    std::size_t nnz() const { return col_.size(); }

    const std::vector<int>& row_ptr() const { return row_ptr_; }
    const std::vector<int>& col_idx() const { return col_; }
    const std::vector<double>& values() const { return val_; }

    double diag(int i) const;
    double coeff(int i, int j) const;

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    SparseSym transpose() const;
    bool pattern_symmetric() const;
    double max_asymmetry() const;

    /// Coordinate-format text export: one "row col value" line per entry,
    /// 1-based indices, sorted by row then column.
    std::string to_coordinate_text() const;

  private:
    int n_rows_ = 0, n_cols_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_;
    std::vector<double> val_;

    friend SparseSym multiply(const SparseSym& a, const SparseSym& b);
};

SparseSym multiply(const SparseSym& a, const SparseSym& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace ebfd
