#ifndef BUBBLESIM_SPARSE_H
#define BUBBLESIM_SPARSE_H

#include <utility>
#include <vector>

namespace bubblesim {

// Symmetric sparse matrix with full (both triangles) row storage, columns
// sorted within each row. Assembly merges duplicate entries, so each (i, j)
// appears at most once.
class SparseSymMatrix {
public:
    SparseSymMatrix() = default;

    static SparseSymMatrix from_rows(std::vector<std::vector<std::pair<int, double>>> rows);

    int size() const { return n_; }
    int nonzeros() const { return static_cast<int>(values_.size()); }

    int row_begin(int i) const { return row_start_[static_cast<size_t>(i)]; }
    int row_end(int i) const { return row_start_[static_cast<size_t>(i) + 1]; }
    int col(int k) const { return columns_[static_cast<size_t>(k)]; }
    double value(int k) const { return values_[static_cast<size_t>(k)]; }

    double entry(int i, int j) const; // 0 when absent
    std::vector<double> diagonal() const;

    // y = A x, row sums accumulated in stored column order.
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;

    bool exactly_symmetric() const;

private:
    int n_ = 0;
    std::vector<int> row_start_{0};
    std::vector<int> columns_;
    std::vector<double> values_;
};

std::vector<double> matvec(const SparseSymMatrix& A, const std::vector<double>& x);

} // namespace bubblesim

#endif
