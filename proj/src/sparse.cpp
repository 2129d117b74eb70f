#include "sparse.h"

#include <algorithm>
#include <stdexcept>

#include "parallel.h"

namespace bubblesim {

SparseSymMatrix SparseSymMatrix::from_rows(std::vector<std::vector<std::pair<int, double>>> rows)
{
    SparseSymMatrix m;
    m.n_ = static_cast<int>(rows.size());
    m.row_start_.assign(static_cast<size_t>(m.n_) + 1, 0);

    for (auto& row : rows) {
        std::stable_sort(row.begin(), row.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (int i = 0; i < m.n_; ++i) {
        int unique = 0;
        const auto& row = rows[static_cast<size_t>(i)];
        for (size_t k = 0; k < row.size(); ++k)
            if (k == 0 || row[k].first != row[k - 1].first) ++unique;
        m.row_start_[static_cast<size_t>(i) + 1] = m.row_start_[static_cast<size_t>(i)] + unique;
    }
    m.columns_.resize(static_cast<size_t>(m.row_start_.back()));
    m.values_.resize(static_cast<size_t>(m.row_start_.back()));

    for (int i = 0; i < m.n_; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        int out = m.row_start_[static_cast<size_t>(i)];
        for (size_t k = 0; k < row.size(); ++k) {
            if (k > 0 && row[k].first == row[k - 1].first) {
                m.values_[static_cast<size_t>(out) - 1] += row[k].second;
            } else {
                m.columns_[static_cast<size_t>(out)] = row[k].first;
                m.values_[static_cast<size_t>(out)] = row[k].second;
                ++out;
            }
        }
    }
    return m;
}

double SparseSymMatrix::entry(int i, int j) const
{
    for (int k = row_begin(i); k < row_end(i); ++k)
        if (col(k) == j) return value(k);
    return 0.0;
}

std::vector<double> SparseSymMatrix::diagonal() const
{
    std::vector<double> d(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) d[static_cast<size_t>(i)] = entry(i, i);
    return d;
}

void SparseSymMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const
{
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("matvec: dimension mismatch");
    y.resize(static_cast<size_t>(n_));
    parallel_for(n_, [&](int i) {
        double sum = 0.0;
        for (int k = row_begin(i); k < row_end(i); ++k)
            sum += value(k) * x[static_cast<size_t>(col(k))];
        y[static_cast<size_t>(i)] = sum;
    });
}

bool SparseSymMatrix::exactly_symmetric() const
{
    for (int i = 0; i < n_; ++i)
        for (int k = row_begin(i); k < row_end(i); ++k)
            if (entry(col(k), i) != value(k)) return false;
    return true;
}

std::vector<double> matvec(const SparseSymMatrix& A, const std::vector<double>& x)
{
    std::vector<double> y;
    A.multiply(x, y);
    return y;
}

} // namespace bubblesim
