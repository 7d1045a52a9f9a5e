#pragma once

#include <vector>

#include "adjoints/rational.hpp"

namespace adjoints {

using QVec = std::vector<Rat>;

// Dense exact rational matrix. Rows may be appended; all rows share one width.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, QVec(cols, Rat(0))) {}
    explicit QMatrix(std::size_t cols) : cols_(cols) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    void append_row(QVec row);
    const QVec& row(std::size_t i) const { return rows_[i]; }
    Rat& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }

    bool operator==(const QMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<QVec> rows_;
};

std::size_t rank(const QMatrix& m);

// Reduced-echelon kernel basis: one vector per free column (ascending), with a
// 1 in that column. M*v = 0 exactly for each v; count = cols - rank.
std::vector<QVec> kernel_basis(const QMatrix& m);

Rat dot(const QVec& a, const QVec& b);

// Scales a row by a positive rational so entries are integers with gcd 1.
QVec primitive_row(const QVec& row);

}  // namespace adjoints
