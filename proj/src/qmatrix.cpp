#include "adjoints/qmatrix.hpp"

#include <utility>

#include "adjoints/errors.hpp"

namespace adjoints {

void QMatrix::append_row(QVec row) {
    if (rows_.empty() && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw FormatError("row width does not match matrix");
    rows_.push_back(std::move(row));
}

Rat dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw FormatError("dot: length mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec primitive_row(const QVec& row) {
    Int den(1);
    for (const Rat& c : row) {
        Int d = c.get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    Int g(0);
    for (const Rat& c : row) {
        Rat scaled = c * Rat(den);
        Int num = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    }
    if (g == 0) return row;
    Rat factor = Rat(den) / Rat(g);
    QVec out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i] * factor;
    return out;
}

namespace {

struct Echelon {
    std::vector<QVec> m;               // row-reduced copy
    std::vector<std::size_t> pivots;   // pivot column per pivot row
};

// Fraction-free (Bareiss) forward elimination with first-nonzero pivoting,
// followed by back-substitution to reduced echelon form.
Echelon rref(const QMatrix& in) {
    Echelon ech;
    ech.m.reserve(in.rows());
    for (std::size_t i = 0; i < in.rows(); ++i) ech.m.push_back(primitive_row(in.row(i)));
    auto& m = ech.m;
    std::size_t nrows = m.size(), ncols = in.cols();
    Rat prev_pivot(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t p = r;
        while (p < nrows && m[p][c] == 0) ++p;
        if (p == nrows) continue;
        if (p != r) std::swap(m[p], m[r]);
        const Rat pivot = m[r][c];
        for (std::size_t i = r + 1; i < nrows; ++i) {
            if (m[i][c] == 0) {
                // still rescale so the fraction-free invariant is kept
                for (std::size_t j = c; j < ncols; ++j)
                    m[i][j] = m[i][j] * pivot / prev_pivot;
                continue;
            }
            const Rat f = m[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                m[i][j] = (m[i][j] * pivot - f * m[r][j]) / prev_pivot;
        }
        prev_pivot = pivot;
        ech.pivots.push_back(c);
        ++r;
    }
    // normalize pivots to 1 and eliminate above
    for (std::size_t k = ech.pivots.size(); k-- > 0;) {
        std::size_t c = ech.pivots[k];
        const Rat pivot = m[k][c];
        for (std::size_t j = c; j < ncols; ++j) m[k][j] /= pivot;
        for (std::size_t i = 0; i < k; ++i) {
            const Rat f = m[i][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < ncols; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return ech;
}

}  // namespace

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVec> kernel_basis(const QMatrix& m) {
    Echelon ech = rref(m);
    std::size_t ncols = m.cols();
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : ech.pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        QVec v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t k = 0; k < ech.pivots.size(); ++k)
            v[ech.pivots[k]] = -ech.m[k][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace adjoints
