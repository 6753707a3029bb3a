#include "smoothset/linalg.hpp"

#include <sstream>
#include <utility>

#include "smoothset/errors.hpp"

namespace smoothset {

RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

RowEchelon row_reduce(RationalMatrix m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    RowEchelon out;
    out.reduced = RationalMatrix(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.reduced(i, j) = std::move(m(i, j));
    out.pivots = std::move(pivots);
    return out;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivots.size(); }
std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

RationalMatrix kernel_basis(const RationalMatrix& m) {
    RowEchelon e = row_reduce(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    RationalMatrix basis(0, cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
        basis.append_row(v);
    }
    if (basis.rows() == 0) basis = RationalMatrix(0, cols);
    return basis;
}

RationalVector multiply(const RationalMatrix& m, const RationalVector& v) {
    if (v.size() != m.cols()) throw ParameterError("matrix-vector size mismatch");
    RationalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (v[j] != 0 && m(i, j) != 0) out[i] += m(i, j) * v[j];
    return out;
}

void reduce_against(RationalVector& v, const RowEchelon& basis) {
    for (std::size_t r = 0; r < basis.pivots.size(); ++r) {
        const std::size_t p = basis.pivots[r];
        if (v[p] == 0) continue;
        Rational f = v[p];
        for (std::size_t j = 0; j < v.size(); ++j)
            if (basis.reduced(r, j) != 0) v[j] -= f * basis.reduced(r, j);
    }
}

bool is_zero(const RationalVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

std::vector<Integer> elementary_divisors(IntegerMatrix m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        swap_rows(m, t, pi);
        swap_cols(m, t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m(i, t) == 0) continue;
                Integer q = m(i, t) / m(t, t);
                for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
                if (m(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m(t, j) == 0) continue;
                Integer q = m(t, j) / m(t, t);
                for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
                if (m(t, j) != 0) clean = false;
            }
            if (!clean) {
                // a remainder smaller than the pivot survived; move it to the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (m(i, t) != 0 && abs(m(i, t)) < abs(m(bi, bj))) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(t, j) != 0 && abs(m(t, j)) < abs(m(bi, bj))) { bi = t; bj = j; }
                swap_rows(m, t, bi);
                swap_cols(m, t, bj);
                continue;
            }
            // divisibility: every trailing entry must be a multiple of the pivot
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (std::size_t j = t; j < cols; ++j) m(t, j) += m(bad, j);
        }
        diag.push_back(abs(m(t, t)));
        ++t;
    }
    return diag;
}

namespace {

template <class T>
std::string triplets(const Matrix<T>& m) {
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) ++nnz;
    std::ostringstream out;
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) out << i << ' ' << j << ' ' << m(i, j).get_str() << '\n';
    return out.str();
}

}  // namespace

std::string write_triplets(const RationalMatrix& m) { return triplets(m); }
std::string write_triplets(const IntegerMatrix& m) { return triplets(m); }

RationalMatrix read_triplets(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(in >> rows >> cols >> nnz)) throw ParameterError("triplet header must be 'rows cols nnz'");
    RationalMatrix m(rows, cols);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = 0, j = 0;
        std::string value;
        if (!(in >> i >> j >> value)) throw ParameterError("truncated triplet list");
        if (i >= rows || j >= cols) throw ParameterError("triplet index out of range");
        m(i, j) = parse_rational(value);
    }
    return m;
}

}  // namespace smoothset
