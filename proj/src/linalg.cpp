#include <polyaut/linalg.hpp>

#include <sstream>
#include <utility>

namespace polyaut
{

Matrix::Matrix(const FieldSpec &field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field))
{
}

Matrix Matrix::identity(const FieldSpec &field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = Scalar::one(field);
    }
    return m;
}

Matrix Matrix::from_rows(const FieldSpec &field, const std::vector<std::vector<Scalar>> &rows)
{
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw ArithmeticError("ragged matrix rows");
        }
        for (std::size_t j = 0; j < c; ++j) {
            if (rows[i][j].field() != field) {
                throw ArithmeticError("matrix entry outside " + field.to_string());
            }
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix operator*(const Matrix &a, const Matrix &b)
{
    if (a.cols_ != b.rows_ || a.field_ != b.field_) {
        throw ArithmeticError("matrix shape or field mismatch");
    }
    Matrix res(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar &aik = a(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) {
                    res(i, j) += aik * b(k, j);
                }
            }
        }
    }
    return res;
}

bool operator==(const Matrix &a, const Matrix &b)
{
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool Matrix::is_identity() const
{
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

bool Matrix::is_permutation() const
{
    if (rows_ != cols_) {
        return false;
    }
    std::vector<bool> used(cols_, false);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Scalar &e = (*this)(i, j);
            if (e.is_zero()) {
                continue;
            }
            if (!e.is_one() || used[j]) {
                return false;
            }
            used[j] = true;
            ++ones;
        }
        if (ones != 1) {
            return false;
        }
    }
    return true;
}

bool Matrix::is_diagonal() const
{
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (i != j && !(*this)(i, j).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

Scalar Matrix::determinant() const
{
    if (rows_ != cols_) {
        throw ArithmeticError("determinant of a non-square matrix");
    }
    Matrix m = *this;
    Scalar det = Scalar::one(field_);
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t piv = c;
        while (piv < rows_ && m(piv, c).is_zero()) {
            ++piv;
        }
        if (piv == rows_) {
            return Scalar::zero(field_);
        }
        if (piv != c) {
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(m(piv, j), m(c, j));
            }
            det = -det;
        }
        det *= m(c, c);
        const Scalar inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < rows_; ++i) {
            if (m(i, c).is_zero()) {
                continue;
            }
            const Scalar f = m(i, c) * inv;
            for (std::size_t j = c; j < cols_; ++j) {
                m(i, j) -= f * m(c, j);
            }
        }
    }
    return det;
}

Matrix Matrix::inverse() const
{
    if (rows_ != cols_) {
        throw ArithmeticError("inverse of a non-square matrix");
    }
    const std::size_t n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = (*this)(i, j);
        }
        aug(i, n + i) = Scalar::one(field_);
    }
    const auto ech = row_reduce(std::move(aug));
    if (ech.rank() < n || ech.pivots[n - 1] != n - 1) {
        throw ArithmeticError("singular matrix");
    }
    Matrix inv(field_, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv(i, j) = ech.reduced(i, n + j);
        }
    }
    return inv;
}

std::string Matrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "," : "") << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            os << (j ? "," : "") << (*this)(i, j).to_string();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

RowEchelon row_reduce(Matrix m)
{
    RowEchelon res;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, c).is_zero()) {
            ++piv;
        }
        if (piv == m.rows()) {
            continue;
        }
        if (piv != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(piv, j), m(row, j));
            }
        }
        const Scalar inv = m(row, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) {
            m(row, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, c).is_zero()) {
                continue;
            }
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) {
                if (!m(row, j).is_zero()) {
                    m(i, j) -= f * m(row, j);
                }
            }
        }
        res.pivots.push_back(c);
        ++row;
    }
    res.reduced = std::move(m);
    return res;
}

std::optional<std::vector<Scalar>> solve(const Matrix &a, const std::vector<Scalar> &b)
{
    if (b.size() != a.rows()) {
        throw ArithmeticError("right-hand side length mismatch");
    }
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            aug(i, j) = a(i, j);
        }
        aug(i, a.cols()) = b[i];
    }
    const auto ech = row_reduce(std::move(aug));
    if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) {
        return std::nullopt;
    }
    std::vector<Scalar> x(a.cols(), Scalar::zero(a.field()));
    for (std::size_t r = 0; r < ech.rank(); ++r) {
        x[ech.pivots[r]] = ech.reduced(r, a.cols());
    }
    return x;
}

std::vector<std::vector<Scalar>> kernel_basis(const Matrix &a)
{
    const auto ech = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : ech.pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<Scalar> v(a.cols(), Scalar::zero(a.field()));
        v[f] = Scalar::one(a.field());
        for (std::size_t r = 0; r < ech.rank(); ++r) {
            v[ech.pivots[r]] = -ech.reduced(r, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace polyaut
