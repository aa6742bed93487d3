#ifndef POLYAUT_LINALG_HPP
#define POLYAUT_LINALG_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <polyaut/coeffs.hpp>

namespace polyaut
{

/// Dense matrix over a FieldSpec, row-major.
class Matrix
{
public:
    Matrix() = default;
    Matrix(const FieldSpec &field, std::size_t rows, std::size_t cols);

    static Matrix identity(const FieldSpec &field, std::size_t n);
    /// Builds from rows; all rows must have equal length.
    static Matrix from_rows(const FieldSpec &field, const std::vector<std::vector<Scalar>> &rows);

    const FieldSpec &field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix &a, const Matrix &b);
    friend bool operator==(const Matrix &a, const Matrix &b);
    friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

    bool is_identity() const;
    bool is_permutation() const;
    bool is_diagonal() const;

    Scalar determinant() const;
    /// Throws ArithmeticError when singular.
    Matrix inverse() const;

    std::string to_string() const;

private:
    FieldSpec field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_reduce(Matrix m);

/// Particular solution of A x = b with all free variables set to zero, or
/// nullopt when the system is inconsistent.
std::optional<std::vector<Scalar>> solve(const Matrix &a, const std::vector<Scalar> &b);

/// Basis of {x : A x = 0}, one vector per free column (that coordinate = 1).
std::vector<std::vector<Scalar>> kernel_basis(const Matrix &a);

} // namespace polyaut

#endif
