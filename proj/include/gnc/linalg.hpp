#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gnc/rng.hpp"

namespace gnc {

/// Dense row-major matrix of doubles. Dimensions are at least 1x1 and every
/// entry is finite when built from explicit values.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix identity(std::size_t n);
    /// Builds a matrix whose j-th column is `columns[j]`.
    static Matrix from_columns(const std::vector<std::vector<double>>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    std::vector<double> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const double> v);
    double column_norm(std::size_t c) const;

    Matrix transpose() const;
    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);

double frobenius_norm(const Matrix& a);
/// Maximum absolute column sum.
double norm_one(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Numerically stable softmax (the max entry is subtracted before exp).
std::vector<double> softmax(std::span<const double> v);

/// exp(A - A^T) by scaling and squaring of a truncated Taylor series.
/// The result is a rotation: orthogonal with determinant +1.
Matrix matrix_exp_skew(const Matrix& a);

/// Element of SO(d): exp(A - A^T) for a d x d standard-normal A drawn from
/// the seeded stream (row-major order).
Matrix random_rotation(std::size_t d, RngSeed seed);

/// Permutation matrix from a Fisher-Yates shuffle of 0..C-1. Row i has its
/// single 1 at column perm[i] (the rows of I reordered).
Matrix random_permutation(std::size_t count, RngSeed seed);
std::vector<std::size_t> random_permutation_indices(std::size_t count, RngSeed seed);

/// Determinant of the n x n matrix with `a` on the diagonal and `c`
/// elsewhere: (a - c)^(n-1) * (a + (n-1) c).
double structured_determinant(double a, double c, std::size_t n);

/// Singular values in descending order, from one-sided Jacobi rotations
/// (the Jacobi eigenvalue iteration for the Gram matrix, applied without
/// forming it).
std::vector<double> singular_values(const Matrix& m);

/// Number of singular values strictly above tol * largest.
std::size_t numerical_rank(const Matrix& m, double tol);

/// Eigenvalues of a symmetric matrix, ascending. Cyclic Jacobi.
std::vector<double> symmetric_eigenvalues(const Matrix& s);

bool is_orthogonal(const Matrix& r, double tol);
bool is_permutation_matrix(const Matrix& p);

}  // namespace gnc
