#include "gnc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gnc/error.hpp"

namespace gnc {

namespace {

void require_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DomainError("Matrix: dimensions must be positive, got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DomainError(std::string(op) + ": shape mismatch");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_dims(rows, cols);
    values_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    require_dims(rows, cols);
    if (values_.size() != rows * cols) {
        throw DomainError("Matrix: expected " + std::to_string(rows * cols) + " values, got " +
                          std::to_string(values_.size()));
    }
    if (!all_finite()) {
        throw DomainError("Matrix: non-finite entry");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || columns.front().empty()) {
        throw DomainError("Matrix::from_columns: empty input");
    }
    const std::size_t rows = columns.front().size();
    std::vector<double> values(rows * columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw DomainError("Matrix::from_columns: column " + std::to_string(c) +
                              " has length " + std::to_string(columns[c].size()) +
                              ", expected " + std::to_string(rows));
        }
        for (std::size_t r = 0; r < rows; ++r) {
            values[r * columns.size() + c] = columns[c][r];
        }
    }
    return Matrix(rows, columns.size(), std::move(values));
}

std::vector<double> Matrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

void Matrix::set_column(std::size_t c, std::span<const double> v) {
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v[r];
    }
}

double Matrix::column_norm(std::size_t c) const {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
        s += (*this)(r, c) * (*this)(r, c);
    }
    return std::sqrt(s);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DomainError("matrix product: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix sum");
    Matrix out = a;
    auto ov = out.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < ov.size(); ++i) {
        ov[i] += bv[i];
    }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "matrix difference");
    Matrix out = a;
    auto ov = out.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < ov.size(); ++i) {
        ov[i] -= bv[i];
    }
    return out;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix out = a;
    for (double& x : out.values()) {
        x *= s;
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm2(std::span<const double> v) {
    return std::sqrt(dot(v, v));
}

double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double frobenius_norm(const Matrix& a) {
    return norm2(a.values());
}

double norm_one(const Matrix& a) {
    double best = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            s += std::abs(a(r, c));
        }
        best = std::max(best, s);
    }
    return best;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) {
        best = std::max(best, std::abs(a.values()[i] - b.values()[i]));
    }
    return best;
}

std::vector<double> softmax(std::span<const double> v) {
    if (v.empty()) {
        throw DomainError("softmax: empty vector");
    }
    const double top = *std::max_element(v.begin(), v.end());
    std::vector<double> out(v.size());
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::exp(v[i] - top);
        total += out[i];
    }
    for (double& x : out) {
        x /= total;
    }
    return out;
}

Matrix matrix_exp_skew(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DomainError("matrix_exp_skew: matrix is not square");
    }
    if (!a.all_finite()) {
        throw DomainError("matrix_exp_skew: non-finite entry");
    }
    const std::size_t n = a.rows();
    Matrix s = a - a.transpose();

    int squarings = 0;
    double scale = norm_one(s);
    while (scale > 0.5) {
        scale /= 2.0;
        ++squarings;
    }
    s = std::ldexp(1.0, -squarings) * s;

    // Taylor series to order 18: the remainder is below 0.5^19 / 19! ~ 1e-23.
    constexpr int kOrder = 18;
    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= kOrder; ++k) {
        term = (1.0 / k) * (term * s);
        result = result + term;
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

Matrix random_rotation(std::size_t d, RngSeed seed) {
    if (d == 0) {
        throw DomainError("random_rotation: dimension must be positive");
    }
    Rng rng(seed);
    Matrix a(d, d);
    for (double& x : a.values()) {
        x = rng.normal();
    }
    return matrix_exp_skew(a);
}

std::vector<std::size_t> random_permutation_indices(std::size_t count, RngSeed seed) {
    if (count == 0) {
        throw DomainError("random_permutation: count must be positive");
    }
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = count - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

Matrix random_permutation(std::size_t count, RngSeed seed) {
    const auto perm = random_permutation_indices(count, seed);
    Matrix p(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        p(i, perm[i]) = 1.0;
    }
    return p;
}

double structured_determinant(double a, double c, std::size_t n) {
    if (n == 0) {
        throw DomainError("structured_determinant: n must be positive");
    }
    const double nm1 = static_cast<double>(n - 1);
    return std::pow(a - c, nm1) * (a + nm1 * c);
}

std::vector<double> singular_values(const Matrix& m) {
    // Work on whichever orientation has fewer columns; singular values agree.
    Matrix w = m.cols() <= m.rows() ? m : m.transpose();
    const std::size_t rows = w.rows();
    const std::size_t cols = w.cols();

    constexpr int kMaxSweeps = 60;
    constexpr double kEps = 1e-15;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                double gamma = 0.0;
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += w(r, p) * w(r, p);
                    beta += w(r, q) * w(r, q);
                    gamma += w(r, p) * w(r, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double cs = 1.0 / std::hypot(1.0, t);
                const double sn = cs * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const double wp = w(r, p);
                    const double wq = w(r, q);
                    w(r, p) = cs * wp - sn * wq;
                    w(r, q) = sn * wp + cs * wq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        sv[c] = w.column_norm(c);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::size_t numerical_rank(const Matrix& m, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("numerical_rank: tolerance must be positive");
    }
    const auto sv = singular_values(m);
    if (sv.front() == 0.0) {
        return 0;
    }
    const double cutoff = tol * sv.front();
    return static_cast<std::size_t>(
        std::count_if(sv.begin(), sv.end(), [cutoff](double s) { return s > cutoff; }));
}

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
    if (s.rows() != s.cols()) {
        throw DomainError("symmetric_eigenvalues: matrix is not square");
    }
    const std::size_t n = s.rows();
    Matrix a = s;
    constexpr int kMaxSweeps = 60;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30 * std::max(1.0, frobenius_norm(a) * frobenius_norm(a))) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
                const double c = 1.0 / std::hypot(1.0, t);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = a(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

bool is_orthogonal(const Matrix& r, double tol) {
    if (r.rows() != r.cols()) {
        return false;
    }
    return max_abs_diff(r.transpose() * r, Matrix::identity(r.rows())) <= tol;
}

bool is_permutation_matrix(const Matrix& p) {
    if (p.rows() != p.cols()) {
        return false;
    }
    const std::size_t n = p.rows();
    std::vector<int> col_count(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int row_count = 0;
        for (std::size_t c = 0; c < n; ++c) {
            const double x = p(r, c);
            if (x == 1.0) {
                ++row_count;
                ++col_count[c];
            } else if (x != 0.0) {
                return false;
            }
        }
        if (row_count != 1) {
            return false;
        }
    }
    return std::all_of(col_count.begin(), col_count.end(), [](int k) { return k == 1; });
}

}  // namespace gnc
