#include "gnc/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gnc/error.hpp"
#include "gnc/format.hpp"

namespace gnc {

namespace {

constexpr double kZeroColumnNorm = 1e-12;
constexpr double kUnitNormSlack = 1e-9;
constexpr double kOrthogonalitySlack = 1e-8;

std::vector<double> column_norms(const Matrix& m) {
    std::vector<double> norms(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        norms[j] = m.column_norm(j);
    }
    return norms;
}

void require_nonzero_columns(const std::vector<double>& norms) {
    for (std::size_t j = 0; j < norms.size(); ++j) {
        if (!(norms[j] > kZeroColumnNorm)) {
            throw DomainError("frame column " + std::to_string(j) + " has zero norm");
        }
    }
}

// Gram matrix of the unit-normalized columns.
Matrix cosine_gram(const Frame& f) {
    const Matrix& m = f.columns();
    const auto norms = column_norms(m);
    Matrix g = gram(f);
    for (std::size_t i = 0; i < f.count(); ++i) {
        for (std::size_t j = 0; j < f.count(); ++j) {
            g(i, j) /= norms[i] * norms[j];
        }
    }
    return g;
}

}  // namespace

Frame::Frame(Matrix columns, bool normalize) : columns_(std::move(columns)), normalized_(normalize) {
    const auto norms = column_norms(columns_);
    require_nonzero_columns(norms);
    if (normalize) {
        for (std::size_t j = 0; j < columns_.cols(); ++j) {
            for (std::size_t r = 0; r < columns_.rows(); ++r) {
                columns_(r, j) /= norms[j];
            }
        }
    }
    meta_["input_norms"] = format_list(norms);
}

Frame::Frame(Matrix columns, bool normalized, Meta meta)
    : columns_(std::move(columns)), normalized_(normalized), meta_(std::move(meta)) {}

Frame Frame::from_parts(Matrix columns, bool normalized, Meta meta) {
    const auto norms = column_norms(columns);
    require_nonzero_columns(norms);
    if (normalized) {
        for (std::size_t j = 0; j < norms.size(); ++j) {
            if (std::abs(norms[j] - 1.0) > kUnitNormSlack) {
                throw DomainError("frame marked normalized but column " + std::to_string(j) +
                                  " has norm " + format_double(norms[j]));
            }
        }
    }
    return Frame(std::move(columns), normalized, std::move(meta));
}

Frame make_frame(Matrix columns, bool normalize) {
    return Frame(std::move(columns), normalize);
}

Matrix gram(const Frame& f) {
    const Matrix& m = f.columns();
    const std::size_t c = f.count();
    Matrix g(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        const auto ci = m.column(i);
        for (std::size_t j = i; j < c; ++j) {
            const double v = dot(ci, m.column(j));
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

double max_correlation(const Frame& f, CorrelationMode mode) {
    if (f.count() < 2) {
        throw DomainError("max_correlation: need at least two frame vectors");
    }
    const Matrix g = cosine_gram(f);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < f.count(); ++i) {
        for (std::size_t j = i + 1; j < f.count(); ++j) {
            const double v = mode == CorrelationMode::Absolute ? std::abs(g(i, j)) : g(i, j);
            best = std::max(best, v);
        }
    }
    return best;
}

std::optional<double> welch_bound(std::size_t d, std::size_t count) {
    if (d == 0 || count == 0) {
        throw DomainError("welch_bound: d and C must be positive");
    }
    if (count > d * (d + 1) / 2) {
        return std::nullopt;
    }
    if (count <= d) {
        return 0.0;
    }
    const double dd = static_cast<double>(d);
    const double cc = static_cast<double>(count);
    return std::sqrt((cc - dd) / (dd * (cc - 1.0)));
}

FrameReport check_frame(const Frame& f, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("check_frame: tolerance must be positive");
    }
    FrameReport report;
    report.tolerance = tol;

    const auto norms = column_norms(f.columns());
    const auto [lo, hi] = std::minmax_element(norms.begin(), norms.end());
    report.is_uniform = *hi - *lo <= tol;
    report.is_unit_norm = std::all_of(norms.begin(), norms.end(),
                                      [tol](double n) { return std::abs(n - 1.0) <= tol; });
    report.is_tight = numerical_rank(f.columns(), tol) == f.dim();

    if (f.count() >= 2) {
        const Matrix g = cosine_gram(f);
        std::vector<double> offdiag;
        for (std::size_t i = 0; i < f.count(); ++i) {
            for (std::size_t j = i + 1; j < f.count(); ++j) {
                offdiag.push_back(std::abs(g(i, j)));
            }
        }
        double mean = 0.0;
        for (double v : offdiag) {
            mean += v;
        }
        mean /= static_cast<double>(offdiag.size());
        report.is_equiangular = std::all_of(offdiag.begin(), offdiag.end(),
                                            [&](double v) { return std::abs(v - mean) <= tol; });
        report.max_corr_signed = max_correlation(f, CorrelationMode::Signed);
        report.max_corr_absolute = max_correlation(f, CorrelationMode::Absolute);
    } else {
        report.is_equiangular = true;
    }

    report.welch_bound = welch_bound(f.dim(), f.count());
    if (report.welch_bound) {
        report.welch_gap = report.max_corr_absolute - *report.welch_bound;
    }
    return report;
}

Frame simplex_etf(std::size_t d, std::size_t count, double alpha, RngSeed seed) {
    if (count < 2) {
        throw DomainError("simplex_etf: need at least two vectors");
    }
    if (d < count) {
        throw DomainError("simplex_etf: requires d >= C, got d=" + std::to_string(d) +
                          " C=" + std::to_string(count));
    }
    if (!(alpha > 0.0)) {
        throw DomainError("simplex_etf: alpha must be positive");
    }
    const Matrix rotation = random_rotation(d, seed);
    Matrix r(d, count);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            r(i, j) = rotation(i, j);
        }
    }
    const double cc = static_cast<double>(count);
    const double scale = alpha * std::sqrt(cc / (cc - 1.0));
    Matrix centering(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            centering(i, j) = scale * ((i == j ? 1.0 : 0.0) - 1.0 / cc);
        }
    }
    Frame f(r * centering, false);
    f.meta()["generator"] = "simplex_etf";
    f.meta()["seed"] = std::to_string(seed.value);
    f.meta()["alpha"] = format_double(alpha);
    return f;
}

Frame transform_type1(const Frame& f, const Matrix& rotation) {
    if (rotation.rows() != f.dim() || rotation.cols() != f.dim()) {
        throw DomainError("transform_type1: rotation must be d x d");
    }
    if (!is_orthogonal(rotation, kOrthogonalitySlack)) {
        throw DomainError("transform_type1: matrix is not orthogonal");
    }
    Meta meta = f.meta();
    meta["rotation"] = format_list(rotation.values());
    return Frame::from_parts(rotation * f.columns(), f.normalized(), std::move(meta));
}

Frame transform_type2(const Frame& f, const Matrix& permutation) {
    if (permutation.rows() != f.count() || permutation.cols() != f.count()) {
        throw DomainError("transform_type2: permutation must be C x C");
    }
    if (!is_permutation_matrix(permutation)) {
        throw DomainError("transform_type2: matrix is not a 0/1 permutation matrix");
    }
    // Column j of columns * P is the source column k with P(k, j) = 1.
    std::vector<double> source(f.count());
    for (std::size_t j = 0; j < f.count(); ++j) {
        for (std::size_t k = 0; k < f.count(); ++k) {
            if (permutation(k, j) == 1.0) {
                source[j] = static_cast<double>(k);
            }
        }
    }
    Meta meta = f.meta();
    meta["permutation"] = format_list(source);
    return Frame::from_parts(f.columns() * permutation, f.normalized(), std::move(meta));
}

}  // namespace gnc
