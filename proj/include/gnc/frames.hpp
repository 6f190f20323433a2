#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnc/linalg.hpp"
#include "gnc/rng.hpp"

namespace gnc {

using Meta = std::map<std::string, std::string>;

/// A finite frame: C nonzero vectors in R^d stored as the columns of its
/// d x C analysis matrix.
class Frame {
public:
    /// Validates the columns (no column of norm <= 1e-12) and optionally
    /// rescales them to unit norm. Records the input norms in meta
    /// under "input_norms".
    Frame(Matrix columns, bool normalize);

    /// Rebuilds a frame from stored parts. When `normalized` is set every
    /// column must have unit norm within 1e-9.
    static Frame from_parts(Matrix columns, bool normalized, Meta meta);

    std::size_t dim() const noexcept { return columns_.rows(); }
    std::size_t count() const noexcept { return columns_.cols(); }
    const Matrix& columns() const noexcept { return columns_; }
    std::vector<double> column(std::size_t j) const { return columns_.column(j); }
    bool normalized() const noexcept { return normalized_; }

    const Meta& meta() const noexcept { return meta_; }
    Meta& meta() noexcept { return meta_; }

private:
    Frame(Matrix columns, bool normalized, Meta meta);

    Matrix columns_;
    bool normalized_;
    Meta meta_;
};

Frame make_frame(Matrix columns, bool normalize);

enum class CorrelationMode { Signed, Absolute };

/// C x C matrix of inner products between columns.
Matrix gram(const Frame& f);

/// Largest pairwise correlation over distinct columns, computed on the
/// unit-normalized columns (cosines). Absolute mode is the frame coherence;
/// signed mode is the quantity minimized by the classifier at collapse.
double max_correlation(const Frame& f, CorrelationMode mode);

/// sqrt((C - d) / (d (C - 1))) when C <= d(d+1)/2, clamped to 0 for C <= d;
/// empty otherwise.
std::optional<double> welch_bound(std::size_t d, std::size_t count);

struct FrameReport {
    bool is_uniform = false;
    bool is_unit_norm = false;
    bool is_tight = false;
    bool is_equiangular = false;
    double max_corr_signed = 0.0;
    double max_corr_absolute = 0.0;
    std::optional<double> welch_bound;
    std::optional<double> welch_gap;
    double tolerance = 0.0;
};

inline constexpr double kDefaultFrameTolerance = 1e-6;

/// Uniform, unit-norm, tight (numerical rank d) and equiangular checks,
/// plus both correlation modes and the Welch comparison. A single-vector
/// frame has no pairs; its correlations are reported as 0.
FrameReport check_frame(const Frame& f, double tol = kDefaultFrameTolerance);

/// alpha * R * sqrt(C/(C-1)) * (I - 11^T / C), with R the first C columns of
/// random_rotation(d, seed). Requires d >= C >= 2 and alpha > 0.
Frame simplex_etf(std::size_t d, std::size_t count, double alpha, RngSeed seed);

/// Type I equivalent frame R * columns. R must be orthogonal within 1e-8.
Frame transform_type1(const Frame& f, const Matrix& rotation);

/// Type II equivalent frame columns * P. P must be a 0/1 permutation matrix.
Frame transform_type2(const Frame& f, const Matrix& permutation);

}  // namespace gnc
