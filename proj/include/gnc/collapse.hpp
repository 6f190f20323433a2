#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "gnc/linalg.hpp"

namespace gnc {

/// Worst-case neural collapse statistics of a classifier M (d x C) and
/// features Z (d x N) with 0-based labels.
struct NcReport {
    double nc1 = 0.0;            // max ||z - class mean||
    double nc2 = 0.0;            // max ||z - M_label||
    double nc3_signed = 0.0;     // max signed cosine between classifier columns
    std::optional<double> nc3_welch_gap;
    double nc4_agreement = 0.0;  // fraction where argmax <M_y, z> == nearest class mean
    double ref_norm = 0.0;       // max column norm over M and Z
};

struct Nc3Result {
    double signed_maxcorr = 0.0;
    std::optional<double> welch_gap;
};

/// Column means per class. Throws if a class in [0, C) has no sample.
Matrix class_means(const Matrix& z, std::span<const int> labels, std::size_t num_classes);

double nc1_variability(const Matrix& z, std::span<const int> labels, std::size_t num_classes);
double nc2_self_duality(const Matrix& z, const Matrix& m, std::span<const int> labels);

/// Signed max correlation of M's normalized columns. The Welch gap is
/// reported only when C <= d(d+1)/2 and no pairwise correlation is
/// positive, so the signed maximum is also the coherence.
Nc3Result nc3_frame_gap(const Matrix& m);

/// Ties resolve to the smallest class index on both sides.
double nc4_agreement(const Matrix& z, const Matrix& m, std::span<const int> labels);

NcReport gnc_report(const Matrix& m, const Matrix& z, std::span<const int> labels);

}  // namespace gnc
