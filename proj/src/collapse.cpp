#include "gnc/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gnc/error.hpp"
#include "gnc/frames.hpp"

namespace gnc {

namespace {

void check_labels(const Matrix& z, std::span<const int> labels, std::size_t num_classes) {
    if (labels.size() != z.cols()) {
        throw DomainError("labels: expected " + std::to_string(z.cols()) + " labels, got " +
                          std::to_string(labels.size()));
    }
    for (int y : labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= num_classes) {
            throw DomainError("labels: class index " + std::to_string(y) + " out of range");
        }
    }
}

void check_classifier(const Matrix& z, const Matrix& m, std::span<const int> labels) {
    if (m.rows() != z.rows()) {
        throw DomainError("classifier and features have different dimension");
    }
    check_labels(z, labels, m.cols());
}

std::size_t argmax_score(const Matrix& m, std::span<const double> z) {
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < m.cols(); ++y) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            s += m(r, y) * z[r];
        }
        if (s > best_score) {
            best_score = s;
            best = y;
        }
    }
    return best;
}

std::size_t nearest_mean(const Matrix& means, std::span<const double> z) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t y = 0; y < means.cols(); ++y) {
        const double dist = distance(means.column(y), z);
        if (dist < best_dist) {
            best_dist = dist;
            best = y;
        }
    }
    return best;
}

}  // namespace

Matrix class_means(const Matrix& z, std::span<const int> labels, std::size_t num_classes) {
    check_labels(z, labels, num_classes);
    Matrix means(z.rows(), num_classes);
    std::vector<std::size_t> counts(num_classes, 0);
    for (std::size_t i = 0; i < z.cols(); ++i) {
        const auto y = static_cast<std::size_t>(labels[i]);
        ++counts[y];
        for (std::size_t r = 0; r < z.rows(); ++r) {
            means(r, y) += z(r, i);
        }
    }
    for (std::size_t y = 0; y < num_classes; ++y) {
        if (counts[y] == 0) {
            throw DomainError("class " + std::to_string(y) + " has no samples");
        }
        for (std::size_t r = 0; r < z.rows(); ++r) {
            means(r, y) /= static_cast<double>(counts[y]);
        }
    }
    return means;
}

double nc1_variability(const Matrix& z, std::span<const int> labels, std::size_t num_classes) {
    const Matrix means = class_means(z, labels, num_classes);
    double worst = 0.0;
    for (std::size_t i = 0; i < z.cols(); ++i) {
        worst = std::max(worst, distance(z.column(i), means.column(static_cast<std::size_t>(labels[i]))));
    }
    return worst;
}

double nc2_self_duality(const Matrix& z, const Matrix& m, std::span<const int> labels) {
    check_classifier(z, m, labels);
    double worst = 0.0;
    for (std::size_t i = 0; i < z.cols(); ++i) {
        worst = std::max(worst, distance(z.column(i), m.column(static_cast<std::size_t>(labels[i]))));
    }
    return worst;
}

Nc3Result nc3_frame_gap(const Matrix& m) {
    if (m.cols() < 2) {
        throw DomainError("nc3_frame_gap: need at least two classes");
    }
    const Frame f(m, true);
    Nc3Result out;
    out.signed_maxcorr = max_correlation(f, CorrelationMode::Signed);
    const auto bound = welch_bound(f.dim(), f.count());
    if (bound && out.signed_maxcorr <= 0.0) {
        out.welch_gap = std::abs(out.signed_maxcorr) - *bound;
    }
    return out;
}

double nc4_agreement(const Matrix& z, const Matrix& m, std::span<const int> labels) {
    check_classifier(z, m, labels);
    const Matrix means = class_means(z, labels, m.cols());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < z.cols(); ++i) {
        const auto zi = z.column(i);
        if (argmax_score(m, zi) == nearest_mean(means, zi)) {
            ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(z.cols());
}

NcReport gnc_report(const Matrix& m, const Matrix& z, std::span<const int> labels) {
    NcReport r;
    r.nc1 = nc1_variability(z, labels, m.cols());
    r.nc2 = nc2_self_duality(z, m, labels);
    const auto nc3 = nc3_frame_gap(m);
    r.nc3_signed = nc3.signed_maxcorr;
    r.nc3_welch_gap = nc3.welch_gap;
    r.nc4_agreement = nc4_agreement(z, m, labels);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        r.ref_norm = std::max(r.ref_norm, m.column_norm(j));
    }
    for (std::size_t j = 0; j < z.cols(); ++j) {
        r.ref_norm = std::max(r.ref_norm, z.column_norm(j));
    }
    return r;
}

}  // namespace gnc
