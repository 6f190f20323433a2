#pragma once

// Independent oracles shared by the test suites. Nothing here calls into the
// library's numerical routines beyond constructing Matrix/Frame values.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "gnc/frames.hpp"
#include "gnc/linalg.hpp"
#include "gnc/rng.hpp"

namespace oracle {

// Frozen reference values of the Gaussian tail Q(x) = P(N(0,1) > x).
inline constexpr double kQ1 = 0.15865525393145705;
inline constexpr double kQ2 = 0.022750131948179209;

// Determinant by LU decomposition with partial pivoting.
inline double lu_determinant(gnc::Matrix a) {
    const std::size_t n = a.rows();
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) {
                pivot = r;
            }
        }
        if (a(pivot, k) == 0.0) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(k, c), a(pivot, c));
            }
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a(r, k) / a(k, k);
            for (std::size_t c = k; c < n; ++c) {
                a(r, c) -= f * a(k, c);
            }
        }
    }
    return det;
}

inline gnc::Matrix structured_matrix(double a, double c, std::size_t n) {
    gnc::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = i == j ? a : c;
        }
    }
    return m;
}

inline gnc::Matrix mercedes_columns(double scale = 1.0) {
    gnc::Matrix m(2, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        const double t = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(j) / 3.0;
        m(0, j) = scale * std::cos(t);
        m(1, j) = scale * std::sin(t);
    }
    return m;
}

inline gnc::Matrix cross_columns(double scale = 1.0) {
    return scale * gnc::Matrix::from_columns({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}

inline gnc::Frame mercedes() { return gnc::Frame(mercedes_columns(), true); }
inline gnc::Frame cross() { return gnc::Frame(cross_columns(), true); }

inline double col_dot(const gnc::Matrix& m, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        s += m(r, i) * m(r, j);
    }
    return s;
}

inline double col_norm(const gnc::Matrix& m, std::size_t j) { return std::sqrt(col_dot(m, j, j)); }

// Pairwise cosine enumeration: max over i < j of cos or |cos|.
inline double max_cosine(const gnc::Matrix& m, bool absolute) {
    double best = -2.0;
    for (std::size_t i = 0; i < m.cols(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            double c = col_dot(m, i, j) / (col_norm(m, i) * col_norm(m, j));
            best = std::max(best, absolute ? std::abs(c) : c);
        }
    }
    return best;
}

inline gnc::Matrix random_matrix(std::size_t rows, std::size_t cols, gnc::Rng& rng, double scale = 1.0) {
    gnc::Matrix m(rows, cols);
    for (auto& v : m.values()) {
        v = scale * rng.normal();
    }
    return m;
}

inline gnc::Matrix random_unit_columns(std::size_t d, std::size_t c, gnc::Rng& rng) {
    gnc::Matrix m = random_matrix(d, c, rng);
    for (std::size_t j = 0; j < c; ++j) {
        const double n = col_norm(m, j);
        for (std::size_t r = 0; r < d; ++r) {
            m(r, j) /= n;
        }
    }
    return m;
}

inline std::vector<int> random_labels(std::size_t n, std::size_t c, gnc::Rng& rng) {
    // Every class appears at least once.
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = i < c ? static_cast<int>(i) : static_cast<int>(rng.below(c));
    }
    return labels;
}

// Minimum number of centers chosen from a 1-D point set so every point is
// within distance < eps of a center: sorted sweep, each group spans < 2 eps
// around a center that is itself a point of the set.
inline std::size_t exact_cover_1d(std::vector<double> xs, double eps) {
    std::sort(xs.begin(), xs.end());
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < xs.size()) {
        // Farthest point usable as center for xs[i].
        std::size_t c = i;
        while (c + 1 < xs.size() && xs[c + 1] - xs[i] < eps) {
            ++c;
        }
        std::size_t next = c;
        while (next < xs.size() && xs[next] - xs[c] < eps) {
            ++next;
        }
        ++count;
        i = next;
    }
    return count;
}

// Exhaustive minimum cover with centers drawn from the points themselves.
inline std::size_t exact_cover_bruteforce(const std::vector<std::vector<double>>& pts, double eps) {
    const std::size_t n = pts.size();
    auto dist = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t k = 0; k < pts[a].size(); ++k) {
            s += (pts[a][k] - pts[b][k]) * (pts[a][k] - pts[b][k]);
        }
        return std::sqrt(s);
    };
    std::size_t best = n;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) {
            continue;
        }
        bool ok = true;
        for (std::size_t p = 0; p < n && ok; ++p) {
            bool covered = false;
            for (std::size_t c = 0; c < n && !covered; ++c) {
                covered = ((mask >> c) & 1u) && dist(p, c) < eps;
            }
            ok = covered;
        }
        if (ok) {
            best = size;
        }
    }
    return best;
}

}  // namespace oracle
