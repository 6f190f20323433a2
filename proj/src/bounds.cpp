#include "gnc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gnc/error.hpp"
#include "gnc/format.hpp"

namespace gnc {

namespace {

std::string pair_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// log(log2(4K / gamma)), requiring gamma in (0, 2K).
double loglog_margin(double gamma, double k_bound, std::size_t i, std::size_t j) {
    if (!(gamma > 0.0) || !(gamma < 2.0 * k_bound)) {
        throw DomainError("margin " + pair_name(i, j) + " = " + format_double(gamma) +
                          " outside (0, 2K) with K = " + format_double(k_bound));
    }
    return std::log(std::log2(4.0 * k_bound / gamma));
}

void require_square(const Matrix& g, std::size_t c, const char* what) {
    if (g.rows() != c || g.cols() != c) {
        throw DomainError(std::string(what) + ": margin matrix must be " + std::to_string(c) +
                          "x" + std::to_string(c));
    }
}

}  // namespace

bool MarginMatrix::separable() const {
    for (std::size_t i = 0; i < gamma.rows(); ++i) {
        for (std::size_t j = 0; j < gamma.cols(); ++j) {
            if (i != j && !(gamma(i, j) > 0.0)) {
                return false;
            }
        }
    }
    return true;
}

MarginMatrix margins(const Matrix& m, const Matrix& z, std::span<const int> labels) {
    if (m.rows() != z.rows() || labels.size() != z.cols()) {
        throw DomainError("margins: shape mismatch");
    }
    const std::size_t c = m.cols();
    MarginMatrix out{Matrix(c, c)};
    std::vector<bool> seen(c, false);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            out.gamma(i, j) = i == j ? 0.0 : std::numeric_limits<double>::infinity();
        }
    }
    for (std::size_t s = 0; s < z.cols(); ++s) {
        if (labels[s] < 0 || static_cast<std::size_t>(labels[s]) >= c) {
            throw DomainError("margins: label out of range");
        }
        const auto i = static_cast<std::size_t>(labels[s]);
        seen[i] = true;
        for (std::size_t j = 0; j < c; ++j) {
            if (j == i) {
                continue;
            }
            double v = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                v += (m(r, i) - m(r, j)) * z(r, s);
            }
            out.gamma(i, j) = std::min(out.gamma(i, j), v);
        }
    }
    for (std::size_t i = 0; i < c; ++i) {
        if (!seen[i]) {
            throw DomainError("margins: class " + std::to_string(i) + " has no samples");
        }
    }
    return out;
}

MarginLemmaCheck verify_margin_lemma(const Matrix& m, const MarginMatrix& gamma, double rho,
                                     double tol) {
    const std::size_t c = m.cols();
    require_square(gamma.gamma, c, "verify_margin_lemma");
    MarginLemmaCheck out;
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j) {
                continue;
            }
            const double corr = dot(m.column(i), m.column(j));
            out.max_residual = std::max(out.max_residual, std::abs(gamma.gamma(i, j) + corr - rho * rho));
        }
    }
    out.passed = out.max_residual <= tol;
    return out;
}

void BoundParams::validate() const {
    const std::size_t c = num_classes;
    if (c < 2) {
        throw DomainError("bound params: C must be at least 2");
    }
    if (p.size() != c || n_per_class.size() != c || rademacher.size() != c) {
        throw DomainError("bound params: p, N and rademacher must each have C entries");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        if (!(p[i] >= 0.0)) {
            throw DomainError("bound params: p[" + std::to_string(i) + "] is negative");
        }
        if (!(n_per_class[i] >= 1.0)) {
            throw DomainError("bound params: N[" + std::to_string(i) + "] must be at least 1");
        }
        if (!(rademacher[i] >= 0.0)) {
            throw DomainError("bound params: rademacher[" + std::to_string(i) + "] is negative");
        }
        total += p[i];
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw DomainError("bound params: p sums to " + format_double(total) + ", expected 1");
    }
    if (!(k_bound > 0.0)) {
        throw DomainError("bound params: K must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw DomainError("bound params: delta must lie in (0, 1)");
    }
    require_square(gamma.gamma, c, "bound params");
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (i != j) {
                loglog_margin(gamma.gamma(i, j), k_bound, i, j);
            }
        }
    }
}

BoundReport multiclass_margin_bound(const BoundParams& params) {
    params.validate();
    const std::size_t c = params.num_classes;
    const double cc = static_cast<double>(c);
    const double log_confidence = std::log(cc * (cc - 1.0) / params.delta);

    BoundReport report;
    for (std::size_t i = 0; i < c; ++i) {
        const double n_i = params.n_per_class[i];
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j) {
                continue;
            }
            const double g = params.gamma.gamma(i, j);
            PairTerms t;
            t.i = i;
            t.j = j;
            t.rademacher = params.p[i] * params.rademacher[i] / g;
            t.log = params.p[i] * std::sqrt(loglog_margin(g, params.k_bound, i, j) / n_i);
            t.probability = params.p[i] * std::sqrt(log_confidence / (2.0 * n_i));
            report.rademacher_term += t.rademacher;
            report.log_term += t.log;
            report.probability_term += t.probability;
            report.pairs.push_back(t);
        }
    }
    report.empirical_term = params.empirical_term;
    report.total = report.rademacher_term + report.log_term + report.empirical_term +
                   report.probability_term;
    return report;
}

double empirical_risk_term(const BoundParams& params, const Matrix& m, const Matrix& z,
                           std::span<const int> labels) {
    const std::size_t c = params.num_classes;
    if (m.cols() != c || m.rows() != z.rows() || labels.size() != z.cols()) {
        throw DomainError("empirical_risk_term: shape mismatch");
    }
    require_square(params.gamma.gamma, c, "empirical_risk_term");
    std::vector<double> counts(c, 0.0);
    Matrix violations(c, c);
    for (std::size_t s = 0; s < z.cols(); ++s) {
        if (labels[s] < 0 || static_cast<std::size_t>(labels[s]) >= c) {
            throw DomainError("empirical_risk_term: label out of range");
        }
        const auto i = static_cast<std::size_t>(labels[s]);
        counts[i] += 1.0;
        for (std::size_t j = 0; j < c; ++j) {
            if (j == i) {
                continue;
            }
            double v = 0.0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                v += (m(r, i) - m(r, j)) * z(r, s);
            }
            if (v <= params.gamma.gamma(i, j)) {
                violations(i, j) += 1.0;
            }
        }
    }
    double term = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        if (counts[i] == 0.0) {
            throw DomainError("empirical_risk_term: class " + std::to_string(i) + " has no samples");
        }
        for (std::size_t j = 0; j < c; ++j) {
            if (i != j) {
                term += params.p[i] * violations(i, j) / counts[i];
            }
        }
    }
    return term;
}

MarginSumCheck margin_sum_inequality(const MarginMatrix& gamma) {
    const std::size_t c = gamma.num_classes();
    MarginSumCheck out;
    double worst = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j) {
                continue;
            }
            const double g = gamma.gamma(i, j);
            if (!(g > 0.0)) {
                throw DomainError("margin_sum_inequality: margin " + pair_name(i, j) +
                                  " must be positive");
            }
            out.sum_form += 1.0 / g;
            worst = std::max(worst, 1.0 / g);
        }
    }
    out.max_form = static_cast<double>(c * (c - 1)) * worst;
    // Equality holds exactly when every margin is equal; allow for the
    // rounding of the summation.
    out.holds = out.sum_form <= out.max_form * (1.0 + 1e-12);
    return out;
}

MarginSumCheck balanced_bound_check(const BoundParams& params) {
    params.validate();
    const double expected_p = 1.0 / static_cast<double>(params.num_classes);
    for (std::size_t i = 0; i < params.num_classes; ++i) {
        if (std::abs(params.p[i] - expected_p) > 1e-12) {
            throw DomainError("balanced_bound_check: class distribution is not uniform");
        }
        if (params.n_per_class[i] != params.n_per_class[0]) {
            throw DomainError("balanced_bound_check: class sizes differ");
        }
    }
    return margin_sum_inequality(params.gamma);
}

double minority_prefactor(std::size_t num_classes, std::size_t num_majority, double ratio) {
    if (num_majority >= num_classes) {
        throw DomainError("minority_prefactor: need C1 < C");
    }
    if (!(ratio >= 1.0)) {
        throw DomainError("minority_prefactor: imbalance ratio must be at least 1");
    }
    const double c = static_cast<double>(num_classes);
    const double c1 = static_cast<double>(num_majority);
    return 1.0 / (c1 * ratio + c - c1);
}

namespace {

double minority_pair_value(const MinorityParams& params, double prefactor, double g, std::size_t i,
                           std::size_t j) {
    return prefactor * (params.rademacher / g +
                        std::sqrt(loglog_margin(g, params.k_bound, i, j) / params.n_minority));
}

void validate_minority(const MinorityParams& params) {
    if (!(params.n_minority >= 1.0)) {
        throw DomainError("minority_terms: N2 must be at least 1");
    }
    if (!(params.k_bound > 0.0)) {
        throw DomainError("minority_terms: K must be positive");
    }
    if (!(params.rademacher >= 0.0)) {
        throw DomainError("minority_terms: rademacher must be non-negative");
    }
}

}  // namespace

std::vector<MinorityTerm> minority_terms(const MinorityParams& params) {
    const double prefactor =
        minority_prefactor(params.num_classes, params.num_majority, params.imbalance_ratio);
    validate_minority(params);
    const std::size_t minority = params.num_classes - params.num_majority;
    require_square(params.gamma, minority, "minority_terms");
    std::vector<MinorityTerm> terms;
    for (std::size_t i = 0; i < minority; ++i) {
        for (std::size_t j = 0; j < minority; ++j) {
            if (i != j) {
                terms.push_back({i, j, minority_pair_value(params, prefactor, params.gamma(i, j), i, j)});
            }
        }
    }
    return terms;
}

double minority_admissible_margin(const MinorityParams& params, double budget) {
    const double prefactor =
        minority_prefactor(params.num_classes, params.num_majority, params.imbalance_ratio);
    validate_minority(params);
    const double hi_limit = 2.0 * params.k_bound;
    // The term tends to +inf as gamma -> 0 and decreases to R/(2K) * prefactor
    // (the loglog part vanishes) as gamma -> 2K.
    double lo = hi_limit * 1e-15;
    double hi = hi_limit * (1.0 - 1e-15);
    auto term = [&](double g) { return minority_pair_value(params, prefactor, g, 0, 1); };
    if (!(term(hi) < budget) || !(term(lo) > budget)) {
        throw DomainError("minority_admissible_margin: budget " + format_double(budget) +
                          " not attainable for gamma in (0, 2K)");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (term(mid) > budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::size_t covering_number_greedy(const PointSet& points, double eps) {
    if (points.empty()) {
        throw DomainError("covering_number_greedy: empty point set");
    }
    if (!(eps > 0.0)) {
        throw DomainError("covering_number_greedy: eps must be positive");
    }
    const std::size_t dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw DomainError("covering_number_greedy: points have different dimensions");
        }
    }
    // Distance from each point to its nearest chosen center.
    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    std::size_t centers = 0;
    std::size_t next = 0;
    for (;;) {
        ++centers;
        for (std::size_t k = 0; k < points.size(); ++k) {
            nearest[k] = std::min(nearest[k], distance(points[k], points[next]));
        }
        std::size_t farthest = 0;
        for (std::size_t k = 1; k < points.size(); ++k) {
            if (nearest[k] > nearest[farthest]) {
                farthest = k;
            }
        }
        if (nearest[farthest] < eps) {
            return centers;
        }
        next = farthest;
    }
}

Matrix covering_radii(const Frame& frame, double rho, double lipschitz) {
    if (!(rho > 0.0)) {
        throw DomainError("covering_radii: rho must be positive");
    }
    if (!(lipschitz > 0.0)) {
        throw DomainError("covering_radii: Lipschitz constant must be positive");
    }
    const std::size_t c = frame.count();
    const Matrix g = gram(frame);
    Matrix radii(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (i == j) {
                continue;
            }
            const double cosine = g(i, j) / std::sqrt(g(i, i) * g(j, j));
            const double inner = rho * rho * cosine;
            const double slack = rho * rho - inner;
            if (!(slack > 0.0)) {
                throw DomainError("covering radius for pair " + pair_name(i, j) +
                                  " is not positive (correlation reaches rho^2)");
            }
            radii(i, j) = std::sqrt(slack / 2.0) / lipschitz;
        }
    }
    return radii;
}

double accuracy_lower_bound(const Frame& frame, double rho, double lipschitz,
                            const std::vector<PointSet>& supports, std::uint64_t total_samples) {
    const std::size_t c = frame.count();
    if (c < 2) {
        throw DomainError("accuracy_lower_bound: need at least two classes");
    }
    if (supports.size() != c) {
        throw DomainError("accuracy_lower_bound: expected " + std::to_string(c) +
                          " class supports, got " + std::to_string(supports.size()));
    }
    if (total_samples == 0) {
        throw DomainError("accuracy_lower_bound: N must be positive");
    }
    const Matrix radii = covering_radii(frame, rho, lipschitz);
    std::uint64_t cover_sum = 0;
    for (std::size_t i = 0; i < c; ++i) {
        std::size_t worst = 0;
        for (std::size_t j = 0; j < c; ++j) {
            if (j != i) {
                worst = std::max(worst, covering_number_greedy(supports[i], radii(i, j)));
            }
        }
        cover_sum += worst;
    }
    return 1.0 - static_cast<double>(cover_sum) / (2.0 * static_cast<double>(total_samples));
}

std::vector<double> permutation_bound_sweep(const Frame& frame,
                                            const std::vector<PointSet>& supports, double rho,
                                            double lipschitz, std::uint64_t total_samples,
                                            std::span<const Matrix> permutations) {
    std::vector<double> out;
    out.reserve(permutations.size());
    for (const Matrix& p : permutations) {
        out.push_back(accuracy_lower_bound(transform_type2(frame, p), rho, lipschitz, supports,
                                           total_samples));
    }
    return out;
}

}  // namespace gnc
