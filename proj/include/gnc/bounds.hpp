#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gnc/frames.hpp"
#include "gnc/linalg.hpp"

namespace gnc {

/// gamma(i, j) = min over samples z of class i of (M_i - M_j)^T z.
/// The diagonal is unused and left at 0.
struct MarginMatrix {
    Matrix gamma;

    std::size_t num_classes() const noexcept { return gamma.rows(); }
    /// All off-diagonal margins strictly positive.
    bool separable() const;
};

MarginMatrix margins(const Matrix& m, const Matrix& z, std::span<const int> labels);

struct MarginLemmaCheck {
    double max_residual = 0.0;
    bool passed = false;
};

/// max_{i != j} |gamma_ij + <M_i, M_j> - rho^2|. At full collapse with
/// column norm rho the residual vanishes.
MarginLemmaCheck verify_margin_lemma(const Matrix& m, const MarginMatrix& gamma, double rho,
                                     double tol);

struct BoundParams {
    std::size_t num_classes = 0;
    std::vector<double> p;                  // class distribution
    std::vector<double> n_per_class;        // N_i
    std::vector<double> rademacher;         // R_{N_i}(F) per class, caller supplied
    double k_bound = 0.0;                   // K, bound on |margin function|
    double delta = 0.05;
    MarginMatrix gamma{Matrix(1, 1)};
    double empirical_term = 0.0;            // L_{0,1}; see empirical_risk_term

    /// Throws DomainError naming the first offending field or pair.
    void validate() const;
};

struct PairTerms {
    std::size_t i = 0;
    std::size_t j = 0;
    double rademacher = 0.0;
    double log = 0.0;
    double probability = 0.0;
};

struct BoundReport {
    double rademacher_term = 0.0;
    double log_term = 0.0;
    double empirical_term = 0.0;
    double probability_term = 0.0;
    double total = 0.0;
    std::vector<PairTerms> pairs;  // already weighted by p(i)
};

/// Full multiclass margin bound:
///   sum_i p(i) sum_{j != i} [ R_{N_i} / gamma_ij
///                              + sqrt(log(log2(4K / gamma_ij)) / N_i)
///                              + sqrt(log(C(C-1)/delta) / (2 N_i)) ] + L_{0,1}.
/// Every gamma_ij must lie in (0, 2K) so the outer log is positive.
BoundReport multiclass_margin_bound(const BoundParams& params);

/// L_{0,1} = sum_i p(i) sum_{j != i} #{z in S_i : (M_i - M_j)^T z <= gamma_ij} / N_i,
/// with N_i taken from the sample counts in `labels`.
double empirical_risk_term(const BoundParams& params, const Matrix& m, const Matrix& z,
                           std::span<const int> labels);

struct MarginSumCheck {
    double sum_form = 0.0;  // sum_{i != j} 1 / gamma_ij
    double max_form = 0.0;  // C(C-1) max_{i != j} 1 / gamma_ij
    bool holds = false;
};

MarginSumCheck margin_sum_inequality(const MarginMatrix& gamma);

/// The balanced case: requires uniform p and equal N_i.
MarginSumCheck balanced_bound_check(const BoundParams& params);

struct MinorityParams {
    std::size_t num_classes = 0;   // C
    std::size_t num_majority = 0;  // C1; classes C1..C-1 are the minority
    double imbalance_ratio = 1.0;  // R = N1 / N2
    double n_minority = 1.0;       // N2
    double rademacher = 0.0;       // R_{N2}(F)
    double k_bound = 1.0;
    Matrix gamma{1, 1};            // (C - C1) x (C - C1) minority margins
};

struct MinorityTerm {
    std::size_t i = 0;  // index within the minority block
    std::size_t j = 0;
    double value = 0.0;
};

/// 1 / (C1 R + C - C1).
double minority_prefactor(std::size_t num_classes, std::size_t num_majority, double ratio);

/// prefactor * (R_{N2} / gamma_ij + sqrt(log(log2(4K / gamma_ij)) / N2)) for
/// every ordered minority pair.
std::vector<MinorityTerm> minority_terms(const MinorityParams& params);

/// The margin gamma in (0, 2K) at which a single minority pair term equals
/// `budget`, found by bisection (the term decreases in gamma). Throws if the
/// budget is not attainable on that interval.
double minority_admissible_margin(const MinorityParams& params, double budget);

using PointSet = std::vector<std::vector<double>>;

/// Size of a greedy farthest-point eps-net: the first point is a center,
/// then the uncovered point farthest from all centers (smallest index on
/// ties) is added until every point is within distance < eps of a center.
/// An upper bound on the covering number of the point set.
std::size_t covering_number_greedy(const PointSet& points, double eps);

/// Covering radius (1/L) sqrt((rho^2 - M_i^T M_j) / 2) with the frame's
/// columns rescaled to norm rho.
Matrix covering_radii(const Frame& frame, double rho, double lipschitz);

/// 1 - (1 / 2N) sum_i max_{j != i} N(r_ij, S_i), with N estimated by
/// covering_number_greedy on each class support.
double accuracy_lower_bound(const Frame& frame, double rho, double lipschitz,
                            const std::vector<PointSet>& supports, std::uint64_t total_samples);

/// accuracy_lower_bound for each column permutation, supports held fixed.
std::vector<double> permutation_bound_sweep(const Frame& frame,
                                            const std::vector<PointSet>& supports, double rho,
                                            double lipschitz, std::uint64_t total_samples,
                                            std::span<const Matrix> permutations);

}  // namespace gnc
