#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gnc/error.hpp"
#include "gnc/frames.hpp"
#include "gnc/linalg.hpp"
#include "gnc/rng.hpp"

namespace gnc {

/// Hyperparameters of gradient descent on the unconstrained feature model
///
///   L(M, Z) = sum_i [ -log softmax(z_i^T M)_{y_i} + (omega/2)||z_i||^2 ]
///             + (lambda/2) sum_y ||M_y||^2.
///
/// The feature decay omega and classifier step beta are not free: they are
/// derived so that lambda/omega = alpha/beta = N/C, which makes features and
/// classifier columns share one norm bound.
struct UfmConfig {
    std::size_t d = 2;
    std::size_t num_classes = 4;
    std::size_t n_per_class = 20;
    double lambda = 0.01;
    double alpha = 0.05;
    std::int64_t max_iters = 200000;
    RngSeed seed{0};
    double init_scale = 0.1;
    std::int64_t record_every = 1000;

    std::size_t sample_count() const noexcept { return num_classes * n_per_class; }
    double omega() const noexcept;
    double beta() const noexcept;

    /// Throws DomainError on non-positive sizes or hyperparameters.
    void validate() const;
};

/// Labels for the class-major layout: column k holds sample k / C of class
/// k % C, so Z = [Z_1, ..., Z_{N/C}] with Z_i = [z_{1,i}, ..., z_{C,i}].
std::vector<int> class_major_labels(std::size_t num_classes, std::size_t n_per_class);

struct UfmState {
    Matrix m;  // d x C classifier
    Matrix z;  // d x N features
    std::int64_t iter = 0;
};

struct UfmGradients {
    Matrix m;
    Matrix z;
};

/// Summed cross-entropy over the columns of Z (labels are 0-based).
double ce_loss(const Matrix& m, const Matrix& z, std::span<const int> labels);

double ufm_loss(const Matrix& m, const Matrix& z, std::span<const int> labels, double lambda,
                double omega);

/// Exact gradients of ufm_loss:
///   grad z_i = M (p_i - e_{y_i}) + omega z_i
///   grad M   = sum_i z_i (p_i - e_{y_i})^T + lambda M
/// with p_i = softmax(z_i^T M).
UfmGradients ufm_gradients(const Matrix& m, const Matrix& z, std::span<const int> labels,
                           double lambda, double omega);

/// One simultaneous step: both gradients are taken at the incoming state.
/// Throws DivergenceError when a gradient or the new state is non-finite.
UfmState gd_step(const UfmState& state, const UfmConfig& config);

struct TrajectorySample {
    std::int64_t iter = 0;
    double ce_loss = 0.0;
    double ufm_loss = 0.0;
    double nc1 = 0.0;
    double nc2 = 0.0;
    double nc3_signed_maxcorr = 0.0;
    double nc4_agreement = 0.0;
    double max_norm = 0.0;
};

struct Trajectory {
    UfmConfig config;
    std::vector<TrajectorySample> samples;
};

/// Divergence during run_ufm; carries the samples recorded before the
/// first non-finite value.
class UfmDivergence : public DivergenceError {
public:
    UfmDivergence(const DivergenceError& cause, Trajectory partial)
        : DivergenceError(cause.what(), cause.iter()), trajectory_(std::move(partial)) {}

    const Trajectory& trajectory() const noexcept { return trajectory_; }

private:
    Trajectory trajectory_;
};

struct UfmRun {
    UfmState final_state;
    Trajectory trajectory;
};

/// Called with the current state at each requested iteration. If the run
/// stops before a requested iteration, the final state is reported once.
struct SnapshotHook {
    std::vector<std::int64_t> iters;
    std::function<void(const UfmState&)> on_snapshot;
};

inline constexpr double kUfmGradientTolerance = 1e-10;

UfmState initial_state(const UfmConfig& config);
TrajectorySample measure(const UfmState& state, const UfmConfig& config);

/// Gaussian initialization (std init_scale, M then Z drawn row-major from
/// the seeded stream), then gd_step until max_iters or until
/// ||(grad M, grad Z)||_F / sqrt(d N) < 1e-10. Records iteration 0, every
/// record_every iterations, and the final iterate.
UfmRun run_ufm(const UfmConfig& config, const SnapshotHook& hook = {});

struct SynthesisOptions {
    double lambda = 0.1;
    double alpha = 0.1;
    std::int64_t max_iters = 1000;
    RngSeed seed{1000};
    double init_scale = 0.1;
};

/// Grassmannian frame from the one-sample-per-class feature model: runs
/// run_ufm with n_per_class = 1 and returns the normalized classifier.
Frame synthesize_grassmannian(std::size_t d, std::size_t num_classes,
                              const SynthesisOptions& options = {});

}  // namespace gnc
