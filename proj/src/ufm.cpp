#include "gnc/ufm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gnc/collapse.hpp"
#include "gnc/format.hpp"

namespace gnc {

namespace {

void check_shapes(const Matrix& m, const Matrix& z, std::span<const int> labels) {
    if (m.rows() != z.rows()) {
        throw DomainError("classifier has " + std::to_string(m.rows()) + " rows but features have " +
                          std::to_string(z.rows()));
    }
    if (labels.size() != z.cols()) {
        throw DomainError("expected one label per feature column");
    }
    for (int y : labels) {
        if (y < 0 || static_cast<std::size_t>(y) >= m.cols()) {
            throw DomainError("label " + std::to_string(y) + " outside [0, C)");
        }
    }
}

void logits(const Matrix& m, const Matrix& z, std::size_t i, std::vector<double>& out) {
    const std::size_t d = m.rows();
    const std::size_t c = m.cols();
    for (std::size_t y = 0; y < c; ++y) {
        double s = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            s += m(r, y) * z(r, i);
        }
        out[y] = s;
    }
}

double squared_frobenius(const Matrix& a) {
    double s = 0.0;
    for (double x : a.values()) {
        s += x * x;
    }
    return s;
}

void require_finite(const Matrix& a, const char* what, std::int64_t iter) {
    if (!a.all_finite()) {
        throw DivergenceError(std::string("non-finite ") + what + " at iteration " +
                                  std::to_string(iter),
                              iter);
    }
}

void apply_step(UfmState& state, const UfmGradients& g, const UfmConfig& config) {
    const double alpha = config.alpha;
    const double beta = config.beta();
    auto zv = state.z.values();
    auto gz = g.z.values();
    for (std::size_t k = 0; k < zv.size(); ++k) {
        zv[k] -= alpha * gz[k];
    }
    auto mv = state.m.values();
    auto gm = g.m.values();
    for (std::size_t k = 0; k < mv.size(); ++k) {
        mv[k] -= beta * gm[k];
    }
    ++state.iter;
}

}  // namespace

double UfmConfig::omega() const noexcept {
    return lambda * static_cast<double>(num_classes) / static_cast<double>(sample_count());
}

double UfmConfig::beta() const noexcept {
    return alpha * static_cast<double>(num_classes) / static_cast<double>(sample_count());
}

void UfmConfig::validate() const {
    if (d == 0 || num_classes == 0 || n_per_class == 0) {
        throw DomainError("ufm config: d, C and n_per_class must be positive");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw DomainError("ufm config: lambda must be positive");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("ufm config: alpha must be positive");
    }
    if (max_iters < 0) {
        throw DomainError("ufm config: max_iters must be non-negative");
    }
    if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
        throw DomainError("ufm config: init_scale must be positive");
    }
    if (record_every <= 0) {
        throw DomainError("ufm config: record_every must be positive");
    }
}

std::vector<int> class_major_labels(std::size_t num_classes, std::size_t n_per_class) {
    std::vector<int> labels(num_classes * n_per_class);
    for (std::size_t k = 0; k < labels.size(); ++k) {
        labels[k] = static_cast<int>(k % num_classes);
    }
    return labels;
}

double ce_loss(const Matrix& m, const Matrix& z, std::span<const int> labels) {
    check_shapes(m, z, labels);
    std::vector<double> s(m.cols());
    double total = 0.0;
    for (std::size_t i = 0; i < z.cols(); ++i) {
        logits(m, z, i, s);
        const auto top_it = std::max_element(s.begin(), s.end());
        const double top = *top_it;
        double rest = 0.0;
        for (auto it = s.begin(); it != s.end(); ++it) {
            if (it != top_it) {
                rest += std::exp(*it - top);
            }
        }
        // -log p_y = logsumexp(s) - s_y, with log1p keeping tiny losses exact.
        total += std::log1p(rest) + top - s[static_cast<std::size_t>(labels[i])];
    }
    return total;
}

double ufm_loss(const Matrix& m, const Matrix& z, std::span<const int> labels, double lambda,
                double omega) {
    if (!(lambda > 0.0) || !(omega > 0.0)) {
        throw DomainError("ufm_loss: lambda and omega must be positive");
    }
    return ce_loss(m, z, labels) + 0.5 * omega * squared_frobenius(z) +
           0.5 * lambda * squared_frobenius(m);
}

UfmGradients ufm_gradients(const Matrix& m, const Matrix& z, std::span<const int> labels,
                           double lambda, double omega) {
    check_shapes(m, z, labels);
    const std::size_t d = m.rows();
    const std::size_t c = m.cols();
    const std::size_t n = z.cols();

    UfmGradients g{lambda * m, omega * z};
    std::vector<double> s(c);
    for (std::size_t i = 0; i < n; ++i) {
        logits(m, z, i, s);
        auto p = softmax(s);
        p[static_cast<std::size_t>(labels[i])] -= 1.0;
        for (std::size_t y = 0; y < c; ++y) {
            const double py = p[y];
            for (std::size_t r = 0; r < d; ++r) {
                g.z(r, i) += m(r, y) * py;
                g.m(r, y) += z(r, i) * py;
            }
        }
    }
    return g;
}

UfmState gd_step(const UfmState& state, const UfmConfig& config) {
    const auto labels = class_major_labels(config.num_classes, config.n_per_class);
    const UfmGradients g = ufm_gradients(state.m, state.z, labels, config.lambda, config.omega());
    require_finite(g.z, "feature gradient", state.iter);
    require_finite(g.m, "classifier gradient", state.iter);
    UfmState next = state;
    apply_step(next, g, config);
    require_finite(next.z, "features", next.iter);
    require_finite(next.m, "classifier", next.iter);
    return next;
}

UfmState initial_state(const UfmConfig& config) {
    config.validate();
    Rng rng(config.seed);
    UfmState state{Matrix(config.d, config.num_classes), Matrix(config.d, config.sample_count()), 0};
    for (double& x : state.m.values()) {
        x = config.init_scale * rng.normal();
    }
    for (double& x : state.z.values()) {
        x = config.init_scale * rng.normal();
    }
    return state;
}

TrajectorySample measure(const UfmState& state, const UfmConfig& config) {
    const auto labels = class_major_labels(config.num_classes, config.n_per_class);
    TrajectorySample s;
    s.iter = state.iter;
    s.ce_loss = ce_loss(state.m, state.z, labels);
    s.ufm_loss = s.ce_loss + 0.5 * config.omega() * squared_frobenius(state.z) +
                 0.5 * config.lambda * squared_frobenius(state.m);
    const NcReport nc = gnc_report(state.m, state.z, labels);
    s.nc1 = nc.nc1;
    s.nc2 = nc.nc2;
    s.nc3_signed_maxcorr = config.num_classes >= 2 ? nc.nc3_signed : 0.0;
    s.nc4_agreement = nc.nc4_agreement;
    s.max_norm = nc.ref_norm;
    return s;
}

UfmRun run_ufm(const UfmConfig& config, const SnapshotHook& hook) {
    config.validate();
    if (config.num_classes < 2) {
        throw DomainError("run_ufm: need at least two classes");
    }
    const auto labels = class_major_labels(config.num_classes, config.n_per_class);
    const double omega = config.omega();
    const double grad_scale = std::sqrt(static_cast<double>(config.d * config.sample_count()));

    std::vector<std::int64_t> snaps = hook.iters;
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    std::size_t next_snap = 0;
    std::int64_t last_snapshot_iter = -1;
    auto maybe_snapshot = [&](const UfmState& state) {
        while (next_snap < snaps.size() && snaps[next_snap] < state.iter) {
            ++next_snap;
        }
        if (next_snap < snaps.size() && snaps[next_snap] == state.iter) {
            if (hook.on_snapshot) {
                hook.on_snapshot(state);
            }
            last_snapshot_iter = state.iter;
            ++next_snap;
        }
    };

    UfmRun run{initial_state(config), Trajectory{config, {}}};
    UfmState& state = run.final_state;
    run.trajectory.samples.push_back(measure(state, config));
    maybe_snapshot(state);

    try {
        while (state.iter < config.max_iters) {
            const UfmGradients g = ufm_gradients(state.m, state.z, labels, config.lambda, omega);
            require_finite(g.z, "feature gradient", state.iter);
            require_finite(g.m, "classifier gradient", state.iter);
            const double gnorm =
                std::sqrt(squared_frobenius(g.m) + squared_frobenius(g.z)) / grad_scale;
            if (gnorm < kUfmGradientTolerance) {
                break;
            }
            apply_step(state, g, config);
            require_finite(state.z, "features", state.iter);
            require_finite(state.m, "classifier", state.iter);
            if (state.iter % config.record_every == 0) {
                run.trajectory.samples.push_back(measure(state, config));
            }
            maybe_snapshot(state);
        }
    } catch (const DivergenceError& e) {
        throw UfmDivergence(e, std::move(run.trajectory));
    }

    if (run.trajectory.samples.back().iter != state.iter) {
        run.trajectory.samples.push_back(measure(state, config));
    }
    if (next_snap < snaps.size() && last_snapshot_iter != state.iter && hook.on_snapshot) {
        hook.on_snapshot(state);
    }
    return run;
}

Frame synthesize_grassmannian(std::size_t d, std::size_t num_classes,
                              const SynthesisOptions& options) {
    if (d < 2 || num_classes < 2) {
        throw DomainError("synthesize_grassmannian: d and C must be at least 2");
    }
    UfmConfig config;
    config.d = d;
    config.num_classes = num_classes;
    config.n_per_class = 1;
    config.lambda = options.lambda;
    config.alpha = options.alpha;
    config.max_iters = options.max_iters;
    config.seed = options.seed;
    config.init_scale = options.init_scale;
    config.record_every = std::max<std::int64_t>(1, options.max_iters);

    const UfmRun run = run_ufm(config);
    Frame frame(run.final_state.m, true);
    const double corr = max_correlation(frame, CorrelationMode::Signed);
    Meta& meta = frame.meta();
    meta["generator"] = "ufm_gradient_descent";
    meta["seed"] = std::to_string(options.seed.value);
    meta["iters"] = std::to_string(run.final_state.iter);
    meta["lambda"] = format_double(options.lambda);
    meta["alpha"] = format_double(options.alpha);
    meta["signed_max_correlation"] = format_double(corr);
    return frame;
}

}  // namespace gnc
