#include "gnc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gnc/error.hpp"

namespace gnc {

std::size_t min_distance_decode(std::span<const double> h, const Frame& codebook) {
    if (h.size() != codebook.dim()) {
        throw DomainError("min_distance_decode: signal has length " + std::to_string(h.size()) +
                          ", codebook dimension is " + std::to_string(codebook.dim()));
    }
    const Matrix& m = codebook.columns();
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const double diff = m(r, c) - h[r];
            s += diff * diff;
        }
        if (s < best_dist) {
            best_dist = s;
            best = c;
        }
    }
    return best;
}

double min_squared_distance(const Frame& codebook) {
    const Matrix& m = codebook.columns();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.cols(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double dist = distance(m.column(i), m.column(j));
            best = std::min(best, dist * dist);
        }
    }
    return best;
}

ChannelResult simulate_channel(const ChannelConfig& config) {
    if (!(config.sigma > 0.0) || !std::isfinite(config.sigma)) {
        throw DomainError("simulate_channel: sigma must be positive");
    }
    if (config.trials == 0) {
        throw DomainError("simulate_channel: trials must be positive");
    }
    const Frame& codebook = config.codebook;
    const std::size_t d = codebook.dim();
    const std::size_t num_codes = codebook.count();
    const Matrix& m = codebook.columns();

    ChannelResult result;
    result.trials = config.trials;
    result.per_class_errors.assign(num_codes, 0);
    result.per_class_trials.assign(num_codes, 0);

    std::vector<double> h(d);
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        Rng rng(derive_seed(config.seed, t));
        const auto sent = static_cast<std::size_t>(rng.below(num_codes));
        for (std::size_t r = 0; r < d; ++r) {
            h[r] = m(r, sent) + config.sigma * rng.normal();
        }
        ++result.per_class_trials[sent];
        if (min_distance_decode(h, codebook) != sent) {
            ++result.per_class_errors[sent];
            ++result.errors;
        }
    }

    const double n = static_cast<double>(config.trials);
    const double p = static_cast<double>(result.errors) / n;
    result.error_rate = p;
    result.ci95_halfwidth = 1.96 * std::sqrt(p * (1.0 - p) / n);
    if (result.errors > 0) {
        result.exponent_estimate = -config.sigma * config.sigma * std::log(p);
    }
    result.exponent_target = num_codes >= 2 ? min_squared_distance(codebook) / 8.0 : 0.0;
    return result;
}

double q_function(double x) {
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double pairwise_error_analytic(double dist, double sigma) {
    if (!(dist > 0.0) || !(sigma > 0.0)) {
        throw DomainError("pairwise_error_analytic: distance and sigma must be positive");
    }
    return q_function(dist / (2.0 * sigma));
}

std::vector<ExponentRow> error_exponent_sweep(const Frame& codebook, std::span<const double> sigmas,
                                              std::uint64_t trials, RngSeed seed) {
    if (sigmas.empty()) {
        throw DomainError("error_exponent_sweep: no sigma values");
    }
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        if (!(sigmas[k] > 0.0)) {
            throw DomainError("error_exponent_sweep: sigma values must be positive");
        }
        if (k > 0 && !(sigmas[k] < sigmas[k - 1])) {
            throw DomainError("error_exponent_sweep: sigma values must be strictly decreasing");
        }
    }
    std::vector<ExponentRow> rows;
    rows.reserve(sigmas.size());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        const ChannelResult r =
            simulate_channel(ChannelConfig{codebook, sigmas[k], trials, derive_seed(seed, k)});
        ExponentRow row;
        row.sigma = sigmas[k];
        row.error_rate = r.error_rate;
        row.ci95_halfwidth = r.ci95_halfwidth;
        row.exponent_estimate = r.exponent_estimate;
        row.exponent_target = r.exponent_target;
        row.estimable = r.errors > 0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gnc
