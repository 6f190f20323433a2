#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gnc/frames.hpp"
#include "gnc/rng.hpp"

namespace gnc {

struct ChannelConfig {
    Frame codebook;
    double sigma = 1.0;
    std::uint64_t trials = 1;
    RngSeed seed{0};
};

struct ChannelResult {
    double error_rate = 0.0;
    double ci95_halfwidth = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    std::vector<std::uint64_t> per_class_errors;
    std::vector<std::uint64_t> per_class_trials;
    /// -sigma^2 log(error_rate); empty when no error was observed.
    std::optional<double> exponent_estimate;
    /// min_{c != c'} ||M_c - M_c'||^2 / 8.
    double exponent_target = 0.0;
};

/// argmin_c ||M_c - h||, ties to the smallest index.
std::size_t min_distance_decode(std::span<const double> h, const Frame& codebook);

/// Monte Carlo over trials t = 0..T-1. Trial t draws its class and then its
/// d noise coordinates from Rng(derive_seed(seed, t)), so the result does not
/// depend on evaluation order.
ChannelResult simulate_channel(const ChannelConfig& config);

/// Q(D / (2 sigma)): the exact error probability of minimum-distance
/// decoding between two codes at distance D.
double pairwise_error_analytic(double dist, double sigma);

/// Standard normal upper tail.
double q_function(double x);

double min_squared_distance(const Frame& codebook);

struct ExponentRow {
    double sigma = 0.0;
    double error_rate = 0.0;
    double ci95_halfwidth = 0.0;
    std::optional<double> exponent_estimate;
    double exponent_target = 0.0;
    bool estimable = false;
};

/// One simulate_channel run per sigma (strictly decreasing, positive). Rows
/// with zero observed errors are flagged unestimable. Each sigma uses the
/// sub-stream derive_seed(seed, row index).
std::vector<ExponentRow> error_exponent_sweep(const Frame& codebook, std::span<const double> sigmas,
                                              std::uint64_t trials, RngSeed seed);

}  // namespace gnc
