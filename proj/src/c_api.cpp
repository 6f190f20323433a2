#include "gnc/gnc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "gnc/bounds.hpp"
#include "gnc/channel.hpp"
#include "gnc/collapse.hpp"
#include "gnc/error.hpp"
#include "gnc/frames.hpp"
#include "gnc/io.hpp"
#include "gnc/ufm.hpp"

struct gnc_frame {
    gnc::Frame frame;
};

struct gnc_ufm_result {
    gnc::UfmConfig config;
    gnc::Trajectory trajectory;
    std::optional<gnc::UfmState> final_state;
};

namespace {

thread_local std::string g_last_error;

template <class F>
gnc_status guarded(F&& body) {
    try {
        g_last_error.clear();
        body();
        return GNC_OK;
    } catch (const gnc::FormatError& e) {
        g_last_error = e.what();
        return GNC_ERR_FORMAT;
    } catch (const gnc::DomainError& e) {
        g_last_error = e.what();
        return GNC_ERR_INVALID;
    } catch (const gnc::DivergenceError& e) {
        g_last_error = e.what();
        return GNC_ERR_DIVERGED;
    } catch (const gnc::IoError& e) {
        g_last_error = e.what();
        return GNC_ERR_IO;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return GNC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return GNC_ERR_INTERNAL;
    }
}

void require(bool ok, const char* message) {
    if (!ok) {
        throw gnc::DomainError(message);
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

gnc::Matrix from_column_major(std::size_t rows, std::size_t cols, const double* data) {
    std::vector<double> values(rows * cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t r = 0; r < rows; ++r) {
            values[r * cols + j] = data[j * rows + r];
        }
    }
    return gnc::Matrix(rows, cols, std::move(values));
}

std::vector<double> to_column_major(const gnc::Matrix& m) {
    std::vector<double> out(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out[j * m.rows() + r] = m(r, j);
        }
    }
    return out;
}

gnc::UfmConfig to_config(const gnc_ufm_config& c) {
    gnc::UfmConfig config;
    config.d = c.d;
    config.num_classes = c.num_classes;
    config.n_per_class = c.n_per_class;
    config.lambda = c.lambda;
    config.alpha = c.alpha;
    config.max_iters = c.max_iters;
    config.seed = gnc::RngSeed{c.seed};
    config.init_scale = c.init_scale;
    config.record_every = c.record_every;
    return config;
}

std::vector<gnc::Matrix> seeded_permutations(std::size_t num_classes, std::size_t count, uint64_t seed) {
    std::vector<gnc::Matrix> perms;
    perms.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        perms.push_back(gnc::random_permutation(num_classes, gnc::derive_seed(gnc::RngSeed{seed}, k)));
    }
    return perms;
}

}  // namespace

extern "C" {

const char* gnc_version(void) {
    return "0.1.0";
}

const char* gnc_last_error(void) {
    return g_last_error.c_str();
}

void gnc_string_free(char* s) {
    std::free(s);
}

gnc_status gnc_frame_create(size_t d, size_t count, const double* columns, int normalize,
                            gnc_frame** out) {
    return guarded([&] {
        require(columns != nullptr && out != nullptr, "gnc_frame_create: null argument");
        *out = new gnc_frame{gnc::Frame(from_column_major(d, count, columns), normalize != 0)};
    });
}

gnc_status gnc_frame_from_json(const char* json, gnc_frame** out) {
    return guarded([&] {
        require(json != nullptr && out != nullptr, "gnc_frame_from_json: null argument");
        *out = new gnc_frame{gnc::frame_from_json(json)};
    });
}

gnc_status gnc_frame_load(const char* path, gnc_frame** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "gnc_frame_load: null argument");
        *out = new gnc_frame{gnc::load_frame(path)};
    });
}

gnc_status gnc_frame_save(const gnc_frame* frame, const char* path) {
    return guarded([&] {
        require(frame != nullptr && path != nullptr, "gnc_frame_save: null argument");
        gnc::save_frame(frame->frame, path);
    });
}

gnc_status gnc_frame_to_json(const gnc_frame* frame, char** out) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_to_json: null argument");
        *out = copy_string(gnc::frame_to_json(frame->frame));
    });
}

void gnc_frame_free(gnc_frame* frame) {
    delete frame;
}

size_t gnc_frame_dim(const gnc_frame* frame) {
    return frame == nullptr ? 0 : frame->frame.dim();
}

size_t gnc_frame_count(const gnc_frame* frame) {
    return frame == nullptr ? 0 : frame->frame.count();
}

gnc_status gnc_frame_columns(const gnc_frame* frame, double* out, size_t capacity) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_columns: null argument");
        const auto values = to_column_major(frame->frame.columns());
        require(capacity >= values.size(), "gnc_frame_columns: buffer too small");
        std::copy(values.begin(), values.end(), out);
    });
}

gnc_status gnc_frame_set_meta(gnc_frame* frame, const char* key, const char* value) {
    return guarded([&] {
        require(frame != nullptr && key != nullptr && value != nullptr, "gnc_frame_set_meta: null argument");
        frame->frame.meta()[key] = value;
    });
}

const char* gnc_frame_get_meta(const gnc_frame* frame, const char* key) {
    if (frame == nullptr || key == nullptr) {
        return nullptr;
    }
    const auto it = frame->frame.meta().find(key);
    return it == frame->frame.meta().end() ? nullptr : it->second.c_str();
}

gnc_status gnc_frame_check(const gnc_frame* frame, double tol, gnc_frame_report* out) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_check: null argument");
        const gnc::FrameReport r = gnc::check_frame(frame->frame, tol);
        out->is_uniform = r.is_uniform;
        out->is_unit_norm = r.is_unit_norm;
        out->is_tight = r.is_tight;
        out->is_equiangular = r.is_equiangular;
        out->max_corr_signed = r.max_corr_signed;
        out->max_corr_absolute = r.max_corr_absolute;
        out->has_welch_bound = r.welch_bound.has_value();
        out->welch_bound = r.welch_bound.value_or(0.0);
        out->welch_gap = r.welch_gap.value_or(0.0);
        out->tolerance = r.tolerance;
    });
}

gnc_status gnc_frame_check_json(const gnc_frame* frame, double tol, char** out) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_check_json: null argument");
        *out = copy_string(gnc::frame_report_to_json(gnc::check_frame(frame->frame, tol)));
    });
}

gnc_status gnc_frame_max_correlation(const gnc_frame* frame, gnc_corr_mode mode, double* out) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_max_correlation: null argument");
        *out = gnc::max_correlation(frame->frame, mode == GNC_CORR_ABSOLUTE
                                                      ? gnc::CorrelationMode::Absolute
                                                      : gnc::CorrelationMode::Signed);
    });
}

int gnc_welch_bound(size_t d, size_t count, double* out) {
    if (d == 0 || count == 0) {
        return 0;
    }
    const auto bound = gnc::welch_bound(d, count);
    if (bound && out != nullptr) {
        *out = *bound;
    }
    return bound.has_value() ? 1 : 0;
}

gnc_status gnc_frame_transform(const gnc_frame* frame, int has_rotate, uint64_t rotate_seed,
                               int has_permute, uint64_t permute_seed, gnc_frame** out) {
    return guarded([&] {
        require(frame != nullptr && out != nullptr, "gnc_frame_transform: null argument");
        gnc::Frame result = frame->frame;
        if (has_rotate) {
            result = gnc::transform_type1(result,
                                          gnc::random_rotation(result.dim(), gnc::RngSeed{rotate_seed}));
            result.meta()["rotate_seed"] = std::to_string(rotate_seed);
        }
        if (has_permute) {
            result = gnc::transform_type2(
                result, gnc::random_permutation(result.count(), gnc::RngSeed{permute_seed}));
            result.meta()["permute_seed"] = std::to_string(permute_seed);
        }
        *out = new gnc_frame{std::move(result)};
    });
}

gnc_status gnc_simplex_etf(size_t d, size_t count, double alpha, uint64_t seed, gnc_frame** out) {
    return guarded([&] {
        require(out != nullptr, "gnc_simplex_etf: null argument");
        *out = new gnc_frame{gnc::simplex_etf(d, count, alpha, gnc::RngSeed{seed})};
    });
}

void gnc_synth_options_default(gnc_synth_options* options) {
    if (options == nullptr) {
        return;
    }
    const gnc::SynthesisOptions defaults;
    options->lambda = defaults.lambda;
    options->alpha = defaults.alpha;
    options->max_iters = defaults.max_iters;
    options->seed = defaults.seed.value;
    options->init_scale = defaults.init_scale;
}

gnc_status gnc_synthesize_grassmannian(size_t d, size_t count, const gnc_synth_options* options,
                                       gnc_frame** out) {
    return guarded([&] {
        require(out != nullptr, "gnc_synthesize_grassmannian: null argument");
        gnc::SynthesisOptions opts;
        if (options != nullptr) {
            opts.lambda = options->lambda;
            opts.alpha = options->alpha;
            opts.max_iters = options->max_iters;
            opts.seed = gnc::RngSeed{options->seed};
            opts.init_scale = options->init_scale;
        }
        *out = new gnc_frame{gnc::synthesize_grassmannian(d, count, opts)};
    });
}

void gnc_ufm_config_default(gnc_ufm_config* config) {
    if (config == nullptr) {
        return;
    }
    const gnc::UfmConfig defaults;
    config->d = defaults.d;
    config->num_classes = defaults.num_classes;
    config->n_per_class = defaults.n_per_class;
    config->lambda = defaults.lambda;
    config->alpha = defaults.alpha;
    config->max_iters = defaults.max_iters;
    config->seed = defaults.seed.value;
    config->init_scale = defaults.init_scale;
    config->record_every = defaults.record_every;
}

gnc_status gnc_ufm_run(const gnc_ufm_config* config, const int64_t* snapshot_iters,
                       size_t snapshot_count, gnc_snapshot_fn on_snapshot, void* user,
                       gnc_ufm_result** out) {
    return guarded([&] {
        require(config != nullptr && out != nullptr, "gnc_ufm_run: null argument");
        require(snapshot_count == 0 || snapshot_iters != nullptr, "gnc_ufm_run: null snapshot list");
        *out = nullptr;
        const gnc::UfmConfig cfg = to_config(*config);
        gnc::SnapshotHook hook;
        if (snapshot_count > 0) {
            hook.iters.assign(snapshot_iters, snapshot_iters + snapshot_count);
        }
        if (on_snapshot != nullptr) {
            const auto labels = gnc::class_major_labels(cfg.num_classes, cfg.n_per_class);
            hook.on_snapshot = [&, labels](const gnc::UfmState& state) {
                const auto m = to_column_major(state.m);
                const auto z = to_column_major(state.z);
                on_snapshot(user, state.iter, cfg.d, cfg.num_classes, cfg.sample_count(), m.data(),
                            z.data(), labels.data());
            };
        }
        try {
            gnc::UfmRun run = gnc::run_ufm(cfg, hook);
            *out = new gnc_ufm_result{cfg, std::move(run.trajectory), std::move(run.final_state)};
        } catch (const gnc::UfmDivergence& e) {
            *out = new gnc_ufm_result{cfg, e.trajectory(), std::nullopt};
            throw;
        }
    });
}

void gnc_ufm_result_free(gnc_ufm_result* result) {
    delete result;
}

int64_t gnc_ufm_result_iterations(const gnc_ufm_result* result) {
    if (result == nullptr) {
        return -1;
    }
    if (result->final_state) {
        return result->final_state->iter;
    }
    return result->trajectory.samples.empty() ? 0 : result->trajectory.samples.back().iter;
}

int gnc_ufm_result_diverged(const gnc_ufm_result* result) {
    return result != nullptr && !result->final_state ? 1 : 0;
}

gnc_status gnc_ufm_result_trajectory_csv(const gnc_ufm_result* result, char** out) {
    return guarded([&] {
        require(result != nullptr && out != nullptr, "gnc_ufm_result_trajectory_csv: null argument");
        *out = copy_string(gnc::trajectory_to_csv(result->trajectory));
    });
}

gnc_status gnc_ufm_result_report_json(const gnc_ufm_result* result, char** out) {
    return guarded([&] {
        require(result != nullptr && out != nullptr, "gnc_ufm_result_report_json: null argument");
        require(result->final_state.has_value(), "gnc_ufm_result_report_json: run diverged");
        const auto labels = gnc::class_major_labels(result->config.num_classes, result->config.n_per_class);
        *out = copy_string(gnc::nc_report_to_json(
            gnc::gnc_report(result->final_state->m, result->final_state->z, labels)));
    });
}

gnc_status gnc_ufm_result_classifier(const gnc_ufm_result* result, gnc_frame** out) {
    return guarded([&] {
        require(result != nullptr && out != nullptr, "gnc_ufm_result_classifier: null argument");
        require(result->final_state.has_value(), "gnc_ufm_result_classifier: run diverged");
        *out = new gnc_frame{gnc::Frame(result->final_state->m, true)};
    });
}

gnc_status gnc_render_snapshot_svg(int64_t iter, size_t d, size_t num_classes, size_t n,
                                   const double* m, const double* z, const int* labels, char** out) {
    return guarded([&] {
        require(m != nullptr && z != nullptr && labels != nullptr && out != nullptr,
                "gnc_render_snapshot_svg: null argument");
        const gnc::Matrix mm = from_column_major(d, num_classes, m);
        const gnc::Matrix zz = from_column_major(d, n, z);
        *out = copy_string(gnc::render_snapshot_svg(mm, zz, std::span<const int>(labels, n), iter));
    });
}

gnc_status gnc_channel_simulate(const gnc_frame* codebook, double sigma, uint64_t trials,
                                uint64_t seed, gnc_channel_result* out) {
    return guarded([&] {
        require(codebook != nullptr && out != nullptr, "gnc_channel_simulate: null argument");
        const gnc::ChannelResult r =
            gnc::simulate_channel(gnc::ChannelConfig{codebook->frame, sigma, trials, gnc::RngSeed{seed}});
        out->error_rate = r.error_rate;
        out->ci95_halfwidth = r.ci95_halfwidth;
        out->trials = r.trials;
        out->errors = r.errors;
        out->has_exponent_estimate = r.exponent_estimate.has_value();
        out->exponent_estimate = r.exponent_estimate.value_or(0.0);
        out->exponent_target = r.exponent_target;
    });
}

gnc_status gnc_channel_simulate_json(const gnc_frame* codebook, double sigma, uint64_t trials,
                                     uint64_t seed, char** out) {
    return guarded([&] {
        require(codebook != nullptr && out != nullptr, "gnc_channel_simulate_json: null argument");
        *out = copy_string(gnc::channel_result_to_json(gnc::simulate_channel(
            gnc::ChannelConfig{codebook->frame, sigma, trials, gnc::RngSeed{seed}})));
    });
}

gnc_status gnc_channel_sweep_csv(const gnc_frame* codebook, const double* sigmas, size_t sigma_count,
                                 uint64_t trials, uint64_t seed, char** out) {
    return guarded([&] {
        require(codebook != nullptr && sigmas != nullptr && out != nullptr,
                "gnc_channel_sweep_csv: null argument");
        const auto rows = gnc::error_exponent_sweep(
            codebook->frame, std::span<const double>(sigmas, sigma_count), trials, gnc::RngSeed{seed});
        *out = copy_string(gnc::sweep_to_csv(rows));
    });
}

gnc_status gnc_pairwise_error_analytic(double dist, double sigma, double* out) {
    return guarded([&] {
        require(out != nullptr, "gnc_pairwise_error_analytic: null argument");
        *out = gnc::pairwise_error_analytic(dist, sigma);
    });
}

gnc_status gnc_margin_bound_json(const char* params_json, char** out) {
    return guarded([&] {
        require(params_json != nullptr && out != nullptr, "gnc_margin_bound_json: null argument");
        *out = copy_string(gnc::bound_report_to_json(
            gnc::multiclass_margin_bound(gnc::bound_params_from_json(params_json))));
    });
}

gnc_status gnc_accuracy_bound_json(const gnc_frame* frame, const char* supports_json, double rho,
                                   double lipschitz, uint64_t total_samples, char** out) {
    return guarded([&] {
        require(frame != nullptr && supports_json != nullptr && out != nullptr,
                "gnc_accuracy_bound_json: null argument");
        const auto supports = gnc::supports_from_json(supports_json);
        const double bound =
            gnc::accuracy_lower_bound(frame->frame, rho, lipschitz, supports, total_samples);
        nlohmann::json doc;
        doc["accuracy_lower_bound"] = bound;
        *out = copy_string(doc.dump(2) + "\n");
    });
}

gnc_status gnc_permutation_sweep_json(const gnc_frame* frame, const char* supports_json, double rho,
                                      double lipschitz, uint64_t total_samples, size_t count,
                                      uint64_t seed, char** out) {
    return guarded([&] {
        require(frame != nullptr && supports_json != nullptr && out != nullptr,
                "gnc_permutation_sweep_json: null argument");
        require(count > 0, "gnc_permutation_sweep_json: need at least one permutation");
        const auto supports = gnc::supports_from_json(supports_json);
        const auto perms = seeded_permutations(frame->frame.count(), count, seed);
        const auto bounds =
            gnc::permutation_bound_sweep(frame->frame, supports, rho, lipschitz, total_samples, perms);
        nlohmann::json doc;
        doc["bounds"] = bounds;
        nlohmann::json orders = nlohmann::json::array();
        for (const auto& p : perms) {
            std::vector<std::size_t> order(p.rows());
            for (std::size_t i = 0; i < p.rows(); ++i) {
                for (std::size_t j = 0; j < p.cols(); ++j) {
                    if (p(i, j) == 1.0) {
                        order[i] = j;
                    }
                }
            }
            orders.push_back(order);
        }
        doc["permutations"] = std::move(orders);
        const auto [lo, hi] = std::minmax_element(bounds.begin(), bounds.end());
        doc["min"] = *lo;
        doc["max"] = *hi;
        doc["range"] = *hi - *lo;
        *out = copy_string(doc.dump(2) + "\n");
    });
}

}  // extern "C"
