/*
 * C interface to the gnc toolkit: Grassmannian frame synthesis through the
 * unconstrained feature model, neural collapse metrics, frame checks and
 * equivalence transforms, Gaussian channel simulation and margin/covering
 * bounds.
 *
 * Conventions
 *   - Every fallible call returns a gnc_status. On failure the message is
 *     available from gnc_last_error() until the next call on the same thread.
 *   - Objects are opaque handles released with their *_free function.
 *     Passing NULL to a *_free function is a no-op.
 *   - Strings returned through char** are heap allocated; release them with
 *     gnc_string_free().
 *   - Matrices cross the boundary as column-major arrays: a d x C frame is C
 *     consecutive vectors of length d.
 */
#ifndef GNC_GNC_H
#define GNC_GNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GNC_BUILDING_LIBRARY)
#    define GNC_API __declspec(dllexport)
#  else
#    define GNC_API __declspec(dllimport)
#  endif
#else
#  define GNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gnc_status {
    GNC_OK = 0,
    GNC_ERR_INVALID = 1,   /* precondition / domain violation */
    GNC_ERR_FORMAT = 2,    /* malformed input document */
    GNC_ERR_DIVERGED = 3,  /* gradient descent produced a non-finite value */
    GNC_ERR_IO = 4,        /* file could not be read or written */
    GNC_ERR_INTERNAL = 5
} gnc_status;

typedef enum gnc_corr_mode {
    GNC_CORR_SIGNED = 0,
    GNC_CORR_ABSOLUTE = 1
} gnc_corr_mode;

typedef struct gnc_frame gnc_frame;
typedef struct gnc_ufm_result gnc_ufm_result;

GNC_API const char* gnc_version(void);
GNC_API const char* gnc_last_error(void);
GNC_API void gnc_string_free(char* s);

/* ---- frames ---------------------------------------------------------- */

GNC_API gnc_status gnc_frame_create(size_t d, size_t count, const double* columns, int normalize,
                                    gnc_frame** out);
GNC_API gnc_status gnc_frame_from_json(const char* json, gnc_frame** out);
GNC_API gnc_status gnc_frame_load(const char* path, gnc_frame** out);
GNC_API gnc_status gnc_frame_save(const gnc_frame* frame, const char* path);
GNC_API gnc_status gnc_frame_to_json(const gnc_frame* frame, char** out);
GNC_API void gnc_frame_free(gnc_frame* frame);

GNC_API size_t gnc_frame_dim(const gnc_frame* frame);
GNC_API size_t gnc_frame_count(const gnc_frame* frame);
/* Copies d * C values (column-major) into `out`, which must hold `capacity`. */
GNC_API gnc_status gnc_frame_columns(const gnc_frame* frame, double* out, size_t capacity);
GNC_API gnc_status gnc_frame_set_meta(gnc_frame* frame, const char* key, const char* value);
/* NULL when the key is absent. Valid while the frame is alive and unmodified. */
GNC_API const char* gnc_frame_get_meta(const gnc_frame* frame, const char* key);

typedef struct gnc_frame_report {
    int is_uniform;
    int is_unit_norm;
    int is_tight;
    int is_equiangular;
    double max_corr_signed;
    double max_corr_absolute;
    int has_welch_bound;
    double welch_bound;
    double welch_gap;
    double tolerance;
} gnc_frame_report;

GNC_API gnc_status gnc_frame_check(const gnc_frame* frame, double tol, gnc_frame_report* out);
GNC_API gnc_status gnc_frame_check_json(const gnc_frame* frame, double tol, char** out);
GNC_API gnc_status gnc_frame_max_correlation(const gnc_frame* frame, gnc_corr_mode mode, double* out);
/* 1 and sets *out when C <= d(d+1)/2, 0 otherwise. */
GNC_API int gnc_welch_bound(size_t d, size_t count, double* out);

/* Equivalent frame R * M * P. R = random rotation from rotate_seed (skipped
 * when has_rotate is 0), P = random permutation from permute_seed (skipped
 * when has_permute is 0). Meta records the seeds. */
GNC_API gnc_status gnc_frame_transform(const gnc_frame* frame, int has_rotate, uint64_t rotate_seed,
                                       int has_permute, uint64_t permute_seed, gnc_frame** out);

GNC_API gnc_status gnc_simplex_etf(size_t d, size_t count, double alpha, uint64_t seed,
                                   gnc_frame** out);

typedef struct gnc_synth_options {
    double lambda;
    double alpha;
    int64_t max_iters;
    uint64_t seed;
    double init_scale;
} gnc_synth_options;

GNC_API void gnc_synth_options_default(gnc_synth_options* options);
GNC_API gnc_status gnc_synthesize_grassmannian(size_t d, size_t count,
                                               const gnc_synth_options* options, gnc_frame** out);

/* ---- unconstrained feature model -------------------------------------- */

typedef struct gnc_ufm_config {
    size_t d;
    size_t num_classes;
    size_t n_per_class;
    double lambda;
    double alpha;
    int64_t max_iters;
    uint64_t seed;
    double init_scale;
    int64_t record_every;
} gnc_ufm_config;

GNC_API void gnc_ufm_config_default(gnc_ufm_config* config);

/* Snapshot callback. M is d x C and Z is d x N, both column-major; labels
 * holds N 0-based class indices. Pointers are valid only during the call. */
typedef void (*gnc_snapshot_fn)(void* user, int64_t iter, size_t d, size_t num_classes, size_t n,
                                const double* m, const double* z, const int* labels);

/* Runs gradient descent. On GNC_ERR_DIVERGED *out still receives a result
 * holding the trajectory recorded before divergence. */
GNC_API gnc_status gnc_ufm_run(const gnc_ufm_config* config, const int64_t* snapshot_iters,
                               size_t snapshot_count, gnc_snapshot_fn on_snapshot, void* user,
                               gnc_ufm_result** out);
GNC_API void gnc_ufm_result_free(gnc_ufm_result* result);
GNC_API int64_t gnc_ufm_result_iterations(const gnc_ufm_result* result);
GNC_API int gnc_ufm_result_diverged(const gnc_ufm_result* result);
GNC_API gnc_status gnc_ufm_result_trajectory_csv(const gnc_ufm_result* result, char** out);
/* NcReport of the final state, as JSON. */
GNC_API gnc_status gnc_ufm_result_report_json(const gnc_ufm_result* result, char** out);
/* Final classifier as a normalized frame. */
GNC_API gnc_status gnc_ufm_result_classifier(const gnc_ufm_result* result, gnc_frame** out);

GNC_API gnc_status gnc_render_snapshot_svg(int64_t iter, size_t d, size_t num_classes, size_t n,
                                           const double* m, const double* z, const int* labels,
                                           char** out);

/* ---- Gaussian channel ------------------------------------------------- */

typedef struct gnc_channel_result {
    double error_rate;
    double ci95_halfwidth;
    uint64_t trials;
    uint64_t errors;
    int has_exponent_estimate;
    double exponent_estimate;
    double exponent_target;
} gnc_channel_result;

GNC_API gnc_status gnc_channel_simulate(const gnc_frame* codebook, double sigma, uint64_t trials,
                                        uint64_t seed, gnc_channel_result* out);
GNC_API gnc_status gnc_channel_simulate_json(const gnc_frame* codebook, double sigma,
                                             uint64_t trials, uint64_t seed, char** out);
GNC_API gnc_status gnc_channel_sweep_csv(const gnc_frame* codebook, const double* sigmas,
                                         size_t sigma_count, uint64_t trials, uint64_t seed,
                                         char** out);
GNC_API gnc_status gnc_pairwise_error_analytic(double dist, double sigma, double* out);

/* ---- bounds ----------------------------------------------------------- */

/* BoundParams JSON in, BoundReport JSON out. */
GNC_API gnc_status gnc_margin_bound_json(const char* params_json, char** out);
/* {"accuracy_lower_bound": x} for the frame and {"supports": ...} document. */
GNC_API gnc_status gnc_accuracy_bound_json(const gnc_frame* frame, const char* supports_json,
                                           double rho, double lipschitz, uint64_t total_samples,
                                           char** out);
/* Evaluates `count` permutations drawn from derive(seed, k), k = 0..count-1.
 * JSON: {"bounds": [...], "permutations": [[...]], "min": x, "max": y, "range": y - x}. */
GNC_API gnc_status gnc_permutation_sweep_json(const gnc_frame* frame, const char* supports_json,
                                              double rho, double lipschitz, uint64_t total_samples,
                                              size_t count, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif /* GNC_GNC_H */
