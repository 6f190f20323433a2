// gnc command-line front end. Links only the C API.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gnc/gnc.h"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CliError {
    int code;
    std::string message;
};

struct FrameDeleter {
    void operator()(gnc_frame* f) const { gnc_frame_free(f); }
};
struct StringDeleter {
    void operator()(char* s) const { gnc_string_free(s); }
};
struct ResultDeleter {
    void operator()(gnc_ufm_result* r) const { gnc_ufm_result_free(r); }
};
using FramePtr = std::unique_ptr<gnc_frame, FrameDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;
using ResultPtr = std::unique_ptr<gnc_ufm_result, ResultDeleter>;

int exit_code_for(gnc_status s) {
    return (s == GNC_ERR_INVALID || s == GNC_ERR_FORMAT) ? kExitUsage : kExitRuntime;
}

void check(gnc_status s) {
    if (s != GNC_OK) {
        throw CliError{exit_code_for(s), gnc_last_error()};
    }
}

std::string take(char* raw) {
    StringPtr owned(raw);
    return owned ? std::string(owned.get()) : std::string();
}

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + fmt(xs[i]);
    }
    return out;
}

FramePtr load_input_frame(const std::string& path) {
    if (!fs::is_regular_file(path)) {
        throw CliError{kExitUsage, "cannot read frame file: " + path};
    }
    gnc_frame* raw = nullptr;
    const gnc_status s = gnc_frame_load(path.c_str(), &raw);
    if (s == GNC_ERR_IO) {
        throw CliError{kExitUsage, gnc_last_error()};
    }
    check(s);
    return FramePtr(raw);
}

std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError{kExitUsage, "cannot read " + path};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw CliError{kExitRuntime, "cannot create output directory: " + dir.string()};
    }
}

void write_output(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.flush();
    if (!out) {
        throw CliError{kExitRuntime, "cannot write " + path.string()};
    }
}

fs::path absolute_path(const fs::path& p) {
    return fs::weakly_canonical(fs::absolute(p));
}

// One run of a subcommand. Handlers fill config with every resolved flag so
// the manifest can rebuild the exact command line.
struct Run {
    std::string command;
    ordered_json config = ordered_json::object();
    ordered_json seed = nullptr;
    std::vector<fs::path> outputs;
    std::optional<fs::path> manifest_dir;
    // Raised after the manifest is written.
    std::optional<CliError> failure;
};

struct Context {
    std::vector<std::string> argv;
    std::string cwd;
};

void write_manifest(const Run& run, const Context& ctx) {
    if (!run.manifest_dir) {
        return;
    }
    ordered_json m;
    m["command"] = run.command;
    m["config"] = run.config;
    m["seed"] = run.seed;
    m["version"] = gnc_version();
    ordered_json outs = ordered_json::array();
    for (const auto& p : run.outputs) {
        outs.push_back(p.string());
    }
    m["outputs"] = std::move(outs);
    m["cwd"] = ctx.cwd;
    m["argv"] = ctx.argv;
    write_output(*run.manifest_dir / "manifest.json", m.dump(2) + "\n");
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
    std::size_t d = 2;
    std::size_t c = 4;
    std::uint64_t seed = 0;
    std::int64_t iters = 0;
    double lambda = 0.0;
    double alpha = 0.0;
    std::string out;
};

Run cmd_gen(const GenArgs& a) {
    gnc_synth_options opts;
    gnc_synth_options_default(&opts);
    opts.lambda = a.lambda;
    opts.alpha = a.alpha;
    opts.max_iters = a.iters;
    opts.seed = a.seed;

    Run run{"gen"};
    run.config = {{"d", a.d},         {"C", a.c},         {"seed", a.seed}, {"iters", a.iters},
                  {"lambda", fmt(a.lambda)}, {"alpha", fmt(a.alpha)}, {"out", a.out}};
    run.seed = a.seed;

    const fs::path out = absolute_path(a.out);
    ensure_dir(out.parent_path());
    gnc_frame* raw = nullptr;
    check(gnc_synthesize_grassmannian(a.d, a.c, &opts, &raw));
    FramePtr frame(raw);
    check(gnc_frame_save(frame.get(), out.string().c_str()));
    double corr = 0.0;
    check(gnc_frame_max_correlation(frame.get(), GNC_CORR_SIGNED, &corr));
    std::cout << fmt(corr) << "\n";
    run.outputs.push_back(out);
    run.manifest_dir = out.parent_path();
    return run;
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
    std::string path;
    double tol = 1e-6;
};

Run cmd_check(const CheckArgs& a) {
    FramePtr frame = load_input_frame(a.path);
    char* json = nullptr;
    check(gnc_frame_check_json(frame.get(), a.tol, &json));
    std::cout << take(json);
    return Run{"check"};
}

// ---- transform -----------------------------------------------------------

struct TransformArgs {
    std::string path;
    std::optional<std::uint64_t> rotate_seed;
    std::optional<std::uint64_t> permute_seed;
    std::string out;
};

Run cmd_transform(const TransformArgs& a) {
    if (!a.rotate_seed && !a.permute_seed) {
        throw CliError{kExitUsage, "transform needs --rotate-seed and/or --permute-seed"};
    }
    Run run{"transform"};
    run.config["path"] = a.path;
    if (a.rotate_seed) {
        run.config["rotate-seed"] = *a.rotate_seed;
    }
    if (a.permute_seed) {
        run.config["permute-seed"] = *a.permute_seed;
    }
    run.config["out"] = a.out;
    run.seed = {{"rotate", a.rotate_seed ? ordered_json(*a.rotate_seed) : ordered_json(nullptr)},
                {"permute", a.permute_seed ? ordered_json(*a.permute_seed) : ordered_json(nullptr)}};

    FramePtr frame = load_input_frame(a.path);
    const fs::path out = absolute_path(a.out);
    ensure_dir(out.parent_path());
    gnc_frame* raw = nullptr;
    check(gnc_frame_transform(frame.get(), a.rotate_seed.has_value(), a.rotate_seed.value_or(0),
                              a.permute_seed.has_value(), a.permute_seed.value_or(0), &raw));
    FramePtr result(raw);
    check(gnc_frame_save(result.get(), out.string().c_str()));
    run.outputs.push_back(out);
    run.manifest_dir = out.parent_path();
    return run;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
    gnc_ufm_config config{};
    std::size_t snapshots = 5;
    std::string out_dir;
};

struct SnapshotSink {
    fs::path dir;
    std::vector<fs::path> written;
    std::optional<CliError> error;
};

void on_snapshot(void* user, int64_t iter, size_t d, size_t num_classes, size_t n, const double* m,
                 const double* z, const int* labels) {
    auto* sink = static_cast<SnapshotSink*>(user);
    if (sink->error) {
        return;
    }
    try {
        char* svg = nullptr;
        check(gnc_render_snapshot_svg(iter, d, num_classes, n, m, z, labels, &svg));
        const fs::path path = sink->dir / ("snap_" + std::to_string(iter) + ".svg");
        write_output(path, take(svg));
        if (std::find(sink->written.begin(), sink->written.end(), path) == sink->written.end()) {
            sink->written.push_back(path);
        }
    } catch (const CliError& e) {
        sink->error = e;
    }
}

Run cmd_simulate(const SimulateArgs& a) {
    const gnc_ufm_config& c = a.config;
    Run run{"simulate"};
    run.config = {{"d", c.d},
                  {"C", c.num_classes},
                  {"n-per-class", c.n_per_class},
                  {"lambda", fmt(c.lambda)},
                  {"alpha", fmt(c.alpha)},
                  {"iters", c.max_iters},
                  {"init-scale", fmt(c.init_scale)},
                  {"record-every", c.record_every},
                  {"seed", c.seed},
                  {"snapshots", a.snapshots},
                  {"out-dir", a.out_dir}};
    run.seed = c.seed;

    const fs::path dir = absolute_path(a.out_dir);
    ensure_dir(dir);
    run.manifest_dir = dir;

    std::vector<int64_t> iters;
    if (a.snapshots > 0 && c.d != 2) {
        std::cout << "notice: snapshots need d = 2; skipping SVG output\n";
    } else if (a.snapshots == 1) {
        iters.push_back(c.max_iters);
    } else if (a.snapshots > 1) {
        for (std::size_t k = 0; k < a.snapshots; ++k) {
            const double at = static_cast<double>(k) * static_cast<double>(c.max_iters) /
                              static_cast<double>(a.snapshots - 1);
            iters.push_back(static_cast<int64_t>(std::llround(at)));
        }
    }

    SnapshotSink sink{dir};
    gnc_ufm_result* raw = nullptr;
    const gnc_status status = gnc_ufm_run(&c, iters.data(), iters.size(),
                                          iters.empty() ? nullptr : on_snapshot, &sink, &raw);
    ResultPtr result(raw);
    if (sink.error) {
        throw *sink.error;
    }
    if (status != GNC_OK && status != GNC_ERR_DIVERGED) {
        check(status);
    }
    const std::string diverged_message = status == GNC_ERR_DIVERGED ? gnc_last_error() : "";

    char* csv = nullptr;
    check(gnc_ufm_result_trajectory_csv(result.get(), &csv));
    write_output(dir / "trajectory.csv", take(csv));
    run.outputs.push_back(dir / "trajectory.csv");
    for (const auto& p : sink.written) {
        run.outputs.push_back(p);
    }
    if (status == GNC_ERR_DIVERGED) {
        run.failure = CliError{kExitRuntime, diverged_message};
        return run;
    }

    char* report = nullptr;
    check(gnc_ufm_result_report_json(result.get(), &report));
    write_output(dir / "report.json", take(report));
    run.outputs.push_back(dir / "report.json");

    gnc_frame* classifier = nullptr;
    check(gnc_ufm_result_classifier(result.get(), &classifier));
    FramePtr frame(classifier);
    check(gnc_frame_save(frame.get(), (dir / "classifier.json").string().c_str()));
    run.outputs.push_back(dir / "classifier.json");
    std::cout << "iterations: " << gnc_ufm_result_iterations(result.get()) << "\n";
    return run;
}

// ---- channel -------------------------------------------------------------

struct ChannelArgs {
    std::string path;
    std::optional<double> sigma;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::vector<double> sweep;
    std::string out;
};

Run cmd_channel(const ChannelArgs& a) {
    if (!a.sigma && a.sweep.empty()) {
        throw CliError{kExitUsage, "channel needs --sigma or --sweep"};
    }
    Run run{"channel"};
    run.config["path"] = a.path;
    if (a.sigma) {
        run.config["sigma"] = fmt(*a.sigma);
    }
    run.config["trials"] = a.trials;
    run.config["seed"] = a.seed;
    if (!a.sweep.empty()) {
        run.config["sweep"] = join(a.sweep);
    }
    if (!a.out.empty()) {
        run.config["out"] = a.out;
    }
    run.seed = a.seed;

    FramePtr frame = load_input_frame(a.path);
    char* text = nullptr;
    if (!a.sweep.empty()) {
        check(gnc_channel_sweep_csv(frame.get(), a.sweep.data(), a.sweep.size(), a.trials, a.seed, &text));
    } else {
        check(gnc_channel_simulate_json(frame.get(), *a.sigma, a.trials, a.seed, &text));
    }
    const std::string body = take(text);
    if (a.out.empty()) {
        std::cout << body;
    } else {
        const fs::path out = absolute_path(a.out);
        ensure_dir(out.parent_path());
        write_output(out, body);
        run.outputs.push_back(out);
        run.manifest_dir = out.parent_path();
    }
    return run;
}

// ---- bounds --------------------------------------------------------------

struct BoundsArgs {
    std::string params;
    std::string frame;
    std::string supports;
    std::optional<double> rho;
    double lipschitz = 1.0;
    std::optional<std::uint64_t> n_samples;
    std::size_t permutations = 0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

double frame_norm(const gnc_frame* frame) {
    const std::size_t d = gnc_frame_dim(frame);
    const std::size_t c = gnc_frame_count(frame);
    std::vector<double> values(d * c);
    check(gnc_frame_columns(frame, values.data(), values.size()));
    double best = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            s += values[j * d + r] * values[j * d + r];
        }
        best = std::max(best, std::sqrt(s));
    }
    return best;
}

Run cmd_bounds(const BoundsArgs& a) {
    if (a.params.empty() && a.supports.empty()) {
        throw CliError{kExitUsage, "bounds needs --params and/or --supports"};
    }
    if (!a.supports.empty() && (a.frame.empty() || !a.n_samples)) {
        throw CliError{kExitUsage, "--supports needs --frame and --n-samples"};
    }
    if (a.permutations > 0 && !a.seed) {
        throw CliError{kExitUsage, "--permutations needs --seed"};
    }
    if (a.permutations > 0 && a.supports.empty()) {
        throw CliError{kExitUsage, "--permutations needs --supports"};
    }

    Run run{"bounds"};
    ordered_json result;
    if (!a.params.empty()) {
        run.config["params"] = a.params;
        char* text = nullptr;
        check(gnc_margin_bound_json(read_input(a.params).c_str(), &text));
        result["margin_bound"] = ordered_json::parse(take(text));
    }
    if (!a.supports.empty()) {
        FramePtr frame = load_input_frame(a.frame);
        const double rho = a.rho.value_or(frame_norm(frame.get()));
        run.config["frame"] = a.frame;
        run.config["supports"] = a.supports;
        run.config["rho"] = fmt(rho);
        run.config["lipschitz"] = fmt(a.lipschitz);
        run.config["n-samples"] = *a.n_samples;
        const std::string supports = read_input(a.supports);
        char* text = nullptr;
        if (a.permutations > 0) {
            run.config["permutations"] = a.permutations;
            run.config["seed"] = *a.seed;
            run.seed = *a.seed;
            check(gnc_permutation_sweep_json(frame.get(), supports.c_str(), rho, a.lipschitz,
                                             *a.n_samples, a.permutations, *a.seed, &text));
            result["permutation_sweep"] = ordered_json::parse(take(text));
        } else {
            check(gnc_accuracy_bound_json(frame.get(), supports.c_str(), rho, a.lipschitz,
                                          *a.n_samples, &text));
            result["accuracy"] = ordered_json::parse(take(text));
        }
    }
    // A single evaluation prints its report unwrapped.
    if (result.size() == 1) {
        result = ordered_json(result.begin().value());
    }
    const std::string body = result.dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << body;
    } else {
        run.config["out"] = a.out;
        const fs::path out = absolute_path(a.out);
        ensure_dir(out.parent_path());
        write_output(out, body);
        run.outputs.push_back(out);
        run.manifest_dir = out.parent_path();
    }
    return run;
}

// ---- parsing -------------------------------------------------------------

std::vector<std::string> args_from_manifest(const ordered_json& manifest) {
    if (!manifest.contains("command") || !manifest.contains("config") ||
        !manifest["command"].is_string() || !manifest["config"].is_object()) {
        throw CliError{kExitUsage, "manifest needs \"command\" and \"config\""};
    }
    std::vector<std::string> args{manifest["command"].get<std::string>()};
    const auto& config = manifest["config"];
    if (config.contains("path")) {
        args.push_back(config["path"].get<std::string>());
    }
    for (const auto& [key, value] : config.items()) {
        if (key == "path") {
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return args;
}

int dispatch(std::vector<std::string> args, const Context& ctx);

int run_replay(const std::string& manifest_path) {
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(read_input(manifest_path));
    } catch (const ordered_json::exception& e) {
        throw CliError{kExitUsage, std::string("malformed manifest: ") + e.what()};
    }
    if (manifest.contains("version") && manifest["version"] != gnc_version()) {
        std::cerr << "warning: manifest written by version " << manifest["version"].dump()
                  << ", running " << gnc_version() << "\n";
    }
    std::vector<std::string> args = args_from_manifest(manifest);
    if (args.front() == "replay") {
        throw CliError{kExitUsage, "manifest records a replay"};
    }
    Context ctx;
    ctx.cwd = manifest.value("cwd", fs::current_path().string());
    ctx.argv = manifest.value("argv", std::vector<std::string>{});
    std::error_code ec;
    fs::current_path(ctx.cwd, ec);
    if (ec) {
        throw CliError{kExitRuntime, "cannot enter recorded directory " + ctx.cwd};
    }
    return dispatch(std::move(args), ctx);
}

int dispatch(std::vector<std::string> args, const Context& ctx) {
    CLI::App app{"Grassmannian frames, neural collapse and generalization bounds", "gnc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(gnc_version()));

    GenArgs gen;
    {
        gnc_synth_options defaults;
        gnc_synth_options_default(&defaults);
        gen.iters = defaults.max_iters;
        gen.lambda = defaults.lambda;
        gen.alpha = defaults.alpha;
    }
    auto* gen_cmd = app.add_subcommand("gen", "Synthesize a Grassmannian frame");
    gen_cmd->add_option("--d", gen.d, "Ambient dimension")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--C", gen.c, "Number of vectors")->check(CLI::PositiveNumber)->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
    gen_cmd->add_option("--iters", gen.iters, "Gradient steps")->capture_default_str();
    gen_cmd->add_option("--lambda", gen.lambda, "Classifier weight decay")->capture_default_str();
    gen_cmd->add_option("--alpha", gen.alpha, "Step size")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output frame JSON")->required();

    CheckArgs chk;
    auto* check_cmd = app.add_subcommand("check", "Report frame properties");
    check_cmd->add_option("path", chk.path, "Frame JSON")->required();
    check_cmd->add_option("--tol", chk.tol, "Tolerance")->capture_default_str();

    TransformArgs tr;
    auto* tr_cmd = app.add_subcommand("transform", "Apply R M P equivalence transforms");
    tr_cmd->add_option("path", tr.path, "Frame JSON")->required();
    tr_cmd->add_option("--rotate-seed", tr.rotate_seed, "Seed of the random rotation R");
    tr_cmd->add_option("--permute-seed", tr.permute_seed, "Seed of the random permutation P");
    tr_cmd->add_option("--out", tr.out, "Output frame JSON")->required();

    SimulateArgs sim;
    gnc_ufm_config_default(&sim.config);
    auto* sim_cmd = app.add_subcommand("simulate", "Train the unconstrained feature model");
    sim_cmd->add_option("--d", sim.config.d, "Feature dimension")->capture_default_str();
    sim_cmd->add_option("--C", sim.config.num_classes, "Number of classes")->capture_default_str();
    sim_cmd->add_option("--n-per-class", sim.config.n_per_class, "Samples per class")->capture_default_str();
    sim_cmd->add_option("--lambda", sim.config.lambda, "Classifier weight decay")->capture_default_str();
    sim_cmd->add_option("--alpha", sim.config.alpha, "Feature step size (classifier uses alpha C / N)")->capture_default_str();
    sim_cmd->add_option("--iters", sim.config.max_iters, "Maximum iterations")->capture_default_str();
    sim_cmd->add_option("--init-scale", sim.config.init_scale, "Initial Gaussian std")->capture_default_str();
    sim_cmd->add_option("--record-every", sim.config.record_every, "Trajectory stride")->capture_default_str();
    sim_cmd->add_option("--seed", sim.config.seed, "RNG seed")->required();
    sim_cmd->add_option("--snapshots", sim.snapshots, "Number of SVG snapshots")->capture_default_str();
    sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory")->required();

    ChannelArgs ch;
    auto* ch_cmd = app.add_subcommand("channel", "Simulate the Gaussian channel");
    ch_cmd->add_option("path", ch.path, "Codebook frame JSON")->required();
    ch_cmd->add_option("--sigma", ch.sigma, "Noise standard deviation");
    ch_cmd->add_option("--trials", ch.trials, "Monte Carlo trials")->capture_default_str();
    ch_cmd->add_option("--seed", ch.seed, "RNG seed")->required();
    ch_cmd->add_option("--sweep", ch.sweep, "Comma separated decreasing sigmas")->delimiter(',');
    ch_cmd->add_option("--out", ch.out, "Write output to this file");

    BoundsArgs bd;
    auto* bd_cmd = app.add_subcommand("bounds", "Evaluate generalization bounds");
    bd_cmd->add_option("--params", bd.params, "BoundParams JSON");
    bd_cmd->add_option("--frame", bd.frame, "Classifier frame JSON");
    bd_cmd->add_option("--supports", bd.supports, "Supports JSON");
    bd_cmd->add_option("--rho", bd.rho, "Frame norm (default: largest column norm)");
    bd_cmd->add_option("--lipschitz", bd.lipschitz, "Feature map Lipschitz constant")->capture_default_str();
    bd_cmd->add_option("--n-samples", bd.n_samples, "Training set size");
    bd_cmd->add_option("--permutations", bd.permutations, "Number of seeded permutations");
    bd_cmd->add_option("--seed", bd.seed, "RNG seed for permutations");
    bd_cmd->add_option("--out", bd.out, "Write output to this file");

    std::string manifest_path;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a command from its manifest");
    replay_cmd->add_option("manifest", manifest_path, "manifest.json")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const CLI::App* failing = &app;
        for (auto* sub : app.get_subcommands()) {
            failing = sub;
        }
        std::cerr << failing->help();
        return kExitUsage;
    }

    Run run;
    if (*gen_cmd) {
        run = cmd_gen(gen);
    } else if (*check_cmd) {
        run = cmd_check(chk);
    } else if (*tr_cmd) {
        run = cmd_transform(tr);
    } else if (*sim_cmd) {
        run = cmd_simulate(sim);
    } else if (*ch_cmd) {
        run = cmd_channel(ch);
    } else if (*bd_cmd) {
        run = cmd_bounds(bd);
    } else if (*replay_cmd) {
        return run_replay(manifest_path);
    }
    write_manifest(run, ctx);
    if (run.failure) {
        throw *run.failure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    Context ctx;
    ctx.argv.assign(argv + 1, argv + argc);
    ctx.cwd = fs::current_path().string();
    try {
        return dispatch(ctx.argv, ctx);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
