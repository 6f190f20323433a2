// End-to-end checks of the gnc executable: exit codes, outputs, manifests.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        const fs::path d = fs::current_path() / "cli_work";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void put(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result gnc(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = "cd '" + work_dir().string() + "' && '" + std::string(GNC_CLI_PATH) + "' " + args +
                            " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

const char* kMercedes = R"({"d":2,"C":3,"columns":[[0.0,1.0],[-0.8660254037844386,-0.5],[0.8660254037844387,-0.5]],"normalized":false,"meta":{}})";
const char* kCross = R"({"d":2,"C":4,"columns":[[1,0],[0,1],[-1,0],[0,-1]],"normalized":true,"meta":{}})";
const char* kAntipodal = R"({"d":1,"C":2,"columns":[[1],[-1]],"normalized":true,"meta":{}})";
const char* kWorked =
    R"({"C":2,"p":[0.5,0.5],"N":[10,10],"rademacher":0.1,"K":4,"delta":0.5,"gamma":[[0,1],[1,0]],"empirical_term":0})";

void write_inputs() {
    put(work_dir() / "mercedes.json", kMercedes);
    put(work_dir() / "cross.json", kCross);
    put(work_dir() / "antipodal.json", kAntipodal);
    put(work_dir() / "worked.json", kWorked);
    put(work_dir() / "truncated.json", std::string(kCross).substr(0, 30));
    const double t = std::acos(0.9);
    json eng = {{"d", 2}, {"C", 3}, {"normalized", true}, {"meta", json::object()},
                {"columns", {{1.0, 0.0}, {std::cos(t), std::sin(t)}, {-1.0, 0.0}}}};
    put(work_dir() / "engineered.json", eng.dump());
    auto seg = [](double cx, double r, int n) {
        json pts = json::array();
        for (int k = 0; k < n; ++k) {
            pts.push_back({cx + r * (-1.0 + 2.0 * k / (n - 1)), 0.0});
        }
        return pts;
    };
    put(work_dir() / "unequal.json", json{{"supports", {seg(0, 0.01, 5), seg(5, 0.3, 9), seg(10, 0.3, 9)}}}.dump());
    put(work_dir() / "same.json", json{{"supports", {seg(0, 0.3, 9), seg(0, 0.3, 9), seg(0, 0.3, 9)}}}.dump());
}

std::vector<std::vector<double>> columns_of(const fs::path& p) {
    return json::parse(slurp(p))["columns"].get<std::vector<std::vector<double>>>();
}

// Re-runs the manifest in `dir` and checks every recorded output is unchanged.
void check_replay(const fs::path& dir) {
    const auto manifest = json::parse(slurp(dir / "manifest.json"));
    std::map<std::string, std::string> before;
    for (const auto& p : manifest["outputs"]) {
        before[p.get<std::string>()] = slurp(p.get<std::string>());
        fs::remove(p.get<std::string>());
    }
    const std::string manifest_text = slurp(dir / "manifest.json");
    const auto r = gnc("replay '" + (dir / "manifest.json").string() + "'");
    CHECK(r.code == 0);
    for (const auto& [path, text] : before) {
        CHECK_MESSAGE(slurp(path) == text, path);
    }
    CHECK(slurp(dir / "manifest.json") == manifest_text);
}

struct Setup {
    Setup() { write_inputs(); }
};
const Setup setup;

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(gnc("").code == 2);
    CHECK(gnc("frobnicate").code == 2);
    const auto r = gnc("gen --d 2 --C 4 --seed 7");
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(gnc("gen --d 2 --C 4 --out f.json").code == 2);
    CHECK(gnc("gen --d 0 --C 4 --seed 1 --out f.json").code == 2);
    CHECK(gnc("gen --d 2 --C 4 --seed 1 --lambda -1 --out f.json").code == 2);
    CHECK(gnc("simulate --out-dir s").code == 2);
    CHECK(gnc("channel antipodal.json --sigma 0.5").code == 2);
    CHECK(gnc("gen --help").code == 0);
}

TEST_CASE("gen") {
    auto r = gnc("gen --d 2 --C 4 --seed 7 --out gen4/f.json");
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(r.out)) <= 0.02);
    CHECK(fs::exists(work_dir() / "gen4" / "manifest.json"));
    r = gnc("gen --d 2 --C 3 --seed 7 --out gen3/f.json");
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(r.out) + 0.5) <= 0.02);
    const auto m = json::parse(slurp(work_dir() / "gen3" / "manifest.json"));
    CHECK(m["command"] == "gen");
    CHECK(m["seed"] == 7);
    CHECK(m["config"]["iters"] == 1000);
    CHECK(m["version"] == "0.1.0");
    check_replay(work_dir() / "gen3");
    CHECK(gnc("gen --d 2 --C 4 --seed 1 --alpha 1e300 --out gendiv/f.json").code == 3);
}

TEST_CASE("check") {
    auto r = gnc("check mercedes.json");
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["is_equiangular"] == true);
    CHECK(std::abs(doc["welch_gap"].get<double>()) < 1e-9);
    r = gnc("check cross.json --tol 1e-6");
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["is_equiangular"] == false);
    CHECK(doc["welch_bound"].is_null());
    r = gnc("check truncated.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed") != std::string::npos);
    CHECK(gnc("check missing.json").code == 2);
}

TEST_CASE("transform") {
    REQUIRE(gnc("transform mercedes.json --rotate-seed 3 --out tr/rot.json").code == 0);
    const auto a = columns_of(work_dir() / "mercedes.json");
    const auto b = columns_of(work_dir() / "tr" / "rot.json");
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const double ga = a[i][0] * a[j][0] + a[i][1] * a[j][1];
            const double gb = b[i][0] * b[j][0] + b[i][1] * b[j][1];
            CHECK(std::abs(ga - gb) < 1e-12);
        }
    }
    const auto meta = json::parse(slurp(work_dir() / "tr" / "rot.json"))["meta"];
    CHECK(meta["rotate_seed"] == "3");

    REQUIRE(gnc("transform cross.json --permute-seed 4 --out tr/perm.json").code == 0);
    auto c = columns_of(work_dir() / "cross.json");
    auto p = columns_of(work_dir() / "tr" / "perm.json");
    std::sort(c.begin(), c.end());
    std::sort(p.begin(), p.end());
    CHECK(c == p);

    REQUIRE(gnc("transform cross.json --rotate-seed 5 --permute-seed 6 --out tr/a.json").code == 0);
    REQUIRE(gnc("transform cross.json --rotate-seed 5 --permute-seed 6 --out tr/b.json").code == 0);
    CHECK(slurp(work_dir() / "tr" / "a.json") == slurp(work_dir() / "tr" / "b.json"));
    check_replay(work_dir() / "tr");

    CHECK(gnc("transform cross.json --out tr/none.json").code == 2);
    CHECK(gnc("transform truncated.json --rotate-seed 1 --out tr/x.json").code == 2);
}

TEST_CASE("simulate") {
    auto r = gnc("simulate --seed 0 --out-dir collapse_run");
    REQUIRE(r.code == 0);
    const fs::path dir = work_dir() / "collapse_run";
    const auto report = json::parse(slurp(dir / "report.json"));
    CHECK(std::abs(report["nc3_signed"].get<double>()) <= 0.02);
    CHECK(report["nc4_agreement"] == 1.0);
    int svgs = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        svgs += e.path().extension() == ".svg";
    }
    CHECK(svgs == 5);
    CHECK(fs::exists(dir / "snap_0.svg"));
    CHECK(fs::exists(dir / "snap_200000.svg"));
    CHECK(slurp(dir / "trajectory.csv").rfind("iter,ce_loss,ufm_loss,nc1,nc2,nc3_signed_maxcorr,nc4_agreement,max_norm\n", 0) == 0);
    check_replay(dir);

    REQUIRE(gnc("simulate --seed 1 --iters 200 --snapshots 0 --out-dir nosnap").code == 0);
    CHECK(fs::exists(work_dir() / "nosnap" / "trajectory.csv"));
    for (const auto& e : fs::directory_iterator(work_dir() / "nosnap")) {
        CHECK(e.path().extension() != ".svg");
    }

    r = gnc("simulate --seed 1 --d 3 --iters 200 --out-dir d3");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("notice") != std::string::npos);
    CHECK(fs::exists(work_dir() / "d3" / "trajectory.csv"));
    for (const auto& e : fs::directory_iterator(work_dir() / "d3")) {
        CHECK(e.path().extension() != ".svg");
    }

    put(work_dir() / "blocker", "x");
    CHECK(gnc("simulate --seed 1 --iters 10 --out-dir blocker/sub").code == 3);
    r = gnc("simulate --seed 1 --alpha 1e6 --iters 100 --out-dir diverged");
    CHECK(r.code == 3);
    CHECK(fs::exists(work_dir() / "diverged" / "trajectory.csv"));
    CHECK(fs::exists(work_dir() / "diverged" / "manifest.json"));
    CHECK(gnc("simulate --seed 1 --lambda 0 --out-dir bad").code == 2);
}

TEST_CASE("channel") {
    auto r = gnc("channel antipodal.json --sigma 0.5 --trials 1000000 --seed 1");
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(std::abs(doc["error_rate"].get<double>() - 0.0227501319481792) < 3 * doc["ci95_halfwidth"].get<double>());

    REQUIRE(gnc("channel antipodal.json --sweep 1.0,0.8,0.6 --trials 10000 --seed 2 --out ch/sweep.csv").code == 0);
    const std::string csv = slurp(work_dir() / "ch" / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind("sigma,error_rate,ci95,exponent_estimate,exponent_target\n", 0) == 0);
    check_replay(work_dir() / "ch");

    CHECK(gnc("channel antipodal.json --sigma 0 --trials 10 --seed 1").code == 2);
    CHECK(gnc("channel antipodal.json --sweep 0.5,0.8 --trials 10 --seed 1").code == 2);
    CHECK(gnc("channel truncated.json --sigma 1 --seed 1").code == 2);
}

TEST_CASE("bounds") {
    auto r = gnc("bounds --params worked.json");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["total"].get<double>() == doctest::Approx(0.7356).epsilon(1e-4));

    put(work_dir() / "badgamma.json",
        R"({"C":2,"p":[0.5,0.5],"N":[10,10],"rademacher":0.1,"K":4,"delta":0.5,"gamma":[[0,1],[9,0]]})");
    r = gnc("bounds --params badgamma.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("(1,0)") != std::string::npos);

    r = gnc("bounds --frame engineered.json --supports same.json --n-samples 100 --permutations 10 --seed 3");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["range"].get<double>() == 0.0);
    r = gnc("bounds --frame engineered.json --supports unequal.json --n-samples 100 --permutations 10 --seed 3 --out bd/sweep.json");
    REQUIRE(r.code == 0);
    const auto sweep = json::parse(slurp(work_dir() / "bd" / "sweep.json"));
    CHECK(sweep["range"].get<double>() > 0.0);
    CHECK(sweep["bounds"].size() == 10);
    check_replay(work_dir() / "bd");

    r = gnc("bounds --frame cross.json --supports same.json --n-samples 100");
    CHECK(r.code == 2);  // three supports for four classes
    CHECK(gnc("bounds --frame engineered.json --supports same.json --n-samples 100 --permutations 3").code == 2);
    CHECK(gnc("bounds").code == 2);
}
