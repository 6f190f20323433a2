#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "gnc/error.hpp"
#include "gnc/io.hpp"
#include "test_support.hpp"

using gnc::Matrix;
using gnc::RngSeed;
using nlohmann::json;

namespace fs = std::filesystem;

TEST_CASE("frame JSON round trip is exact") {
    gnc::Rng rng(RngSeed{1});
    for (int t = 0; t < 20; ++t) {
        gnc::Frame f = gnc::make_frame(oracle::random_matrix(3, 5, rng), t % 2 == 0);
        f.meta()["note"] = "round trip";
        const gnc::Frame g = gnc::frame_from_json(gnc::frame_to_json(f));
        CHECK(g.columns() == f.columns());
        CHECK(g.normalized() == f.normalized());
        CHECK(g.meta() == f.meta());
    }
    const auto doc = json::parse(gnc::frame_to_json(oracle::cross()));
    CHECK(doc["d"] == 2);
    CHECK(doc["C"] == 4);
    CHECK(doc["columns"][2] == json::array({-1.0, 0.0}));
}

TEST_CASE("frame JSON schema violations") {
    const auto rejects = [](const std::string& text, const std::string& fragment) {
        CHECK_THROWS_WITH_AS(gnc::frame_from_json(text), doctest::Contains(fragment.c_str()), gnc::FormatError);
    };
    rejects("{\"d\": 2, \"C\": 1, \"columns\": [[1, 0]", "malformed");
    rejects("[1, 2]", "object");
    rejects("{\"C\": 1, \"columns\": [[1, 0]], \"normalized\": true, \"meta\": {}}", "\"d\"");
    rejects("{\"d\": 2, \"C\": 2, \"columns\": [[1, 0]], \"normalized\": true, \"meta\": {}}", "columns");
    rejects("{\"d\": 2, \"C\": 1, \"columns\": [[1, 0, 0]], \"normalized\": true, \"meta\": {}}", "columns");
    rejects("{\"d\": 2, \"C\": 1, \"columns\": [[1, \"x\"]], \"normalized\": true, \"meta\": {}}", "number");
    rejects("{\"d\": 2, \"C\": 1, \"columns\": [[2, 0]], \"normalized\": true, \"meta\": {}}", "norm");
    rejects("{\"d\": 2, \"C\": 1, \"columns\": [[0, 0]], \"normalized\": false, \"meta\": {}}", "zero");
    rejects("{\"d\": 0, \"C\": 1, \"columns\": [], \"normalized\": false, \"meta\": {}}", "positive");
}

TEST_CASE("frame files") {
    const fs::path dir = fs::temp_directory_path() / "gnc_test_io";
    fs::create_directories(dir);
    const fs::path path = dir / "frame.json";
    gnc::save_frame(oracle::mercedes(), path);
    CHECK(gnc::load_frame(path).columns() == oracle::mercedes().columns());
    CHECK_THROWS_AS(gnc::load_frame(dir / "missing.json"), gnc::IoError);
    CHECK_THROWS_AS(gnc::save_frame(oracle::mercedes(), dir / "no" / "such" / "dir" / "f.json"), gnc::IoError);
    fs::remove_all(dir);
}

TEST_CASE("report documents") {
    const auto fr = json::parse(gnc::frame_report_to_json(gnc::check_frame(oracle::cross())));
    CHECK(fr["is_equiangular"] == false);
    CHECK(fr["welch_bound"].is_null());
    CHECK(fr["welch_gap"].is_null());
    const auto mr = json::parse(gnc::frame_report_to_json(gnc::check_frame(oracle::mercedes())));
    CHECK(mr["is_equiangular"] == true);
    CHECK(mr["welch_bound"].get<double>() == doctest::Approx(0.5));

    gnc::ChannelResult cr;
    cr.trials = 10;
    const auto cj = json::parse(gnc::channel_result_to_json(cr));
    CHECK(cj["exponent_estimate"].is_null());
    CHECK(cj["trials"] == 10);

    gnc::NcReport nr;
    nr.nc4_agreement = 1.0;
    const auto nj = json::parse(gnc::nc_report_to_json(nr));
    CHECK(nj["nc4_agreement"] == 1.0);
    CHECK(nj.contains("nc3_signed"));
}

TEST_CASE("trajectory and sweep CSV") {
    gnc::Trajectory t;
    t.samples.push_back({0, 1.5, 2.5, 0.1, 0.2, 0.3, 1.0, 4.0});
    t.samples.push_back({1000, 0.5, 1.0, 0.0, 0.0, -0.5, 1.0, 3.0});
    const std::string csv = gnc::trajectory_to_csv(t);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == gnc::kTrajectoryCsvHeader);
    std::getline(in, line);
    CHECK(line == "0,1.5,2.5,0.1,0.2,0.3,1,4");
    std::getline(in, line);
    CHECK(line == "1000,0.5,1,0,0,-0.5,1,3");

    std::vector<gnc::ExponentRow> rows(2);
    rows[0] = {1.0, 0.25, 0.01, 0.75, 0.5, true};
    rows[1] = {0.5, 0.0, 0.0, std::nullopt, 0.5, false};
    const std::string sweep = gnc::sweep_to_csv(rows);
    CHECK(sweep == std::string(gnc::kSweepCsvHeader) + "\n1,0.25,0.01,0.75,0.5\n0.5,0,0,,0.5\n");
}

TEST_CASE("bound params and supports documents") {
    const auto p = gnc::bound_params_from_json(
        R"({"C":2,"p":[0.5,0.5],"N":[10,10],"rademacher":0.1,"K":4,"delta":0.5,"gamma":[[0,1],[1,0]]})");
    CHECK(p.num_classes == 2);
    CHECK(p.rademacher == std::vector<double>{0.1, 0.1});
    CHECK(p.empirical_term == 0.0);
    CHECK(p.gamma.gamma(0, 1) == 1.0);
    const auto q = gnc::bound_params_from_json(
        R"({"C":2,"p":[0.5,0.5],"N":[10,10],"rademacher":[0.1,0.2],"K":4,"delta":0.5,"gamma":[[9,1],[1,9]],"empirical_term":0.25})");
    CHECK(q.rademacher == std::vector<double>{0.1, 0.2});
    CHECK(q.empirical_term == 0.25);
    CHECK(q.gamma.gamma(0, 0) == 0.0);
    CHECK_THROWS_AS(gnc::bound_params_from_json(R"({"C":2})"), gnc::FormatError);
    CHECK_THROWS_AS(gnc::bound_params_from_json(R"({"C":2,"p":[1],"N":[10,10],"rademacher":0.1,"K":4,"delta":0.5,"gamma":[[0,1],[1,0]]})"),
                    gnc::FormatError);

    const auto s = gnc::supports_from_json(R"({"supports":[[[0,0],[1,1]],[[2,2]]]})");
    REQUIRE(s.size() == 2);
    CHECK(s[0].size() == 2);
    CHECK(s[1][0] == std::vector<double>{2, 2});
    CHECK_THROWS_AS(gnc::supports_from_json(R"({"supports":[[]]})"), gnc::FormatError);
    CHECK_THROWS_AS(gnc::supports_from_json(R"({"supports":[[[0,0],[1]]]})"), gnc::FormatError);
}

TEST_CASE("snapshot SVG") {
    const Matrix m = oracle::cross_columns(2.0);
    const Matrix z = oracle::cross_columns(1.5);
    const std::vector<int> labels{0, 1, 2, 3};
    const std::string svg = gnc::render_snapshot_svg(m, z, labels, 500);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("width=\"800\"") != std::string::npos);
    CHECK(svg.find("height=\"800\"") != std::string::npos);
    CHECK(svg.find("iter 500") != std::string::npos);
    CHECK(svg.find("hsl(0,") != std::string::npos);
    CHECK(svg.find("hsl(90,") != std::string::npos);
    CHECK(svg.find("hsl(270,") != std::string::npos);
    std::size_t circles = 0;
    std::size_t lines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<circle", pos)) != std::string::npos; ++pos) {
        ++circles;
    }
    for (std::size_t pos = 0; (pos = svg.find("<line", pos)) != std::string::npos; ++pos) {
        ++lines;
    }
    CHECK(circles == 4);
    CHECK(lines >= 4);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK_THROWS_AS(gnc::render_snapshot_svg(Matrix(3, 4), Matrix(3, 4), labels, 0), gnc::DomainError);
}
