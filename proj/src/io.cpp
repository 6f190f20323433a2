#include "gnc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gnc/error.hpp"
#include "gnc/format.hpp"

namespace gnc {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

const json& require_field(const json& doc, const char* key, const char* context) {
    if (!doc.is_object()) {
        throw FormatError(std::string(context) + ": document is not a JSON object");
    }
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw FormatError(std::string(context) + ": missing field \"" + key + "\"");
    }
    return *it;
}

std::size_t require_positive_int(const json& v, const char* key, const char* context) {
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
        throw FormatError(std::string(context) + ": \"" + key + "\" must be a positive integer");
    }
    return v.get<std::size_t>();
}

double require_number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        throw FormatError(where + " must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw FormatError(where + " must be finite");
    }
    return x;
}

std::vector<double> require_numbers(const json& v, const std::string& where) {
    if (!v.is_array()) {
        throw FormatError(where + " must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(require_number(v[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

json parse_document(const std::string& text, const char* context) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string(context) + ": malformed JSON: " + e.what());
    }
}

std::string csv_number(double x) {
    return format_double(x);
}

}  // namespace

std::string frame_to_json(const Frame& f) {
    json doc;
    doc["d"] = f.dim();
    doc["C"] = f.count();
    json columns = json::array();
    for (std::size_t j = 0; j < f.count(); ++j) {
        columns.push_back(f.column(j));
    }
    doc["columns"] = std::move(columns);
    doc["normalized"] = f.normalized();
    doc["meta"] = json(f.meta());
    return doc.dump(2) + "\n";
}

Frame frame_from_json(const std::string& text) {
    constexpr const char* ctx = "frame";
    const json doc = parse_document(text, ctx);
    const std::size_t d = require_positive_int(require_field(doc, "d", ctx), "d", ctx);
    const std::size_t c = require_positive_int(require_field(doc, "C", ctx), "C", ctx);
    const json& cols = require_field(doc, "columns", ctx);
    if (!cols.is_array() || cols.size() != c) {
        throw FormatError("frame: \"columns\" must be an array of C = " + std::to_string(c) + " vectors");
    }
    std::vector<std::vector<double>> columns;
    for (std::size_t j = 0; j < c; ++j) {
        auto col = require_numbers(cols[j], "frame: columns[" + std::to_string(j) + "]");
        if (col.size() != d) {
            throw FormatError("frame: columns[" + std::to_string(j) + "] must have d = " +
                              std::to_string(d) + " entries");
        }
        columns.push_back(std::move(col));
    }
    const json& normalized = require_field(doc, "normalized", ctx);
    if (!normalized.is_boolean()) {
        throw FormatError("frame: \"normalized\" must be a boolean");
    }
    Meta meta;
    if (const auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object()) {
            throw FormatError("frame: \"meta\" must be an object");
        }
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string()) {
                throw FormatError("frame: meta value for \"" + key + "\" must be a string");
            }
            meta[key] = value.get<std::string>();
        }
    }
    try {
        return Frame::from_parts(Matrix::from_columns(columns), normalized.get<bool>(), std::move(meta));
    } catch (const FormatError&) {
        throw;
    } catch (const DomainError& e) {
        throw FormatError(std::string("frame: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

Frame load_frame(const std::filesystem::path& path) {
    return frame_from_json(read_text_file(path));
}

void save_frame(const Frame& f, const std::filesystem::path& path) {
    write_text_file(path, frame_to_json(f));
}

std::string frame_report_to_json(const FrameReport& r) {
    json doc;
    doc["is_uniform"] = r.is_uniform;
    doc["is_unit_norm"] = r.is_unit_norm;
    doc["is_tight"] = r.is_tight;
    doc["is_equiangular"] = r.is_equiangular;
    doc["max_corr_signed"] = r.max_corr_signed;
    doc["max_corr_absolute"] = r.max_corr_absolute;
    doc["welch_bound"] = optional_number(r.welch_bound);
    doc["welch_gap"] = optional_number(r.welch_gap);
    doc["tolerance"] = r.tolerance;
    return doc.dump(2) + "\n";
}

std::string nc_report_to_json(const NcReport& r) {
    json doc;
    doc["nc1"] = r.nc1;
    doc["nc2"] = r.nc2;
    doc["nc3_signed"] = r.nc3_signed;
    doc["nc3_welch_gap"] = optional_number(r.nc3_welch_gap);
    doc["nc4_agreement"] = r.nc4_agreement;
    doc["ref_norm"] = r.ref_norm;
    return doc.dump(2) + "\n";
}

std::string channel_result_to_json(const ChannelResult& r) {
    json doc;
    doc["error_rate"] = r.error_rate;
    doc["ci95_halfwidth"] = r.ci95_halfwidth;
    doc["trials"] = r.trials;
    doc["errors"] = r.errors;
    doc["per_class_errors"] = r.per_class_errors;
    doc["per_class_trials"] = r.per_class_trials;
    doc["exponent_estimate"] = optional_number(r.exponent_estimate);
    doc["exponent_target"] = r.exponent_target;
    return doc.dump(2) + "\n";
}

std::string bound_report_to_json(const BoundReport& r) {
    json doc;
    doc["rademacher_term"] = r.rademacher_term;
    doc["log_term"] = r.log_term;
    doc["empirical_term"] = r.empirical_term;
    doc["probability_term"] = r.probability_term;
    doc["total"] = r.total;
    json pairs = json::array();
    for (const auto& t : r.pairs) {
        pairs.push_back({{"i", t.i}, {"j", t.j}, {"rademacher", t.rademacher}, {"log", t.log},
                         {"probability", t.probability}});
    }
    doc["pairs"] = std::move(pairs);
    return doc.dump(2) + "\n";
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::string out = kTrajectoryCsvHeader;
    out += '\n';
    for (const auto& s : t.samples) {
        out += std::to_string(s.iter);
        for (double v : {s.ce_loss, s.ufm_loss, s.nc1, s.nc2, s.nc3_signed_maxcorr, s.nc4_agreement,
                         s.max_norm}) {
            out += ',';
            out += csv_number(v);
        }
        out += '\n';
    }
    return out;
}

std::string sweep_to_csv(std::span<const ExponentRow> rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += csv_number(r.sigma) + ',' + csv_number(r.error_rate) + ',' + csv_number(r.ci95_halfwidth) + ',';
        if (r.exponent_estimate) {
            out += csv_number(*r.exponent_estimate);
        }
        out += ',' + csv_number(r.exponent_target) + '\n';
    }
    return out;
}

BoundParams bound_params_from_json(const std::string& text) {
    constexpr const char* ctx = "bound params";
    const json doc = parse_document(text, ctx);
    BoundParams params;
    params.num_classes = require_positive_int(require_field(doc, "C", ctx), "C", ctx);
    const std::size_t c = params.num_classes;
    params.p = require_numbers(require_field(doc, "p", ctx), "bound params: p");
    params.n_per_class = require_numbers(require_field(doc, "N", ctx), "bound params: N");
    const json& rad = require_field(doc, "rademacher", ctx);
    if (rad.is_number()) {
        params.rademacher.assign(c, require_number(rad, "bound params: rademacher"));
    } else {
        params.rademacher = require_numbers(rad, "bound params: rademacher");
    }
    params.k_bound = require_number(require_field(doc, "K", ctx), "bound params: K");
    params.delta = require_number(require_field(doc, "delta", ctx), "bound params: delta");
    const json& gamma = require_field(doc, "gamma", ctx);
    if (!gamma.is_array() || gamma.size() != c) {
        throw FormatError("bound params: \"gamma\" must be a C x C array");
    }
    Matrix g(c, c);
    for (std::size_t i = 0; i < c; ++i) {
        const auto row = require_numbers(gamma[i], "bound params: gamma[" + std::to_string(i) + "]");
        if (row.size() != c) {
            throw FormatError("bound params: gamma[" + std::to_string(i) + "] must have C entries");
        }
        for (std::size_t j = 0; j < c; ++j) {
            g(i, j) = i == j ? 0.0 : row[j];
        }
    }
    params.gamma = MarginMatrix{std::move(g)};
    if (const auto it = doc.find("empirical_term"); it != doc.end()) {
        params.empirical_term = require_number(*it, "bound params: empirical_term");
    }
    if (params.p.size() != c || params.n_per_class.size() != c || params.rademacher.size() != c) {
        throw FormatError("bound params: p, N and rademacher must each have C entries");
    }
    return params;
}

std::vector<PointSet> supports_from_json(const std::string& text) {
    constexpr const char* ctx = "supports";
    const json doc = parse_document(text, ctx);
    const json& sup = require_field(doc, "supports", ctx);
    if (!sup.is_array() || sup.empty()) {
        throw FormatError("supports: \"supports\" must be a non-empty array");
    }
    std::vector<PointSet> out;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        const std::string where = "supports[" + std::to_string(i) + "]";
        if (!sup[i].is_array() || sup[i].empty()) {
            throw FormatError(where + " must be a non-empty array of points");
        }
        PointSet points;
        for (std::size_t k = 0; k < sup[i].size(); ++k) {
            auto p = require_numbers(sup[i][k], where + "[" + std::to_string(k) + "]");
            if (p.empty()) {
                throw FormatError(where + "[" + std::to_string(k) + "] is empty");
            }
            if (dim == 0) {
                dim = p.size();
            } else if (p.size() != dim) {
                throw FormatError(where + "[" + std::to_string(k) + "] has dimension " +
                                  std::to_string(p.size()) + ", expected " + std::to_string(dim));
            }
            points.push_back(std::move(p));
        }
        out.push_back(std::move(points));
    }
    return out;
}

std::string render_snapshot_svg(const Matrix& m, const Matrix& z, std::span<const int> labels,
                                std::int64_t iter) {
    if (m.rows() != 2 || z.rows() != 2) {
        throw DomainError("render_snapshot_svg: scatter plots need d = 2");
    }
    if (labels.size() != z.cols()) {
        throw DomainError("render_snapshot_svg: one label per feature column required");
    }
    constexpr double kSize = 800.0;
    constexpr double kCenter = kSize / 2.0;
    double extent = 0.0;
    for (double v : m.values()) {
        extent = std::max(extent, std::abs(v));
    }
    for (double v : z.values()) {
        extent = std::max(extent, std::abs(v));
    }
    const double scale = extent > 0.0 ? 0.45 * kSize / extent : 1.0;
    const std::size_t c = m.cols();
    auto hue = [c](std::size_t y) { return 360.0 * static_cast<double>(y) / static_cast<double>(c); };
    auto px = [&](double x) { return format_double(std::round((kCenter + scale * x) * 100.0) / 100.0); };
    auto py = [&](double y) { return format_double(std::round((kCenter - scale * y) * 100.0) / 100.0); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" style=\"fill:#ffffff\"/>\n";
    svg << "<line x1=\"0\" y1=\"400\" x2=\"800\" y2=\"400\" style=\"stroke:#dddddd;stroke-width:1\"/>\n";
    svg << "<line x1=\"400\" y1=\"0\" x2=\"400\" y2=\"800\" style=\"stroke:#dddddd;stroke-width:1\"/>\n";
    for (std::size_t y = 0; y < c; ++y) {
        svg << "<line x1=\"400\" y1=\"400\" x2=\"" << px(m(0, y)) << "\" y2=\"" << py(m(1, y))
            << "\" style=\"stroke:hsl(" << format_double(hue(y)) << ",80%,35%);stroke-width:3\"/>\n";
    }
    for (std::size_t i = 0; i < z.cols(); ++i) {
        const auto y = static_cast<std::size_t>(labels[i]);
        svg << "<circle cx=\"" << px(z(0, i)) << "\" cy=\"" << py(z(1, i))
            << "\" r=\"5\" style=\"fill:hsl(" << format_double(hue(y)) << ",80%,55%);fill-opacity:0.8\"/>\n";
    }
    svg << "<text x=\"12\" y=\"28\" style=\"font-family:monospace;font-size:18px;fill:#333333\">iter "
        << iter << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gnc
