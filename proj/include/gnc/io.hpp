#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gnc/bounds.hpp"
#include "gnc/channel.hpp"
#include "gnc/collapse.hpp"
#include "gnc/frames.hpp"
#include "gnc/ufm.hpp"

namespace gnc {

// Frame document:
//   {"d": int, "C": int, "columns": [[d reals] x C], "normalized": bool,
//    "meta": {string: string}}
std::string frame_to_json(const Frame& f);
/// Throws FormatError describing the first schema violation.
Frame frame_from_json(const std::string& text);

Frame load_frame(const std::filesystem::path& path);
void save_frame(const Frame& f, const std::filesystem::path& path);

std::string frame_report_to_json(const FrameReport& r);
std::string nc_report_to_json(const NcReport& r);
std::string channel_result_to_json(const ChannelResult& r);
std::string bound_report_to_json(const BoundReport& r);

inline constexpr const char* kTrajectoryCsvHeader =
    "iter,ce_loss,ufm_loss,nc1,nc2,nc3_signed_maxcorr,nc4_agreement,max_norm";
inline constexpr const char* kSweepCsvHeader = "sigma,error_rate,ci95,exponent_estimate,exponent_target";

std::string trajectory_to_csv(const Trajectory& t);
/// Unestimable rows leave exponent_estimate empty.
std::string sweep_to_csv(std::span<const ExponentRow> rows);

// {"C":..., "p":[...], "N":[...], "rademacher":[...], "K":..., "delta":...,
//  "gamma":[[...]], "empirical_term": optional}
// The gamma diagonal is ignored. A scalar "rademacher" applies to every class.
BoundParams bound_params_from_json(const std::string& text);
// {"supports": [[[point], ...], ...]}
std::vector<PointSet> supports_from_json(const std::string& text);

/// Self-contained 800x800 scatter of 2-D features colored by class (evenly
/// spaced hues) with classifier directions drawn as lines from the origin.
std::string render_snapshot_svg(const Matrix& m, const Matrix& z, std::span<const int> labels,
                                std::int64_t iter);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gnc
