#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tdmdc/time_series.hpp"

namespace tdmdc::cli {

/// Parses `t,ch1,...,chN` text. Lines starting with '#' and blank lines are skipped; a
/// `# dt = <value>` comment, when present, fixes the sample interval exactly. Throws
/// InputError naming the offending line for ragged rows, non-numeric cells, non-uniform
/// time stamps or an empty body ("no samples").
TimeSeries read_time_series(std::istream& in, const std::string& source = "<stream>");
TimeSeries read_time_series(const std::filesystem::path& path);

/// Shortest round-trip decimal form (at most 17 significant digits).
std::string format_double(double value);

void write_time_series(std::ostream& out, const TimeSeries& series);
void write_time_series(const std::filesystem::path& path, const TimeSeries& series);

/// Mode-shape table: header `mode,dof1_re,dof1_im,...`, one row per mode.
std::vector<Eigen::VectorXcd> read_shapes(const std::filesystem::path& path);
void write_shapes(const std::filesystem::path& path, const std::vector<Eigen::VectorXcd>& shapes);

/// Writes a header row and numeric rows; a generic helper for result tables.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

}  // namespace tdmdc::cli
