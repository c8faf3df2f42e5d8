#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tdmdc/modal.hpp"

namespace tdmdc::cli {

nlohmann::json mode_to_json(const ModeEstimate& mode);

struct PlotPoint {
    double x = 0.0;
    double y = 0.0;
    Stability kind = Stability::New;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotPoint> points;
    std::vector<double> reference_y;  ///< horizontal guide lines
    double y_min = 0.0;
    double y_max = 1.0;
};

/// Static scatter plot; markers are coloured by stability flag.
std::string scatter_svg(const PlotSpec& spec);

/// Heat map of a matrix with values in [0, 1], annotated cell by cell.
std::string heatmap_svg(const Eigen::MatrixXd& values, const std::string& title);

}  // namespace tdmdc::cli
