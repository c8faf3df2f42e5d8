#include "tdmdc/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tdmdc::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

const char* colour(Stability s) {
    switch (s) {
        case Stability::StableAll:
            return "#c0392b";
        case Stability::StableFreq:
            return "#2e86c1";
        case Stability::New:
            break;
    }
    return "#9e9e9e";
}

}  // namespace

nlohmann::json mode_to_json(const ModeEstimate& mode) {
    nlohmann::json j;
    j["freq_hz"] = mode.freq_hz;
    j["damping"] = mode.damping;
    j["s_re"] = mode.s.real();
    j["s_im"] = mode.s.imag();
    j["mu_re"] = mode.mu.real();
    j["mu_im"] = mode.mu.imag();
    j["delay_order"] = mode.delay_order;
    j["negative_damping"] = mode.negative_damping;
    j["amplitude_re"] = mode.amplitude.real();
    j["amplitude_im"] = mode.amplitude.imag();
    std::vector<double> re;
    std::vector<double> im;
    for (Index i = 0; i < mode.shape.size(); ++i) {
        re.push_back(mode.shape(i).real());
        im.push_back(mode.shape(i).imag());
    }
    j["shape_re"] = re;
    j["shape_im"] = im;
    return j;
}

std::string scatter_svg(const PlotSpec& spec) {
    double x_min = 0.0;
    double x_max = 1.0;
    if (!spec.points.empty()) {
        x_min = x_max = spec.points.front().x;
        for (const auto& p : spec.points) {
            x_min = std::min(x_min, p.x);
            x_max = std::max(x_max, p.x);
        }
    }
    if (x_max <= x_min) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    const double y_min = spec.y_min;
    const double y_max = spec.y_max > spec.y_min ? spec.y_max : spec.y_min + 1.0;
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double y) { return kTop + (1.0 - (y - y_min) / (y_max - y_min)) * ph; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << spec.title << "</text>\n";
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_min + (y_max - y_min) * i / 5.0;
        out << "<text x=\"" << sx(xv) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
            << num(yv) << "</text>\n";
    }
    out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kTop + ph / 2 << ")\">" << spec.y_label << "</text>\n";
    for (double ry : spec.reference_y) {
        if (ry < y_min || ry > y_max) {
            continue;
        }
        out << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << sy(ry) << "\" y2=\""
            << sy(ry) << "\" stroke=\"#27ae60\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (const auto& p : spec.points) {
        if (p.y < y_min || p.y > y_max) {
            continue;
        }
        out << "<circle cx=\"" << num(sx(p.x), 6) << "\" cy=\"" << num(sy(p.y), 6)
            << "\" r=\"2.5\" fill=\"" << colour(p.kind) << "\"/>\n";
    }
    const char* labels[] = {"new", "stable_freq", "stable_all"};
    const Stability kinds[] = {Stability::New, Stability::StableFreq, Stability::StableAll};
    for (int i = 0; i < 3; ++i) {
        const double lx = kLeft + 10 + 110 * i;
        out << "<circle cx=\"" << lx << "\" cy=\"" << kTop - 8 << "\" r=\"4\" fill=\"" << colour(kinds[i])
            << "\"/><text x=\"" << lx + 8 << "\" y=\"" << kTop - 4 << "\">" << labels[i] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string heatmap_svg(const Eigen::MatrixXd& values, const std::string& title) {
    const double cell = 48.0;
    const double left = 60.0;
    const double top = 50.0;
    const double width = left + cell * static_cast<double>(values.cols()) + 20.0;
    const double height = top + cell * static_cast<double>(values.rows()) + 40.0;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n";
    for (Index i = 0; i < values.rows(); ++i) {
        for (Index j = 0; j < values.cols(); ++j) {
            const double v = std::clamp(values(i, j), 0.0, 1.0);
            const int shade = static_cast<int>(255.0 * (1.0 - v));
            const double x = left + cell * static_cast<double>(j);
            const double y = top + cell * static_cast<double>(i);
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"rgb(" << shade << "," << shade << ",255)\" stroke=\"white\"/>\n";
            out << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
                << "\" text-anchor=\"middle\" fill=\"" << (v > 0.5 ? "white" : "black") << "\">"
                << num(values(i, j), 3) << "</text>\n";
        }
        out << "<text x=\"" << left - 6 << "\" y=\"" << top + cell * (static_cast<double>(i) + 0.5) + 4
            << "\" text-anchor=\"end\">est " << (i + 1) << "</text>\n";
    }
    for (Index j = 0; j < values.cols(); ++j) {
        out << "<text x=\"" << left + cell * (static_cast<double>(j) + 0.5) << "\" y=\"" << top - 6
            << "\" text-anchor=\"middle\">ref " << (j + 1) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tdmdc::cli
