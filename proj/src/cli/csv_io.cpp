#include "tdmdc/cli/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tdmdc/errors.hpp"

namespace tdmdc::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return cells;
}

bool parse_double(std::string_view cell, double& out) {
    if (cell.empty()) {
        return false;
    }
    if (cell.front() == '+') {
        cell.remove_prefix(1);
    }
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::string where(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line) + ": ";
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    return out;
}

}  // namespace

TimeSeries read_time_series(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    double declared_dt = 0.0;
    std::vector<double> values;
    std::vector<std::size_t> row_lines;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty()) {
            continue;
        }
        if (view.front() == '#') {
            const std::string_view body = trim(view.substr(1));
            if (body.starts_with("dt")) {
                const auto eq = body.find('=');
                double dt = 0.0;
                if (eq == std::string_view::npos || !parse_double(trim(body.substr(eq + 1)), dt) ||
                    !(dt > 0.0)) {
                    throw InputError(where(source, line_no) + "malformed dt comment");
                }
                declared_dt = dt;
            }
            continue;
        }
        const auto cells = split(view);
        if (columns == 0) {
            if (cells.size() < 2 || (cells[0] != "t" && cells[0] != "T" && cells[0] != "time")) {
                throw InputError(where(source, line_no) +
                                 "expected a header row 't,ch1,...' with at least one channel");
            }
            columns = cells.size();
            continue;
        }
        if (cells.size() != columns) {
            throw InputError(where(source, line_no) + "expected " + std::to_string(columns) +
                             " cells, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v = 0.0;
            if (!parse_double(cells[c], v)) {
                throw InputError(where(source, line_no) + "non-numeric cell '" +
                                 std::string(cells[c]) + "' in column " + std::to_string(c + 1));
            }
            values.push_back(v);
        }
        row_lines.push_back(line_no);
    }
    if (columns == 0 || row_lines.empty()) {
        throw InputError(source + ": no samples");
    }
    const auto K = static_cast<Index>(row_lines.size());
    if (K < 2) {
        throw InputError(source + ": at least two samples required");
    }
    const auto width = static_cast<Index>(columns);
    auto at = [&](Index k, Index c) { return values[static_cast<std::size_t>(k * width + c)]; };
    const double t0 = at(0, 0);
    const double dt = declared_dt > 0.0 ? declared_dt : (at(K - 1, 0) - t0) / static_cast<double>(K - 1);
    if (!(dt > 0.0)) {
        throw InputError(source + ": time column must increase");
    }
    for (Index k = 0; k < K; ++k) {
        const double expected = t0 + static_cast<double>(k) * dt;
        if (std::abs(at(k, 0) - expected) > 1e-4 * dt) {
            throw InputError(where(source, row_lines[static_cast<std::size_t>(k)]) +
                             "time stamps are not uniformly spaced");
        }
    }
    Eigen::MatrixXd data(width - 1, K);
    for (Index k = 0; k < K; ++k) {
        for (Index c = 1; c < width; ++c) {
            data(c - 1, k) = at(k, c);
        }
    }
    return TimeSeries(std::move(data), dt, t0);
}

TimeSeries read_time_series(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    return read_time_series(in, path.string());
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) {
        throw InputError("cannot format number");
    }
    return std::string(buf, ptr);
}

void write_time_series(std::ostream& out, const TimeSeries& series) {
    out << "# dt = " << format_double(series.dt()) << '\n';
    out << 't';
    for (Index c = 0; c < series.channels(); ++c) {
        out << ",ch" << (c + 1);
    }
    out << '\n';
    for (Index k = 0; k < series.samples(); ++k) {
        out << format_double(series.time(k));
        for (Index c = 0; c < series.channels(); ++c) {
            out << ',' << format_double(series(c, k));
        }
        out << '\n';
    }
}

void write_time_series(const std::filesystem::path& path, const TimeSeries& series) {
    std::ofstream out = open_out(path);
    write_time_series(out, series);
    if (!out) {
        throw InputError("failed writing " + path.string());
    }
}

std::vector<Eigen::VectorXcd> read_shapes(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    const std::string source = path.string();
    std::string line;
    std::size_t line_no = 0;
    std::size_t columns = 0;
    std::vector<Eigen::VectorXcd> shapes;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        const auto cells = split(view);
        if (columns == 0) {
            if (cells.size() < 3 || cells.size() % 2 == 0 || cells[0] != "mode") {
                throw InputError(where(source, line_no) +
                                 "expected a header row 'mode,dof1_re,dof1_im,...'");
            }
            columns = cells.size();
            continue;
        }
        if (cells.size() != columns) {
            throw InputError(where(source, line_no) + "expected " + std::to_string(columns) +
                             " cells, found " + std::to_string(cells.size()));
        }
        const auto dofs = static_cast<Index>((columns - 1) / 2);
        Eigen::VectorXcd v(dofs);
        for (Index d = 0; d < dofs; ++d) {
            double re = 0.0;
            double im = 0.0;
            const auto c = static_cast<std::size_t>(1 + 2 * d);
            if (!parse_double(cells[c], re) || !parse_double(cells[c + 1], im)) {
                throw InputError(where(source, line_no) + "non-numeric shape entry");
            }
            v(d) = {re, im};
        }
        shapes.push_back(std::move(v));
    }
    if (shapes.empty()) {
        throw InputError(source + ": no mode shapes");
    }
    return shapes;
}

void write_shapes(const std::filesystem::path& path, const std::vector<Eigen::VectorXcd>& shapes) {
    std::ofstream out = open_out(path);
    const Index dofs = shapes.empty() ? 0 : shapes.front().size();
    out << "mode";
    for (Index d = 0; d < dofs; ++d) {
        out << ",dof" << (d + 1) << "_re,dof" << (d + 1) << "_im";
    }
    out << '\n';
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        out << (i + 1);
        for (Index d = 0; d < shapes[i].size(); ++d) {
            out << ',' << format_double(shapes[i](d).real()) << ','
                << format_double(shapes[i](d).imag());
        }
        out << '\n';
    }
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i ? "," : "") << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
}

}  // namespace tdmdc::cli
