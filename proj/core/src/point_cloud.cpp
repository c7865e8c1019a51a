#include "tcoords/point_cloud.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tcoords/errors.hpp"

namespace tcoords {

PointCloud::PointCloud(Eigen::MatrixXd pts) : points(std::move(pts)) {
    if (!points.allFinite()) {
        throw validation_error("point cloud contains non-finite coordinates");
    }
}

PointCloud PointCloud::select(const std::vector<int>& indices) const {
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(indices.size()), points.cols());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        sub.row(static_cast<Eigen::Index>(r)) = points.row(indices[r]);
    }
    PointCloud out;
    out.points = std::move(sub);
    if (!labels.empty()) {
        for (int idx : indices) out.labels.push_back(labels[idx]);
    }
    return out;
}

DistanceFn euclidean_metric(const PointCloud& cloud) {
    return [&cloud](int i, int j) { return cloud.distance(i, j); };
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    if (end == begin) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

} // namespace

Eigen::MatrixXd read_csv_matrix(const std::string& path, bool* had_header) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");

    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    bool header = false;
    std::size_t width = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_row(line);
        std::vector<double> row(cells.size());
        bool numeric = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_double(cells[c], row[c])) {
                numeric = false;
                break;
            }
        }
        if (first) {
            first = false;
            if (!numeric) {
                header = true;
                continue;   // header row, skip
            }
        } else if (!numeric) {
            throw io_error(path + ":" + std::to_string(lineno) + ": non-numeric cell");
        }
        if (width == 0) width = row.size();
        if (row.size() != width) {
            throw io_error(path + ":" + std::to_string(lineno) + ": ragged row (expected " +
                           std::to_string(width) + " columns, got " + std::to_string(row.size()) + ")");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw io_error(path + ": no data rows");
    if (had_header) *had_header = header;

    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

void write_csv_matrix(const Eigen::MatrixXd& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            if (c) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw io_error("write failed for '" + path + "'");
}

PointCloud read_point_cloud_csv(const std::string& path) {
    PointCloud cloud;
    cloud.points = read_csv_matrix(path);
    if (!cloud.points.allFinite()) throw io_error(path + ": non-finite coordinates");
    return cloud;
}

void write_point_cloud_csv(const PointCloud& cloud, const std::string& path) {
    write_csv_matrix(cloud.points, path);
}

} // namespace tcoords
