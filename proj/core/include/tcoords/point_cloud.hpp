#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tcoords {

/**
 * A finite set of points in a common Euclidean space, one point per row.
 *
 * All coordinates must be finite; every point has the same dimension by
 * construction of the underlying matrix.
 */
struct PointCloud {
    Eigen::MatrixXd points;            // n x d, row i = coordinates of point i
    std::vector<std::string> labels;   // optional, empty or size n

    PointCloud() = default;
    explicit PointCloud(Eigen::MatrixXd pts);

    int size() const { return static_cast<int>(points.rows()); }
    int dimension() const { return static_cast<int>(points.cols()); }

    double distance(int i, int j) const { return (points.row(i) - points.row(j)).norm(); }
    double squared_distance(int i, int j) const { return (points.row(i) - points.row(j)).squaredNorm(); }

    /// The sub-cloud made of the given rows, in the given order.
    PointCloud select(const std::vector<int>& indices) const;
};

/// Pluggable metric: distance between points i and j of some cloud.
using DistanceFn = std::function<double(int, int)>;

/// Euclidean metric over a cloud, the default everywhere.
DistanceFn euclidean_metric(const PointCloud& cloud);

/**
 * Read a point cloud from CSV: one row per point, comma-separated decimal
 * coordinates. A header row is auto-detected (any cell that does not parse
 * as a number) and skipped.
 */
PointCloud read_point_cloud_csv(const std::string& path);

void write_point_cloud_csv(const PointCloud& cloud, const std::string& path);

/// Shared CSV grid parser. Throws io_error on ragged or non-numeric rows.
Eigen::MatrixXd read_csv_matrix(const std::string& path, bool* had_header = nullptr);
void write_csv_matrix(const Eigen::MatrixXd& m, const std::string& path);

} // namespace tcoords
