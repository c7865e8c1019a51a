#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcoords/coordinates.hpp"
#include "tcoords/point_cloud.hpp"

namespace tcoords {

/// A uniformly sampled vector-valued time series, one sample per row.
struct TimeSeries {
    Eigen::MatrixXd samples;   // T x N

    int length() const { return static_cast<int>(samples.rows()); }
    int channels() const { return static_cast<int>(samples.cols()); }
};

/**
 * Sliding-window (delay) embedding: row t of the output is the concatenation
 * [F(t), F(t+tau), ..., F(t+d*tau)], giving T - d*tau points of dimension
 * N*(d+1).
 */
PointCloud sliding_window(const TimeSeries& ts, int d, int tau);

/// A synthetic point cloud with the circle-valued maps that generated it.
struct SyntheticSample {
    PointCloud points;
    std::vector<CircleMap> ground_truth;
};

/// n points (cos 2pi u, sin 2pi u, cos 2pi v, sin 2pi v) with u, v uniform
/// in [0,1); ground truth is (u, v).
SyntheticSample synth_torus(int n, std::uint64_t seed);

/**
 * Rejection sample of a genus-two surface: the level set |f| <= 0.01 of
 * f(x,y,z) = (x^2 (1-x^2) - y^2)^2 + z^2/2 - 0.01 inside
 * [-1.2,1.2] x [-0.6,0.6] x [-0.35,0.35].
 */
PointCloud synth_genus2(int n, std::uint64_t seed);

/**
 * Synthetic neural recording: three independent circles of circumference 1,
 * six sensors each at positions j/6 with response r(d) = max(0, 1 - 3d) to a
 * stimulus at circular distance d; 50 random walks of 50 steps per circle
 * (steps uniform in [-0.05, 0.05], wrapping mod 1) give 2500 points in R^18.
 * Ground truth is the three stimulus angle tracks.
 */
SyntheticSample synth_neuro(std::uint64_t seed);

/// Sensor response used by synth_neuro.
double neuro_response(double circular_dist);

/// Read a CSV matrix as a time series; rows_are_time = false transposes.
TimeSeries ingest_matrix(const std::string& path, bool rows_are_time = true);

} // namespace tcoords
