#include "tcoords/datasets.hpp"

#include <cmath>
#include <random>

#include "tcoords/errors.hpp"

namespace tcoords {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; identical across standard
/// libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

} // namespace

PointCloud sliding_window(const TimeSeries& ts, int d, int tau) {
    if (d < 0) throw validation_error("window dimension d must be >= 0");
    if (tau < 1) throw validation_error("delay tau must be >= 1");
    const int T = ts.length(), N = ts.channels();
    const int count = T - d * tau;
    if (count < 1) {
        throw validation_error("series too short: T = " + std::to_string(T) +
                               " but d*tau = " + std::to_string(d * tau));
    }
    Eigen::MatrixXd pts(count, N * (d + 1));
    for (int t = 0; t < count; ++t) {
        for (int w = 0; w <= d; ++w) {
            pts.block(t, w * N, 1, N) = ts.samples.row(t + w * tau);
        }
    }
    PointCloud out;
    out.points = std::move(pts);
    return out;
}

SyntheticSample synth_torus(int n, std::uint64_t seed) {
    if (n < 4) throw validation_error("synth_torus: n must be >= 4");
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd pts(n, 4);
    CircleMap u, v;
    u.values.resize(n);
    v.values.resize(n);
    for (int i = 0; i < n; ++i) {
        const double a = uniform01(rng);
        const double b = uniform01(rng);
        pts(i, 0) = std::cos(2.0 * M_PI * a);
        pts(i, 1) = std::sin(2.0 * M_PI * a);
        pts(i, 2) = std::cos(2.0 * M_PI * b);
        pts(i, 3) = std::sin(2.0 * M_PI * b);
        u.values[i] = a;
        v.values[i] = b;
    }
    SyntheticSample out;
    out.points.points = std::move(pts);
    out.ground_truth = {std::move(u), std::move(v)};
    return out;
}

PointCloud synth_genus2(int n, std::uint64_t seed) {
    if (n < 100) throw validation_error("synth_genus2: n must be >= 100");
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd pts(n, 3);
    const long budget = 100000L * n;
    long attempts = 0;
    int accepted = 0;
    while (accepted < n) {
        if (++attempts > budget) throw numerical_error("synth_genus2: rejection budget exceeded");
        const double x = uniform(rng, -1.2, 1.2);
        const double y = uniform(rng, -0.6, 0.6);
        const double z = uniform(rng, -0.35, 0.35);
        const double g = x * x * (1.0 - x * x) - y * y;
        const double f = g * g + z * z / 2.0 - 0.01;
        if (std::abs(f) <= 0.01) {
            pts(accepted, 0) = x;
            pts(accepted, 1) = y;
            pts(accepted, 2) = z;
            ++accepted;
        }
    }
    PointCloud out;
    out.points = std::move(pts);
    return out;
}

double neuro_response(double circular_dist) { return std::max(0.0, 1.0 - 3.0 * circular_dist); }

SyntheticSample synth_neuro(std::uint64_t seed) {
    constexpr int kCircles = 3;
    constexpr int kSensors = 6;
    constexpr int kWalks = 50;
    constexpr int kSteps = 50;
    constexpr int kPoints = kWalks * kSteps;

    std::mt19937_64 rng(seed);
    std::vector<CircleMap> truth(kCircles);
    for (auto& t : truth) t.values.resize(kPoints);

    // Per circle: 50 independent walks of 50 steps, uniform start, uniform
    // steps in [-0.05, 0.05], wrapped mod 1.
    for (int c = 0; c < kCircles; ++c) {
        int t = 0;
        for (int w = 0; w < kWalks; ++w) {
            double pos = uniform01(rng);
            for (int s = 0; s < kSteps; ++s) {
                pos += uniform(rng, -0.05, 0.05);
                pos -= std::floor(pos);
                truth[c].values[t++] = pos;
            }
        }
    }

    Eigen::MatrixXd pts(kPoints, kCircles * kSensors);
    for (int t = 0; t < kPoints; ++t) {
        for (int c = 0; c < kCircles; ++c) {
            for (int j = 0; j < kSensors; ++j) {
                const double sensor = static_cast<double>(j) / kSensors;
                pts(t, c * kSensors + j) =
                    neuro_response(circular_distance(truth[c].values[t], sensor));
            }
        }
    }
    SyntheticSample out;
    out.points.points = std::move(pts);
    out.ground_truth = std::move(truth);
    return out;
}

TimeSeries ingest_matrix(const std::string& path, bool rows_are_time) {
    Eigen::MatrixXd m = read_csv_matrix(path);
    TimeSeries ts;
    if (rows_are_time) {
        ts.samples = std::move(m);
    } else {
        ts.samples = m.transpose();
    }
    return ts;
}

} // namespace tcoords
