#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcoords/complex.hpp"
#include "tcoords/coordinates.hpp"
#include "tcoords/correlation.hpp"
#include "tcoords/datasets.hpp"
#include "tcoords/persistence.hpp"
#include "tcoords/point_cloud.hpp"

namespace tcoords {

/**
 * Configuration for the end-to-end pipeline: subsample, persist, select
 * classes, coordinates, correlate. Negative epsilon / max_scale / bandwidth
 * mean "auto": epsilon = 2.05 * cover radius (which keeps the landmark balls
 * of radius epsilon/2 a cover of the data), max_scale = landmark diameter,
 * bandwidth = median k-NN distance.
 */
struct PipelineConfig {
    std::string input_path;
    int n_landmarks = 100;
    double epsilon = -1.0;
    double max_scale = -1.0;
    std::int64_t prime = 41;
    std::vector<int> class_indices;
    std::string inner_product = "dsmv";   // "dsmv" or "dirichlet"
    int knn = 15;
    double bandwidth = -1.0;
    bool toroidal = false;
    bool sparse = false;
    std::int64_t seed = 0;
    std::string out_dir;                  // empty: no files written
    bool verbose = false;
};

void validate_config(const PipelineConfig& config);

struct PersistResult {
    PointCloud cloud;
    std::vector<int> landmark_indices;
    double cover_radius = 0.0;
    double max_scale = 0.0;
    FiltrationComplex complex;
    Barcode barcode;
};

/// Pipeline steps 1-3: subsample, Vietoris-Rips, persistent cohomology.
/// Writes barcode.json and diagram.txt when out_dir is set and prints the
/// top intervals.
PersistResult run_persist(const PipelineConfig& config);

/// Reload a persist stage from its barcode.json (paired with the input CSV).
PersistResult load_persist(const PipelineConfig& config, const std::string& barcode_path);

struct CoordsResult {
    double epsilon = 0.0;
    FiltrationComplex complex_at_epsilon;
    std::vector<CocycleZ> lifts;            // integer lifts of the chosen classes
    std::vector<CocycleR> harmonics;        // their harmonic representatives
    TorusMap torus;                         // the requested coordinates
    std::optional<TorusMap> circular;       // per-class maps (toroidal mode)
    std::optional<CorrelationMatrix> d_scc; // toroidal mode only
    std::optional<CorrelationMatrix> d_stc;
    double input_sq_length = 0.0;           // sum |eta_j|^2 under the form
    double output_sq_length = 0.0;          // sum |theta_j|^2 under the form
};

/// Pipeline steps 4-9 on a finished persist stage.
CoordsResult run_coords(const PipelineConfig& config, const PersistResult& persist);

/// Sliding-window embedding of a CSV matrix; writes window.csv when out_dir
/// is set.
PointCloud run_slidingwindow(const PipelineConfig& config, int window_dim, int delay,
                             bool rows_are_time);

/// Correlation matrix of circle-valued coordinate columns against the data
/// cloud's k-NN graph.
CorrelationMatrix run_correlate(const PipelineConfig& config, const std::string& coords_path);

std::string now_iso8601();

} // namespace tcoords
