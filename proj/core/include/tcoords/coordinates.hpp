#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcoords/complex.hpp"
#include "tcoords/inner_product.hpp"
#include "tcoords/lattice.hpp"
#include "tcoords/point_cloud.hpp"

namespace tcoords {

/**
 * A ball cover of a data cloud by landmarks, with a subordinate partition of
 * unity: cover balls have radius epsilon/2 and every data point carries a
 * normalized sparse row of landmark weights.
 */
struct CoverData {
    std::vector<int> landmark_indices;   // indices into the original data cloud (optional)
    int landmark_count = 0;
    double epsilon = 0.0;
    /// Row b: (landmark position in [0, landmark_count), weight) pairs,
    /// strictly positive, sorted by landmark, summing to 1.
    std::vector<std::vector<std::pair<int, double>>> phi;

    int point_count() const { return static_cast<int>(phi.size()); }
};

/// A circle-valued map on points (or vertices): values in [0, 1).
struct CircleMap {
    std::vector<double> values;
    std::vector<int> basepoints;   // one vertex per connected component

    int size() const { return static_cast<int>(values.size()); }
};

/// k circle-valued coordinates over one point set, with the unimodular
/// change of basis applied to their cohomology classes.
struct TorusMap {
    std::vector<CircleMap> maps;
    IntMatrix transform;                 // k x k, det +-1
    std::string provenance;              // e.g. "toroidal/sparse"

    int k() const { return static_cast<int>(maps.size()); }
};

/// Shortest representative of (b - a) mod 1 in [-1/2, 1/2).
double circular_lift_difference(double a, double b);

/// Distance on R/Z: min(|d| mod 1, 1 - |d| mod 1), in [0, 1/2].
double circular_distance(double a, double b);

/**
 * Integrate a cocycle with integral class into a circle-valued map on the
 * vertices of K: per component, accumulate theta along a BFS spanning tree
 * from the lowest-index vertex and reduce mod Z. The seed permutes the BFS
 * neighbor order; all seeds yield rotationally equivalent outputs.
 *
 * Throws numerical_error when some fundamental cycle sum is farther than
 * 1e-6 from an integer (non-integral class).
 */
CircleMap integrate(const CocycleR& theta, const FiltrationComplex& K, std::uint64_t seed = 0);

/**
 * Tent partition of unity subordinate to the cover {B(x, epsilon/2)}: weights
 * max(0, epsilon/2 - |b - x|) normalized per data point. Throws
 * validation_error naming the first uncovered point.
 */
CoverData partition_of_unity(const PointCloud& data, const PointCloud& landmarks, double epsilon);

/**
 * Sparse cocycle integration: landmark potentials along a spanning tree of K,
 * then f(b) = (tau_y + sum_z phi_z(b) theta^{yz}) mod Z with y the maximal-phi
 * covering landmark of b (ties to the lowest index).
 */
CircleMap sparse_integrate(const CocycleR& theta, const CoverData& cover,
                           const FiltrationComplex& K, std::uint64_t seed = 0);

/**
 * Circular coordinates of one integer class: harmonic representative, then
 * dense integration on K's vertices (cover == nullptr) or sparse integration
 * over the covered data points.
 */
CircleMap circular_coordinates(const CocycleZ& alpha, const InnerProductForm& form,
                               const FiltrationComplex& K, const CoverData* cover = nullptr,
                               std::uint64_t seed = 0);

/**
 * Toroidal coordinates of k independent integer classes: harmonic
 * representatives, lattice-reduced integer recombination, then one
 * integration per output cocycle. Returns the change of basis M with
 * the maps.
 */
TorusMap toroidal_coordinates(const std::vector<CocycleZ>& alphas, const InnerProductForm& form,
                              const FiltrationComplex& K, const CoverData* cover = nullptr,
                              std::uint64_t seed = 0);

/// Best alignment recovered ~ U * truth + offsets (mod 1) over integer U with
/// entries in [-entry_bound, entry_bound] and |det U| = 1, minimizing the
/// total mean circular error.
struct AlignmentResult {
    IntMatrix transform;
    std::vector<double> offsets;
    double mean_circular_error = 0.0;
};
AlignmentResult align_torus_maps(const std::vector<CircleMap>& recovered,
                                 const std::vector<CircleMap>& truth, int entry_bound = 2);

nlohmann::ordered_json torus_map_to_json(const TorusMap& tm, const CoverData* cover,
                                         double epsilon);
void write_torus_map_csv(const TorusMap& tm, const std::string& path);

} // namespace tcoords
