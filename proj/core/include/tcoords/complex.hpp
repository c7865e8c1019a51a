#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcoords/point_cloud.hpp"

namespace tcoords {

struct FiltrationEdge {
    int i, j;    // vertex indices, i < j
    double t;    // filtration value
};

struct FiltrationTriangle {
    int i, j, k; // vertex indices, i < j < k
    double t;
};

/**
 * A 2-skeletal simplicial complex with per-simplex filtration values.
 *
 * Edges and triangles are kept sorted by (filtration value, lexicographic
 * index); every triangle's three edges are present with values no larger
 * than the triangle's. Because of the sort order, the complex at any scale
 * s <= max_scale is a prefix of the edge and triangle lists.
 */
class FiltrationComplex {
public:
    FiltrationComplex() = default;
    FiltrationComplex(int vertex_count, std::vector<FiltrationEdge> edges,
                      std::vector<FiltrationTriangle> triangles, double max_scale);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int triangle_count() const { return static_cast<int>(triangles_.size()); }
    double max_scale() const { return max_scale_; }

    const std::vector<FiltrationEdge>& edges() const { return edges_; }
    const std::vector<FiltrationTriangle>& triangles() const { return triangles_; }
    const FiltrationEdge& edge(int e) const { return edges_[e]; }

    /// Edge id of the unordered pair {i, j}, or -1 when absent.
    int edge_id(int i, int j) const;

    /// The sub-complex of all simplices with filtration value <= s.
    /// Edge ids of the result coincide with this complex's ids (prefix).
    FiltrationComplex restrict_to_scale(double s) const;

    /// Undirected adjacency: for each vertex, (neighbor, edge id) pairs.
    std::vector<std::vector<std::pair<int, int>>> adjacency() const;

    /// Connected component id per vertex, components numbered by lowest vertex.
    std::vector<int> components() const;

private:
    int vertex_count_ = 0;
    std::vector<FiltrationEdge> edges_;
    std::vector<FiltrationTriangle> triangles_;
    double max_scale_ = 0.0;
    std::unordered_map<std::int64_t, int> edge_index_;

    void build_index();
    void validate() const;
};

/// A function on vertices with values in Z (int64_t) or R (double).
template <typename T>
struct Cochain0 {
    std::vector<T> values;
};

/**
 * An antisymmetric edge function stored on the orientation i < j.
 * Evaluation on (j, i) is the negation of the stored value. Z/p cocycles
 * are stored as int64_t values in [0, p) with the prime carried by context.
 */
template <typename T>
struct Cocycle1 {
    std::vector<T> values;   // indexed by edge id of the reference complex
};

using Cochain0Z = Cochain0<std::int64_t>;
using Cochain0R = Cochain0<double>;
using CocycleZ = Cocycle1<std::int64_t>;
using CocycleR = Cocycle1<double>;

/// Oriented evaluation theta^{ij}; (i, j) need not be in storage order.
template <typename T>
T evaluate(const FiltrationComplex& K, const Cocycle1<T>& theta, int i, int j) {
    const int e = K.edge_id(i, j);
    if (e < 0) return T{0};
    return i < j ? theta.values[e] : static_cast<T>(-theta.values[e]);
}

/// delta(tau)^{ij} = tau(j) - tau(i) on every edge of K.
template <typename T>
Cocycle1<T> coboundary(const FiltrationComplex& K, const Cochain0<T>& tau);

/// Exact cocycle check over Z: theta^{ij} + theta^{jk} = theta^{ik} on all triangles.
bool check_cocycle(const FiltrationComplex& K, const CocycleZ& theta);

/// Cocycle check over Z/p (p > 2 prime).
bool check_cocycle_mod(const FiltrationComplex& K, const CocycleZ& theta, std::int64_t p);

/// Real cocycle check with tolerance 1e-9 * max(1, |theta|_inf).
bool check_cocycle(const FiltrationComplex& K, const CocycleR& theta);

/**
 * Greedy maxmin landmark selection.
 *
 * The first landmark is point 0 when seed < 0, or a seed-derived pseudo-random
 * index when seed >= 0. Each next landmark is the point farthest from the
 * chosen set, ties broken by lowest index. Returns the landmark indices in
 * selection order together with the cover radius max_b min_l d(b, l).
 */
std::pair<std::vector<int>, double> maxmin_sample(const PointCloud& cloud, int n_landmarks,
                                                  std::int64_t seed = -1);
std::pair<std::vector<int>, double> maxmin_sample(int n_points, const DistanceFn& dist,
                                                  int n_landmarks, std::int64_t seed = -1);

/**
 * Vietoris-Rips 2-skeleton at the given scale: an edge for every pair at
 * distance <= max_scale, a triangle for every vertex triple whose edges all
 * exist, with value the maximum of its edge values.
 */
FiltrationComplex vietoris_rips(const PointCloud& landmarks, double max_scale);
FiltrationComplex vietoris_rips(int n_points, const DistanceFn& dist, double max_scale);

nlohmann::ordered_json complex_to_json(const FiltrationComplex& K);
FiltrationComplex complex_from_json(const nlohmann::json& j);

} // namespace tcoords
