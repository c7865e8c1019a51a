#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include "tcoords/complex.hpp"
#include "tcoords/point_cloud.hpp"

namespace tcoords {

/**
 * Undirected k-nearest-neighbor graph with Gaussian edge weights
 * h(a,b) = exp(-|a-b|^2 / delta^2).
 */
struct NeighborGraph {
    int point_count = 0;
    int knn = 0;
    double bandwidth = 0.0;
    std::vector<std::vector<int>> neighbors;      // sorted, symmetric
    std::vector<std::vector<double>> weights;     // aligned with neighbors
};

/**
 * Build the undirected k-NN graph of a cloud. bandwidth <= 0 selects the
 * median of all k-NN distances.
 */
NeighborGraph neighbor_graph(const PointCloud& cloud, int k = 15, double bandwidth = 0.0);

struct DirichletTriple {
    int w, y, z;    // landmark indices, y <= z
    double value;
};

/**
 * A symmetric positive-semidefinite bilinear form on real edge functions of a
 * reference complex: either the edge-wise dot product (dsmv) or the estimated
 * Dirichlet cover form assembled from D-hat coefficients. The estimated kind
 * adds a small dsmv regularizer (lambda) to every evaluation so that
 * least-squares systems built from it stay definite.
 */
class InnerProductForm {
public:
    enum class Kind { dsmv, estimated_dirichlet };

    static InnerProductForm make_dsmv(int edge_count);
    static InnerProductForm make_estimated(Eigen::SparseMatrix<double> weight,
                                           std::vector<DirichletTriple> triples, int edge_count,
                                           double lambda = 1e-9);

    Kind kind() const { return kind_; }
    int edge_count() const { return edge_count_; }
    double lambda() const { return lambda_; }
    bool is_dsmv() const { return kind_ == Kind::dsmv; }

    double evaluate(const CocycleR& a, const CocycleR& b) const;

    /// (W + lambda I) v for the estimated kind, v for dsmv.
    Eigen::VectorXd apply_weight(const Eigen::VectorXd& v) const;

    /// Coefficient matrix over edges, identity for dsmv (materialized on demand).
    Eigen::SparseMatrix<double> weight_matrix() const;

    const std::vector<DirichletTriple>& triples() const { return triples_; }

    /// D-hat coefficients as [[w, y, z, value], ...] for inspection.
    nlohmann::ordered_json triples_to_json() const;

private:
    Kind kind_ = Kind::dsmv;
    int edge_count_ = 0;
    double lambda_ = 0.0;
    Eigen::SparseMatrix<double> weight_;       // estimated kind only
    std::vector<DirichletTriple> triples_;     // estimated kind only
};

/// The de Silva-Morozov-Vejdemo-Johansson inner product: the sum over
/// unordered edges of the product of values on the stored orientation.
double dsmv(const CocycleR& theta, const CocycleR& eta);

// Forward declaration; CoverData lives with the coordinate algorithms.
struct CoverData;

/**
 * Estimate the Dirichlet cover form: coefficients
 *
 *   D_wyz = sum_a ( (1/|N(a)|) sum_{b in N(a)} h(a,b)
 *                    (phi_y(b) - phi_y(a)) (phi_z(b) - phi_z(a)) ) phi_w(a)
 *
 * accumulated per source landmark w over pairs (y, z) whose edges (w,y),
 * (w,z) exist in K, so that every graph-edge contribution stays a squared
 * pairing of well-typed cocycle values. Evaluation on cocycles is
 * (1/2) sum_wyz D_wyz theta^{wy} eta^{wz} plus the lambda regularizer.
 */
InnerProductForm estimated_dirichlet_form(const CoverData& cover, const NeighborGraph& graph,
                                          const FiltrationComplex& K);

} // namespace tcoords
