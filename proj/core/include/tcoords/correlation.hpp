#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tcoords/coordinates.hpp"
#include "tcoords/inner_product.hpp"

namespace tcoords {

/// Estimated Dirichlet correlation matrix of k circle-valued maps over one
/// neighbor graph, entry (i, j) = D-hat(f_i, f_j).
struct CorrelationMatrix {
    Eigen::MatrixXd values;
    int knn = 0;
    double bandwidth = 0.0;

    /// sum_{i != j} d_ij^2 / sum_i d_ii^2, the scalar used to compare how
    /// close two correlation matrices are to diagonal.
    double off_diagonal_ratio() const;
};

/**
 * Estimated Dirichlet form between two circle-valued maps on the graph's
 * points:
 *   D-hat(f,g) = sum_a (1/|N(a)|) sum_{b in N(a)} h(a,b) l(f(b)-f(a)) l(g(b)-g(a))
 * with l the circular lift onto [-1/2, 1/2).
 */
double estimate_dirichlet(const CircleMap& f, const CircleMap& g, const NeighborGraph& graph);

CorrelationMatrix correlation_matrix(const std::vector<CircleMap>& maps,
                                     const NeighborGraph& graph);

nlohmann::ordered_json correlation_to_json(const CorrelationMatrix& m);

/// Aligned plain-text rendering of the matrix with its off-diagonal ratio.
std::string correlation_table(const CorrelationMatrix& m);

} // namespace tcoords
