#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tcoords/complex.hpp"
#include "tcoords/inner_product.hpp"

namespace tcoords {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact integer determinant (fraction-free Bareiss elimination).
std::int64_t integer_determinant(const IntMatrix& m);

/// Gram matrix G_ij = <eta_i, eta_j> under the form, symmetrized by averaging.
Eigen::MatrixXd gram(const std::vector<CocycleR>& etas, const InnerProductForm& form);

/**
 * Lower-triangular Cholesky factor C with C C^T = G. Throws numerical_error
 * with "not linearly independent" when some pivot falls below
 * 1e-10 * trace / k (the classes are dependent over R).
 */
Eigen::MatrixXd cholesky(const Eigen::MatrixXd& G);

struct ReducedBasisResult {
    Eigen::MatrixXd basis;          // reduced rows
    IntMatrix transform;            // M with M * input = basis, det +-1
    double input_sq_length = 0.0;   // sum of input row squared norms
    double output_sq_length = 0.0;  // sum of output row squared norms
};

/**
 * Floating-point LLL reduction of the given row vectors with Lovasz
 * parameter delta (default 3/4). Every size reduction and swap is mirrored
 * exactly on the integer transform M, so M stays unimodular even when the
 * float rows drift. Guarded by an iteration cap.
 */
ReducedBasisResult lll_reduce(Eigen::MatrixXd rows, double lovasz_delta = 0.75);

struct LowEnergyResult {
    std::vector<CocycleR> thetas;
    IntMatrix transform;            // theta_i = sum_j M_ij eta_j
    double input_sq_length = 0.0;
    double output_sq_length = 0.0;
};

/**
 * Replace harmonic cocycles by an integer unimodular recombination of lower
 * total form-energy: Gram, Cholesky, LLL on the Cholesky rows, then
 * M applied to the cocycles. Total output energy is within 2^(k-1) of the
 * optimum over all bases of the generated subgroup.
 */
LowEnergyResult low_energy_representatives(const std::vector<CocycleR>& etas,
                                           const InnerProductForm& form);

struct BruteForceBasisResult {
    double optimal_sq_length = 0.0;
    IntMatrix coefficients;         // rows achieve the optimum
};

/**
 * Exhaustive test oracle: over integer coefficient matrices with entries in
 * [-coeff_bound, coeff_bound] and |det| = 1, minimize the total squared
 * length sum_i a_i G a_i^T. Requires k <= 4 and coeff_bound <= 6.
 */
BruteForceBasisResult brute_force_min_basis(const Eigen::MatrixXd& G, int coeff_bound);

} // namespace tcoords
