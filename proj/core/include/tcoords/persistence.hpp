#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcoords/complex.hpp"

namespace tcoords {

constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceInterval {
    int dim = 0;
    double birth = 0.0;
    double death = kInfiniteDeath;
    /// Representative cocycle over Z/p (values in [0, p)), indexed by the edge
    /// ids of the full complex; only populated for dim == 1. Valid on the
    /// complex restricted to any scale in [birth, death).
    CocycleZ representative;

    double persistence() const { return death - birth; }
};

struct Barcode {
    std::int64_t prime = 41;
    /// Sorted by decreasing persistence (ties: dimension, birth, creation order).
    std::vector<PersistenceInterval> intervals;

    /// Positions (into `intervals`) of the degree-1 intervals, in list order.
    std::vector<int> degree1_positions() const;
};

/**
 * Vietoris-Rips persistent cohomology in degrees 0 and 1 over Z/p with
 * representative cocycles for every degree-1 interval.
 *
 * Simplices are processed in increasing (filtration value, dimension,
 * lexicographic) order, maintaining one live cocycle per surviving class;
 * a simplex whose boundary pairs nontrivially with live cocycles kills the
 * youngest such class. Zero-length intervals are processed but not reported.
 */
Barcode persistent_cohomology(const FiltrationComplex& K, std::int64_t p = 41);

struct CohomologyClassSelection {
    double epsilon = 0.0;
    std::int64_t prime = 41;
    FiltrationComplex complex_at_epsilon;
    std::vector<CocycleZ> classes;          // mod-p cocycles on complex_at_epsilon
    std::vector<int> degree1_indices;       // the requested indices
};

/**
 * Restrict the chosen degree-1 representatives to the complex at scale
 * epsilon. Indices refer to degree-1 intervals in barcode order; every
 * chosen interval must contain epsilon.
 */
CohomologyClassSelection select_classes(const Barcode& barcode, const FiltrationComplex& K,
                                        double epsilon, const std::vector<int>& indices);

/**
 * Symmetric lift Z/p -> Z: each value v in [0, p) maps to the unique integer
 * in (-p/2, p/2] congruent to v. Throws numerical_error when the lifted
 * values violate the integer cocycle condition on some triangle.
 */
CocycleZ lift_to_integer(const CocycleZ& theta_p, std::int64_t p,
                         const FiltrationComplex& K_at_scale);

nlohmann::ordered_json barcode_to_json(const Barcode& barcode, const FiltrationComplex& K);
Barcode barcode_from_json(const nlohmann::json& j, const FiltrationComplex& K);

/// Plain-text persistence diagram table (index, dim, birth, death, persistence).
std::string barcode_table(const Barcode& barcode, int max_rows = -1);

bool is_prime(std::int64_t p);

} // namespace tcoords
