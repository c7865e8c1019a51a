#pragma once

#include "tcoords/complex.hpp"
#include "tcoords/inner_product.hpp"

namespace tcoords {

struct HarmonicResult {
    CocycleR theta;        // the harmonic representative, theta = eta - delta(tau)
    Cochain0R tau;         // least-squares potential, 0 at each component's lowest vertex
    double residual_norm;  // |theta| under the form, the least-squares minimum
};

/**
 * Minimum-norm representative of the class of an integer cocycle with respect
 * to an inner product on edge functions: solve
 * tau = argmin |eta - delta(tau)| by weighted least squares and return
 * theta = eta - delta(tau). The potential is pinned to 0 at the lowest-index
 * vertex of each component; small systems use a sparse Cholesky factorization
 * and larger ones conjugate gradients (relative residual 1e-10, iteration cap
 * 10 * vertex count).
 */
HarmonicResult harmonic_representative(const CocycleZ& eta, const InnerProductForm& form,
                                       const FiltrationComplex& K);

/// Same solve for a real-valued cocycle (used for re-smoothing and tests).
HarmonicResult harmonic_representative(const CocycleR& eta, const InnerProductForm& form,
                                       const FiltrationComplex& K);

} // namespace tcoords
