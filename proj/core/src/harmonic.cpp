#include "tcoords/harmonic.hpp"

#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include "tcoords/errors.hpp"

namespace tcoords {

namespace {

constexpr int kDirectSolveLimit = 2000;   // free vertices; beyond this use CG

HarmonicResult solve(const Eigen::VectorXd& eta, const InnerProductForm& form,
                     const FiltrationComplex& K) {
    const int V = K.vertex_count();
    const int E = K.edge_count();
    if (static_cast<int>(eta.size()) != E) {
        throw validation_error("cocycle length does not match edge count");
    }

    // Free vertices: all but the lowest-index vertex of each component
    // (delta kills constants per component, so those are pinned to 0).
    const auto comp = K.components();
    std::vector<int> col_of(V, -1);
    int n_free = 0;
    for (int v = 0; v < V; ++v) {
        if (comp[v] != v) col_of[v] = n_free++;
    }

    Eigen::SparseMatrix<double> d0(E, n_free);
    {
        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(2 * static_cast<std::size_t>(E));
        for (int e = 0; e < E; ++e) {
            const auto& ed = K.edge(e);
            if (col_of[ed.i] >= 0) trips.emplace_back(e, col_of[ed.i], -1.0);
            if (col_of[ed.j] >= 0) trips.emplace_back(e, col_of[ed.j], 1.0);
        }
        d0.setFromTriplets(trips.begin(), trips.end());
    }

    Eigen::VectorXd tau_free;
    if (n_free == 0) {
        tau_free.resize(0);
    } else {
        Eigen::SparseMatrix<double> weighted_d0(E, n_free);
        if (form.is_dsmv()) {
            weighted_d0 = d0;
        } else {
            weighted_d0 = (form.weight_matrix() * d0).eval();
            weighted_d0 += form.lambda() * d0;
        }
        const Eigen::SparseMatrix<double> A = d0.transpose() * weighted_d0;
        const Eigen::VectorXd rhs = weighted_d0.transpose() * eta;

        if (n_free <= kDirectSolveLimit) {
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
            if (solver.info() != Eigen::Success) {
                throw numerical_error("harmonic solve: sparse factorization failed");
            }
            tau_free = solver.solve(rhs);
        } else {
            Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper>
                solver;
            solver.setTolerance(1e-10);
            solver.setMaxIterations(10 * static_cast<Eigen::Index>(V));
            solver.compute(A);
            tau_free = solver.solve(rhs);
            if (solver.info() != Eigen::Success) {
                throw numerical_error("harmonic solve: conjugate gradient did not converge, "
                                      "relative residual " + std::to_string(solver.error()));
            }
        }
    }

    HarmonicResult out;
    out.tau.values.assign(V, 0.0);
    for (int v = 0; v < V; ++v) {
        if (col_of[v] >= 0) out.tau.values[v] = tau_free[col_of[v]];
    }
    out.theta.values.resize(E);
    for (int e = 0; e < E; ++e) {
        const auto& ed = K.edge(e);
        out.theta.values[e] = eta[e] - (out.tau.values[ed.j] - out.tau.values[ed.i]);
    }
    out.residual_norm = std::sqrt(std::max(0.0, form.evaluate(out.theta, out.theta)));
    return out;
}

} // namespace

HarmonicResult harmonic_representative(const CocycleZ& eta, const InnerProductForm& form,
                                       const FiltrationComplex& K) {
    if (!check_cocycle(K, eta)) {
        throw validation_error("harmonic_representative: input is not a cocycle over Z");
    }
    Eigen::VectorXd v(eta.values.size());
    for (std::size_t e = 0; e < eta.values.size(); ++e) {
        v[static_cast<Eigen::Index>(e)] = static_cast<double>(eta.values[e]);
    }
    return solve(v, form, K);
}

HarmonicResult harmonic_representative(const CocycleR& eta, const InnerProductForm& form,
                                       const FiltrationComplex& K) {
    if (!check_cocycle(K, eta)) {
        throw validation_error("harmonic_representative: input is not a cocycle over R");
    }
    Eigen::Map<const Eigen::VectorXd> v(eta.values.data(),
                                        static_cast<Eigen::Index>(eta.values.size()));
    return solve(v, form, K);
}

} // namespace tcoords
