#include "tcoords/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "tcoords/errors.hpp"

namespace tcoords {

std::int64_t integer_determinant(const IntMatrix& m) {
    const int n = static_cast<int>(m.rows());
    if (n != m.cols()) throw validation_error("determinant of a non-square matrix");
    if (n == 0) return 1;
    // Fraction-free Bareiss elimination; every division is exact.
    IntMatrix a = m;
    std::int64_t prev = 1;
    std::int64_t sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r) {
                if (a(r, k) != 0) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return 0;
            a.row(k).swap(a.row(pivot));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Eigen::MatrixXd gram(const std::vector<CocycleR>& etas, const InnerProductForm& form) {
    const int k = static_cast<int>(etas.size());
    Eigen::MatrixXd G(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            G(i, j) = form.evaluate(etas[i], etas[j]);
        }
    }
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < i; ++j) {
            G(i, j) = G(j, i);   // symmetrize by averaging the two evaluations
        }
    }
    return (G + G.transpose()) / 2.0;
}

Eigen::MatrixXd cholesky(const Eigen::MatrixXd& G) {
    const int k = static_cast<int>(G.rows());
    if (k != G.cols()) throw validation_error("Gram matrix must be square");
    const double pivot_floor = 1e-10 * G.trace() / std::max(1, k);
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        double d = G(j, j);
        for (int t = 0; t < j; ++t) d -= C(j, t) * C(j, t);
        if (!(d > pivot_floor)) {
            throw numerical_error("cohomology classes not linearly independent over R "
                                  "(Cholesky pivot " + std::to_string(d) + " at row " +
                                  std::to_string(j) + ")");
        }
        C(j, j) = std::sqrt(d);
        for (int i = j + 1; i < k; ++i) {
            double s = G(i, j);
            for (int t = 0; t < j; ++t) s -= C(i, t) * C(j, t);
            C(i, j) = s / C(j, j);
        }
    }
    return C;
}

ReducedBasisResult lll_reduce(Eigen::MatrixXd rows, double lovasz_delta) {
    const int k = static_cast<int>(rows.rows());
    if (k == 0) throw validation_error("lll_reduce: empty basis");
    if (!(lovasz_delta > 0.25 && lovasz_delta < 1.0)) {
        throw validation_error("Lovasz delta must lie in (1/4, 1)");
    }

    ReducedBasisResult out;
    out.input_sq_length = rows.squaredNorm();
    out.transform = IntMatrix::Identity(k, k);

    // Gram-Schmidt data, recomputed from scratch after every basis change;
    // the bases here are tiny (k = number of cohomology classes).
    Eigen::MatrixXd star = rows;               // b*_i
    Eigen::MatrixXd mu = Eigen::MatrixXd::Identity(k, k);
    std::vector<double> star_sq(k, 0.0);
    const auto recompute_gs = [&]() {
        for (int i = 0; i < k; ++i) {
            star.row(i) = rows.row(i);
            for (int j = 0; j < i; ++j) {
                mu(i, j) = rows.row(i).dot(star.row(j)) / star_sq[j];
                star.row(i) -= mu(i, j) * star.row(j);
            }
            star_sq[i] = star.row(i).squaredNorm();
            if (!(star_sq[i] > 0.0) || !std::isfinite(star_sq[i])) {
                throw numerical_error("lll_reduce: input rows are linearly dependent");
            }
        }
    };
    recompute_gs();

    const auto size_reduce = [&](int i, int j) {
        const double m = mu(i, j);
        if (std::abs(m) <= 0.5) return;
        if (!(std::abs(m) < 9.0e18)) {
            throw numerical_error("lll_reduce: size-reduction coefficient overflow");
        }
        const std::int64_t q = std::llround(m);
        rows.row(i) -= static_cast<double>(q) * rows.row(j);
        out.transform.row(i) -= q * out.transform.row(j);
        recompute_gs();
    };

    constexpr long kIterationCap = 1000000;
    long iterations = 0;
    int i = 1;
    while (i < k) {
        if (++iterations > kIterationCap) {
            throw numerical_error("lll_reduce: iteration cap exceeded (non-termination guard)");
        }
        size_reduce(i, i - 1);
        const double lhs = star_sq[i] + mu(i, i - 1) * mu(i, i - 1) * star_sq[i - 1];
        if (lhs < lovasz_delta * star_sq[i - 1]) {
            rows.row(i).swap(rows.row(i - 1));
            out.transform.row(i).swap(out.transform.row(i - 1));
            recompute_gs();
            i = std::max(i - 1, 1);
        } else {
            for (int j = i - 2; j >= 0; --j) size_reduce(i, j);
            ++i;
        }
    }

    out.basis = std::move(rows);
    out.output_sq_length = out.basis.squaredNorm();
    if (std::abs(integer_determinant(out.transform)) != 1) {
        throw numerical_error("lll_reduce: transform lost unimodularity");
    }
    return out;
}

LowEnergyResult low_energy_representatives(const std::vector<CocycleR>& etas,
                                           const InnerProductForm& form) {
    if (etas.empty()) throw validation_error("low_energy_representatives: no cocycles");
    const int k = static_cast<int>(etas.size());
    const Eigen::MatrixXd G = gram(etas, form);
    const Eigen::MatrixXd C = cholesky(G);
    ReducedBasisResult red = lll_reduce(C);
    if (red.output_sq_length > red.input_sq_length) {
        // The inputs already are the better basis of their own subgroup;
        // keep them (this also keeps the 2^(k-1) approximation bound).
        red.transform = IntMatrix::Identity(k, k);
        red.basis = C;
        red.output_sq_length = red.input_sq_length;
    }

    LowEnergyResult out;
    out.transform = red.transform;
    out.input_sq_length = red.input_sq_length;
    out.output_sq_length = red.output_sq_length;
    const int E = static_cast<int>(etas[0].values.size());
    out.thetas.assign(k, CocycleR{});
    for (int i = 0; i < k; ++i) {
        out.thetas[i].values.assign(E, 0.0);
        for (int j = 0; j < k; ++j) {
            const double m = static_cast<double>(red.transform(i, j));
            if (m == 0.0) continue;
            for (int e = 0; e < E; ++e) out.thetas[i].values[e] += m * etas[j].values[e];
        }
    }
    return out;
}

BruteForceBasisResult brute_force_min_basis(const Eigen::MatrixXd& G, int coeff_bound) {
    const int k = static_cast<int>(G.rows());
    if (k < 1 || k > 4) throw validation_error("brute_force_min_basis: k must be in [1, 4]");
    if (coeff_bound < 1 || coeff_bound > 6) {
        throw validation_error("brute_force_min_basis: coeff_bound must be in [1, 6]");
    }

    // Candidate rows up to sign (first nonzero entry positive), sorted by
    // quadratic form value; row sign and order never change |det| or energy.
    struct Candidate {
        std::array<std::int64_t, 4> v;
        double q;
    };
    std::vector<Candidate> cands;
    std::array<std::int64_t, 4> v{0, 0, 0, 0};
    const std::int64_t B = coeff_bound;
    const auto quad = [&](const std::array<std::int64_t, 4>& a) {
        double s = 0.0;
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) s += static_cast<double>(a[r]) * G(r, c) * static_cast<double>(a[c]);
        }
        return s;
    };
    const std::function<void(int)> enumerate = [&](int pos) {
        if (pos == k) {
            int first = 0;
            while (first < k && v[first] == 0) ++first;
            if (first == k || v[first] < 0) return;   // zero or non-canonical sign
            cands.push_back({v, quad(v)});
            return;
        }
        for (std::int64_t x = -B; x <= B; ++x) {
            v[pos] = x;
            enumerate(pos + 1);
        }
        v[pos] = 0;
    };
    enumerate(0);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.q != b.q) return a.q < b.q;
        return a.v < b.v;
    });

    BruteForceBasisResult best;
    best.coefficients = IntMatrix::Identity(k, k);
    best.optimal_sq_length = G.trace();   // the identity basis, always admissible

    std::vector<int> picked(k, -1);
    IntMatrix A(k, k);
    const std::function<void(int, int, double)> dfs = [&](int depth, int from, double partial) {
        if (depth == k) {
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) A(r, c) = cands[picked[r]].v[c];
            }
            if (std::abs(integer_determinant(A)) == 1 &&
                partial < best.optimal_sq_length) {
                best.optimal_sq_length = partial;
                best.coefficients = A;
            }
            return;
        }
        for (int i = from; i < static_cast<int>(cands.size()); ++i) {
            // Rows are picked in nondecreasing q order, so every remaining row
            // costs at least cands[i].q.
            if (partial + (k - depth) * cands[i].q >= best.optimal_sq_length) break;
            picked[depth] = i;
            dfs(depth + 1, i + 1, partial + cands[i].q);
        }
    };
    dfs(0, 0, 0.0);
    return best;
}

} // namespace tcoords
