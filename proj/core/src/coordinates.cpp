#include "tcoords/coordinates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <random>

#include "tcoords/errors.hpp"
#include "tcoords/harmonic.hpp"

namespace tcoords {

double circular_lift_difference(double a, double b) {
    double r = b - a;
    r -= std::floor(r);
    if (r >= 0.5) r -= 1.0;
    return r;
}

double circular_distance(double a, double b) { return std::abs(circular_lift_difference(a, b)); }

namespace {

double mod_one(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;   // guard against floor rounding at the seam
    return r;
}

/// Real vertex potentials accumulated along seeded BFS spanning trees, one
/// per component, plus the integrality check on the fundamental cycles.
struct TreeIntegration {
    std::vector<double> potential;
    std::vector<int> basepoints;
};

TreeIntegration integrate_on_tree(const CocycleR& theta, const FiltrationComplex& K,
                                  std::uint64_t seed) {
    const int V = K.vertex_count();
    if (static_cast<int>(theta.values.size()) != K.edge_count()) {
        throw validation_error("cocycle length does not match edge count");
    }
    auto adj = K.adjacency();
    std::mt19937_64 rng(seed);
    for (auto& list : adj) std::shuffle(list.begin(), list.end(), rng);

    TreeIntegration out;
    out.potential.assign(V, 0.0);
    std::vector<char> visited(V, 0);
    std::vector<char> tree_edge(K.edge_count(), 0);

    for (int start = 0; start < V; ++start) {
        if (visited[start]) continue;
        out.basepoints.push_back(start);
        visited[start] = 1;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (auto [w, e] : adj[v]) {
                if (visited[w]) continue;
                visited[w] = 1;
                tree_edge[e] = 1;
                const double val = K.edge(e).i == v ? theta.values[e] : -theta.values[e];
                out.potential[w] = out.potential[v] + val;
                q.push(w);
            }
        }
    }

    // Each non-tree edge closes one fundamental cycle; its theta-sum must be
    // an integer for the class to be integral.
    for (int e = 0; e < K.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        const auto& ed = K.edge(e);
        const double cycle_sum = out.potential[ed.i] + theta.values[e] - out.potential[ed.j];
        if (std::abs(cycle_sum - std::llround(cycle_sum)) > 1e-6) {
            throw numerical_error("cocycle does not represent an integral class (cycle sum " +
                                  std::to_string(cycle_sum) + ")");
        }
    }
    return out;
}

} // namespace

CircleMap integrate(const CocycleR& theta, const FiltrationComplex& K, std::uint64_t seed) {
    TreeIntegration tree = integrate_on_tree(theta, K, seed);
    CircleMap f;
    f.basepoints = std::move(tree.basepoints);
    f.values.resize(tree.potential.size());
    for (std::size_t v = 0; v < tree.potential.size(); ++v) f.values[v] = mod_one(tree.potential[v]);
    return f;
}

CoverData partition_of_unity(const PointCloud& data, const PointCloud& landmarks, double epsilon) {
    if (!(epsilon > 0.0)) throw validation_error("epsilon must be positive");
    CoverData cover;
    cover.landmark_count = landmarks.size();
    cover.epsilon = epsilon;
    cover.phi.resize(data.size());
    const double radius = epsilon / 2.0;
    for (int b = 0; b < data.size(); ++b) {
        auto& row = cover.phi[b];
        double total = 0.0;
        for (int x = 0; x < landmarks.size(); ++x) {
            const double w = radius - (data.points.row(b) - landmarks.points.row(x)).norm();
            if (w > 0.0) {
                row.emplace_back(x, w);
                total += w;
            }
        }
        if (row.empty()) {
            throw validation_error("point " + std::to_string(b) +
                                   " is not covered; increase epsilon or landmarks");
        }
        for (auto& [x, w] : row) w /= total;
    }
    return cover;
}

CircleMap sparse_integrate(const CocycleR& theta, const CoverData& cover,
                           const FiltrationComplex& K, std::uint64_t seed) {
    if (K.vertex_count() != cover.landmark_count) {
        throw validation_error("cover landmark count does not match complex vertex count");
    }
    TreeIntegration tree = integrate_on_tree(theta, K, seed);

    CircleMap f;
    f.basepoints = tree.basepoints;
    f.values.resize(cover.point_count());
    for (int b = 0; b < cover.point_count(); ++b) {
        const auto& row = cover.phi[b];
        int y = -1;
        double best = -1.0;
        for (const auto& [x, w] : row) {
            if (w > best) {   // ties keep the lowest landmark index (rows are sorted)
                best = w;
                y = x;
            }
        }
        double acc = tree.potential[y];
        for (const auto& [z, w] : row) {
            if (z == y) continue;
            const int e = K.edge_id(y, z);
            if (e < 0) {
                throw numerical_error("nerve edge (" + std::to_string(y) + "," +
                                      std::to_string(z) + ") absent from the complex; "
                                      "increase the scale");
            }
            const double val = K.edge(e).i == y ? theta.values[e] : -theta.values[e];
            acc += w * val;
        }
        f.values[b] = mod_one(acc);
    }
    return f;
}

CircleMap circular_coordinates(const CocycleZ& alpha, const InnerProductForm& form,
                               const FiltrationComplex& K, const CoverData* cover,
                               std::uint64_t seed) {
    const HarmonicResult h = harmonic_representative(alpha, form, K);
    return cover ? sparse_integrate(h.theta, *cover, K, seed) : integrate(h.theta, K, seed);
}

TorusMap toroidal_coordinates(const std::vector<CocycleZ>& alphas, const InnerProductForm& form,
                              const FiltrationComplex& K, const CoverData* cover,
                              std::uint64_t seed) {
    if (alphas.empty()) throw validation_error("toroidal_coordinates: no classes given");
    std::vector<CocycleR> etas;
    etas.reserve(alphas.size());
    for (const auto& alpha : alphas) {
        etas.push_back(harmonic_representative(alpha, form, K).theta);
    }
    LowEnergyResult low = low_energy_representatives(etas, form);

    TorusMap tm;
    tm.transform = low.transform;
    tm.provenance = cover ? "toroidal/sparse" : "toroidal/dense";
    for (const auto& theta : low.thetas) {
        tm.maps.push_back(cover ? sparse_integrate(theta, *cover, K, seed)
                                : integrate(theta, K, seed));
    }
    return tm;
}

AlignmentResult align_torus_maps(const std::vector<CircleMap>& recovered,
                                 const std::vector<CircleMap>& truth, int entry_bound) {
    const int k = static_cast<int>(recovered.size());
    if (k == 0 || static_cast<int>(truth.size()) != k) {
        throw validation_error("align_torus_maps: need equally many recovered and true maps");
    }
    const int n = recovered[0].size();
    for (const auto& m : recovered) {
        if (m.size() != n) throw validation_error("map sizes differ");
    }
    for (const auto& m : truth) {
        if (m.size() != n) throw validation_error("map sizes differ");
    }

    // Enumerate candidate rows u, score each against every recovered map with
    // its best rotation offset, then search row combinations with |det| = 1.
    struct Row {
        std::vector<std::int64_t> u;
        double offset;
        double error;
    };
    std::vector<std::vector<Row>> per_target(k);

    std::vector<std::int64_t> u(k, 0);
    std::vector<double> combo(n);
    const std::function<void(int)> enumerate = [&](int pos) {
        if (pos == k) {
            if (std::all_of(u.begin(), u.end(), [](std::int64_t x) { return x == 0; })) return;
            for (int t = 0; t < n; ++t) {
                double acc = 0.0;
                for (int i = 0; i < k; ++i) acc += static_cast<double>(u[i]) * truth[i].values[t];
                combo[t] = acc;
            }
            for (int j = 0; j < k; ++j) {
                double cx = 0.0, sx = 0.0;
                for (int t = 0; t < n; ++t) {
                    const double d = 2.0 * M_PI * (recovered[j].values[t] - combo[t]);
                    cx += std::cos(d);
                    sx += std::sin(d);
                }
                const double offset = std::atan2(sx, cx) / (2.0 * M_PI);
                double err = 0.0;
                for (int t = 0; t < n; ++t) {
                    err += circular_distance(recovered[j].values[t], combo[t] + offset);
                }
                per_target[j].push_back({u, offset, err / n});
            }
            return;
        }
        for (std::int64_t x = -entry_bound; x <= entry_bound; ++x) {
            u[pos] = x;
            enumerate(pos + 1);
        }
        u[pos] = 0;
    };
    enumerate(0);
    for (auto& rows : per_target) {
        std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            if (a.error != b.error) return a.error < b.error;
            return a.u < b.u;
        });
    }

    AlignmentResult best;
    best.mean_circular_error = std::numeric_limits<double>::infinity();
    IntMatrix U(k, k);
    std::vector<int> pick(k, 0);
    const std::function<void(int, double)> dfs = [&](int depth, double partial) {
        if (partial / k >= best.mean_circular_error) return;
        if (depth == k) {
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) U(r, c) = per_target[r][pick[r]].u[c];
            }
            if (std::abs(integer_determinant(U)) != 1) return;
            best.transform = U;
            best.mean_circular_error = partial / k;
            best.offsets.assign(k, 0.0);
            for (int r = 0; r < k; ++r) best.offsets[r] = per_target[r][pick[r]].offset;
            return;
        }
        for (std::size_t i = 0; i < per_target[depth].size(); ++i) {
            pick[depth] = static_cast<int>(i);
            const double next = partial + per_target[depth][i].error;
            if (next / k >= best.mean_circular_error) break;   // rows sorted by error
            dfs(depth + 1, next);
        }
    };
    dfs(0, 0.0);
    if (!std::isfinite(best.mean_circular_error)) {
        throw numerical_error("align_torus_maps: no unimodular candidate in the entry bound");
    }
    return best;
}

nlohmann::ordered_json torus_map_to_json(const TorusMap& tm, const CoverData* cover,
                                         double epsilon) {
    nlohmann::ordered_json j;
    j["k"] = tm.k();
    auto& M = j["M"] = nlohmann::ordered_json::array();
    for (int r = 0; r < tm.transform.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int c = 0; c < tm.transform.cols(); ++c) row.push_back(tm.transform(r, c));
        M.push_back(std::move(row));
    }
    j["provenance"] = tm.provenance;
    j["epsilon"] = epsilon;
    if (cover) {
        j["landmarks"] = cover->landmark_indices;
    } else {
        j["landmarks"] = nlohmann::ordered_json::array();
    }
    return j;
}

void write_torus_map_csv(const TorusMap& tm, const std::string& path) {
    if (tm.maps.empty()) throw validation_error("empty torus map");
    const int n = tm.maps[0].size();
    Eigen::MatrixXd m(n, tm.k());
    for (int c = 0; c < tm.k(); ++c) {
        for (int r = 0; r < n; ++r) m(r, c) = tm.maps[c].values[r];
    }
    write_csv_matrix(m, path);
}

} // namespace tcoords
