#include "tcoords/inner_product.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "tcoords/coordinates.hpp"
#include "tcoords/errors.hpp"

namespace tcoords {

NeighborGraph neighbor_graph(const PointCloud& cloud, int k, double bandwidth) {
    const int n = cloud.size();
    if (k < 1) throw validation_error("knn must be >= 1");
    if (n < k + 1) throw validation_error("need at least k+1 points for a k-NN graph");

    std::vector<std::vector<int>> nbr(n);
    std::vector<double> knn_dists;
    knn_dists.reserve(static_cast<std::size_t>(n) * k);

    std::vector<std::pair<double, int>> cand;
    for (int a = 0; a < n; ++a) {
        cand.clear();
        for (int b = 0; b < n; ++b) {
            if (b != a) cand.emplace_back(cloud.distance(a, b), b);
        }
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
        for (int j = 0; j < k; ++j) {
            nbr[a].push_back(cand[j].second);
            knn_dists.push_back(cand[j].first);
        }
    }
    // Symmetric closure.
    std::vector<std::vector<int>> adj(n);
    for (int a = 0; a < n; ++a) {
        for (int b : nbr[a]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    NeighborGraph g;
    g.point_count = n;
    g.knn = k;
    if (bandwidth <= 0.0) {
        auto mid = knn_dists.begin() + knn_dists.size() / 2;
        std::nth_element(knn_dists.begin(), mid, knn_dists.end());
        bandwidth = *mid;
        if (bandwidth <= 0.0) bandwidth = 1.0;   // all-coincident degenerate cloud
    }
    g.bandwidth = bandwidth;
    g.neighbors.resize(n);
    g.weights.resize(n);
    for (int a = 0; a < n; ++a) {
        auto& list = adj[a];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        g.neighbors[a] = list;
        g.weights[a].reserve(list.size());
        for (int b : list) {
            const double d2 = cloud.squared_distance(a, b);
            g.weights[a].push_back(std::exp(-d2 / (bandwidth * bandwidth)));
        }
    }
    return g;
}

InnerProductForm InnerProductForm::make_dsmv(int edge_count) {
    InnerProductForm f;
    f.kind_ = Kind::dsmv;
    f.edge_count_ = edge_count;
    return f;
}

InnerProductForm InnerProductForm::make_estimated(Eigen::SparseMatrix<double> weight,
                                                  std::vector<DirichletTriple> triples,
                                                  int edge_count, double lambda) {
    InnerProductForm f;
    f.kind_ = Kind::estimated_dirichlet;
    f.edge_count_ = edge_count;
    f.lambda_ = lambda;
    f.weight_ = std::move(weight);
    f.triples_ = std::move(triples);
    return f;
}

double dsmv(const CocycleR& theta, const CocycleR& eta) {
    if (theta.values.size() != eta.values.size()) {
        throw validation_error("dsmv: cocycles indexed over different complexes");
    }
    double acc = 0.0;
    for (std::size_t e = 0; e < theta.values.size(); ++e) acc += theta.values[e] * eta.values[e];
    return acc;
}

double InnerProductForm::evaluate(const CocycleR& a, const CocycleR& b) const {
    if (static_cast<int>(a.values.size()) != edge_count_ ||
        static_cast<int>(b.values.size()) != edge_count_) {
        throw validation_error("inner product: cocycle size does not match the reference complex");
    }
    if (kind_ == Kind::dsmv) return dsmv(a, b);
    Eigen::Map<const Eigen::VectorXd> va(a.values.data(), edge_count_);
    Eigen::Map<const Eigen::VectorXd> vb(b.values.data(), edge_count_);
    return va.dot(weight_ * vb) + lambda_ * va.dot(vb);
}

Eigen::VectorXd InnerProductForm::apply_weight(const Eigen::VectorXd& v) const {
    if (kind_ == Kind::dsmv) return v;
    return weight_ * v + lambda_ * v;
}

Eigen::SparseMatrix<double> InnerProductForm::weight_matrix() const {
    if (kind_ != Kind::dsmv) return weight_;
    Eigen::SparseMatrix<double> id(edge_count_, edge_count_);
    id.setIdentity();
    return id;
}

nlohmann::ordered_json InnerProductForm::triples_to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : triples_) arr.push_back({t.w, t.y, t.z, t.value});
    return arr;
}

InnerProductForm estimated_dirichlet_form(const CoverData& cover, const NeighborGraph& graph,
                                          const FiltrationComplex& K) {
    if (cover.point_count() != graph.point_count) {
        throw validation_error("cover and neighbor graph built on different point counts");
    }
    const int L = cover.landmark_count;
    if (K.vertex_count() != L) {
        throw validation_error("reference complex vertex count does not match landmark count");
    }

    // Accumulated D_wyz for y <= z, keyed by (w, y, z).
    std::map<std::tuple<int, int, int>, double> coeff;

    std::vector<double> phi_a(L, 0.0), diff(L, 0.0);
    std::vector<int> touched;
    for (int a = 0; a < graph.point_count; ++a) {
        const auto& na = graph.neighbors[a];
        if (na.empty()) continue;
        const double inv_n = 1.0 / static_cast<double>(na.size());
        for (auto [l, wgt] : cover.phi[a]) phi_a[l] = wgt;

        for (std::size_t bi = 0; bi < na.size(); ++bi) {
            const int b = na[bi];
            const double h = graph.weights[a][bi];
            touched.clear();
            for (auto [l, wgt] : cover.phi[b]) {
                diff[l] = wgt - phi_a[l];
                touched.push_back(l);
            }
            for (auto [l, wgt] : cover.phi[a]) {
                if (std::none_of(cover.phi[b].begin(), cover.phi[b].end(),
                                 [l = l](const auto& p) { return p.first == l; })) {
                    diff[l] = -wgt;
                    touched.push_back(l);
                }
            }
            std::sort(touched.begin(), touched.end());

            // Per source landmark w, keep only differences whose pair (w, y)
            // is an edge of K; each (a, b, w) contribution is then an exact
            // square of cocycle pairings.
            for (auto [w, phi_w] : cover.phi[a]) {
                const double scale = inv_n * h * phi_w;
                for (std::size_t yi = 0; yi < touched.size(); ++yi) {
                    const int y = touched[yi];
                    if (y == w || K.edge_id(w, y) < 0) continue;
                    for (std::size_t zi = yi; zi < touched.size(); ++zi) {
                        const int z = touched[zi];
                        if (z == w || K.edge_id(w, z) < 0) continue;
                        coeff[{w, y, z}] += scale * diff[y] * diff[z];
                    }
                }
            }
            for (int l : touched) diff[l] = 0.0;
        }
        for (auto [l, wgt] : cover.phi[a]) {
            (void)wgt;
            phi_a[l] = 0.0;
        }
    }

    std::vector<DirichletTriple> triples;
    triples.reserve(coeff.size());
    std::vector<Eigen::Triplet<double>> wt;
    for (const auto& [key, val] : coeff) {
        const auto [w, y, z] = key;
        triples.push_back({w, y, z, val});
        const int e1 = K.edge_id(w, y);
        const int e2 = K.edge_id(w, z);
        const double s1 = w < y ? 1.0 : -1.0;
        const double s2 = w < z ? 1.0 : -1.0;
        // Full ordered (y, z) sum contributes both orders for y != z.
        wt.emplace_back(e1, e2, 0.5 * val * s1 * s2);
        if (y != z) wt.emplace_back(e2, e1, 0.5 * val * s1 * s2);
    }
    Eigen::SparseMatrix<double> W(K.edge_count(), K.edge_count());
    W.setFromTriplets(wt.begin(), wt.end());
    return InnerProductForm::make_estimated(std::move(W), std::move(triples), K.edge_count());
}

} // namespace tcoords
