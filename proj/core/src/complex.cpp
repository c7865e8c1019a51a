#include "tcoords/complex.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "tcoords/errors.hpp"

namespace tcoords {

namespace {

std::int64_t edge_key(int i, int j, int vertex_count) {
    return static_cast<std::int64_t>(i) * vertex_count + j;
}

} // namespace

FiltrationComplex::FiltrationComplex(int vertex_count, std::vector<FiltrationEdge> edges,
                                     std::vector<FiltrationTriangle> triangles, double max_scale)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      triangles_(std::move(triangles)),
      max_scale_(max_scale) {
    std::sort(edges_.begin(), edges_.end(), [](const FiltrationEdge& a, const FiltrationEdge& b) {
        return std::tie(a.t, a.i, a.j) < std::tie(b.t, b.i, b.j);
    });
    std::sort(triangles_.begin(), triangles_.end(),
              [](const FiltrationTriangle& a, const FiltrationTriangle& b) {
                  return std::tie(a.t, a.i, a.j, a.k) < std::tie(b.t, b.i, b.j, b.k);
              });
    build_index();
    validate();
}

void FiltrationComplex::build_index() {
    edge_index_.clear();
    edge_index_.reserve(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        edge_index_[edge_key(edges_[e].i, edges_[e].j, vertex_count_)] = static_cast<int>(e);
    }
}

void FiltrationComplex::validate() const {
    for (const auto& e : edges_) {
        if (e.i < 0 || e.j >= vertex_count_ || e.i >= e.j) {
            throw validation_error("edge indices out of order or out of range");
        }
        if (!(e.t >= 0.0)) throw validation_error("negative or non-finite edge filtration value");
    }
    if (edge_index_.size() != edges_.size()) throw validation_error("duplicate edge");
    for (const auto& tr : triangles_) {
        if (!(tr.i < tr.j && tr.j < tr.k) || tr.i < 0 || tr.k >= vertex_count_) {
            throw validation_error("triangle indices out of order or out of range");
        }
        for (auto [a, b] : {std::pair{tr.i, tr.j}, {tr.j, tr.k}, {tr.i, tr.k}}) {
            const int e = edge_id(a, b);
            if (e < 0) throw validation_error("triangle face edge missing");
            if (edges_[e].t > tr.t + 1e-12 * std::max(1.0, tr.t)) {
                throw validation_error("triangle filtration value below a face edge's");
            }
        }
    }
}

int FiltrationComplex::edge_id(int i, int j) const {
    if (i == j) return -1;
    if (i > j) std::swap(i, j);
    auto it = edge_index_.find(edge_key(i, j, vertex_count_));
    return it == edge_index_.end() ? -1 : it->second;
}

FiltrationComplex FiltrationComplex::restrict_to_scale(double s) const {
    std::vector<FiltrationEdge> edges;
    for (const auto& e : edges_) {
        if (e.t <= s) edges.push_back(e);
    }
    std::vector<FiltrationTriangle> triangles;
    for (const auto& tr : triangles_) {
        if (tr.t <= s) triangles.push_back(tr);
    }
    return FiltrationComplex(vertex_count_, std::move(edges), std::move(triangles), s);
}

std::vector<std::vector<std::pair<int, int>>> FiltrationComplex::adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(vertex_count_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        adj[edges_[e].i].emplace_back(edges_[e].j, static_cast<int>(e));
        adj[edges_[e].j].emplace_back(edges_[e].i, static_cast<int>(e));
    }
    return adj;
}

std::vector<int> FiltrationComplex::components() const {
    std::vector<int> comp(vertex_count_, -1);
    const auto adj = adjacency();
    for (int start = 0; start < vertex_count_; ++start) {
        if (comp[start] >= 0) continue;
        std::queue<int> q;
        q.push(start);
        comp[start] = start;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (auto [w, e] : adj[v]) {
                (void)e;
                if (comp[w] < 0) {
                    comp[w] = start;
                    q.push(w);
                }
            }
        }
    }
    return comp;
}

template <typename T>
Cocycle1<T> coboundary(const FiltrationComplex& K, const Cochain0<T>& tau) {
    if (static_cast<int>(tau.values.size()) != K.vertex_count()) {
        throw validation_error("cochain length does not match vertex count");
    }
    Cocycle1<T> out;
    out.values.resize(K.edge_count());
    for (int e = 0; e < K.edge_count(); ++e) {
        const auto& ed = K.edge(e);
        out.values[e] = tau.values[ed.j] - tau.values[ed.i];
    }
    return out;
}

template Cocycle1<std::int64_t> coboundary(const FiltrationComplex&, const Cochain0<std::int64_t>&);
template Cocycle1<double> coboundary(const FiltrationComplex&, const Cochain0<double>&);

namespace {

template <typename T, typename Check>
bool check_triangles(const FiltrationComplex& K, const Cocycle1<T>& theta, Check zero) {
    if (static_cast<int>(theta.values.size()) != K.edge_count()) {
        throw validation_error("cocycle length does not match edge count");
    }
    for (const auto& tr : K.triangles()) {
        const T a = theta.values[K.edge_id(tr.i, tr.j)];
        const T b = theta.values[K.edge_id(tr.j, tr.k)];
        const T c = theta.values[K.edge_id(tr.i, tr.k)];
        if (!zero(a + b - c)) return false;
    }
    return true;
}

} // namespace

bool check_cocycle(const FiltrationComplex& K, const CocycleZ& theta) {
    return check_triangles(K, theta, [](std::int64_t r) { return r == 0; });
}

bool check_cocycle_mod(const FiltrationComplex& K, const CocycleZ& theta, std::int64_t p) {
    return check_triangles(K, theta, [p](std::int64_t r) { return ((r % p) + p) % p == 0; });
}

bool check_cocycle(const FiltrationComplex& K, const CocycleR& theta) {
    double max_abs = 0.0;
    for (double v : theta.values) max_abs = std::max(max_abs, std::abs(v));
    const double tol = 1e-9 * std::max(1.0, max_abs);
    return check_triangles(K, theta, [tol](double r) { return std::abs(r) <= tol; });
}

std::pair<std::vector<int>, double> maxmin_sample(int n_points, const DistanceFn& dist,
                                                  int n_landmarks, std::int64_t seed) {
    if (n_landmarks < 1 || n_landmarks > n_points) {
        throw validation_error("n_landmarks must be in [1, n]");
    }
    int start = 0;
    if (seed >= 0) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        start = static_cast<int>(rng() % static_cast<std::uint64_t>(n_points));
    }
    std::vector<int> landmarks{start};
    std::vector<double> min_dist(n_points);
    for (int b = 0; b < n_points; ++b) min_dist[b] = dist(b, start);

    while (static_cast<int>(landmarks.size()) < n_landmarks) {
        int next = 0;
        for (int b = 1; b < n_points; ++b) {
            if (min_dist[b] > min_dist[next]) next = b;   // ties keep the lowest index
        }
        landmarks.push_back(next);
        for (int b = 0; b < n_points; ++b) {
            min_dist[b] = std::min(min_dist[b], dist(b, next));
        }
    }
    double cover_radius = 0.0;
    for (int b = 0; b < n_points; ++b) cover_radius = std::max(cover_radius, min_dist[b]);
    return {std::move(landmarks), cover_radius};
}

std::pair<std::vector<int>, double> maxmin_sample(const PointCloud& cloud, int n_landmarks,
                                                  std::int64_t seed) {
    return maxmin_sample(cloud.size(), euclidean_metric(cloud), n_landmarks, seed);
}

FiltrationComplex vietoris_rips(int n, const DistanceFn& dist, double max_scale) {
    if (!(max_scale >= 0.0)) throw validation_error("max_scale must be nonnegative");

    std::vector<FiltrationEdge> edges;
    std::vector<std::vector<std::pair<int, double>>> upper(n);   // j > i with d <= s
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = dist(i, j);
            if (d <= max_scale) {
                edges.push_back({i, j, d});
                upper[i].emplace_back(j, d);
            }
        }
    }
    std::vector<FiltrationTriangle> triangles;
    FiltrationComplex skeleton(n, edges, {}, max_scale);   // for edge lookups
    for (int i = 0; i < n; ++i) {
        const auto& nbrs = upper[i];
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                const int j = nbrs[a].first, k = nbrs[b].first;
                const int e = skeleton.edge_id(j, k);
                if (e < 0) continue;
                const double t = std::max({nbrs[a].second, nbrs[b].second, skeleton.edge(e).t});
                triangles.push_back({i, j, k, t});
            }
        }
    }
    return FiltrationComplex(n, std::move(edges), std::move(triangles), max_scale);
}

FiltrationComplex vietoris_rips(const PointCloud& landmarks, double max_scale) {
    return vietoris_rips(landmarks.size(), euclidean_metric(landmarks), max_scale);
}

nlohmann::ordered_json complex_to_json(const FiltrationComplex& K) {
    nlohmann::ordered_json j;
    j["vertices"] = K.vertex_count();
    auto& je = j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : K.edges()) je.push_back({e.i, e.j, e.t});
    auto& jt = j["triangles"] = nlohmann::ordered_json::array();
    for (const auto& t : K.triangles()) jt.push_back({t.i, t.j, t.k, t.t});
    j["max_scale"] = K.max_scale();
    return j;
}

FiltrationComplex complex_from_json(const nlohmann::json& j) {
    std::vector<FiltrationEdge> edges;
    for (const auto& e : j.at("edges")) {
        edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    std::vector<FiltrationTriangle> triangles;
    for (const auto& t : j.at("triangles")) {
        triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(),
                             t.at(3).get<double>()});
    }
    return FiltrationComplex(j.at("vertices").get<int>(), std::move(edges), std::move(triangles),
                             j.value("max_scale", 0.0));
}

} // namespace tcoords
