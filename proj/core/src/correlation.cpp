#include "tcoords/correlation.hpp"

#include <cmath>
#include <cstdio>

#include "tcoords/errors.hpp"

namespace tcoords {

double estimate_dirichlet(const CircleMap& f, const CircleMap& g, const NeighborGraph& graph) {
    if (f.size() != graph.point_count || g.size() != graph.point_count) {
        throw validation_error("estimate_dirichlet: maps and graph have different point counts");
    }
    double total = 0.0;
    for (int a = 0; a < graph.point_count; ++a) {
        const auto& nbrs = graph.neighbors[a];
        if (nbrs.empty()) continue;
        double acc = 0.0;
        for (std::size_t bi = 0; bi < nbrs.size(); ++bi) {
            const int b = nbrs[bi];
            acc += graph.weights[a][bi] * circular_lift_difference(f.values[a], f.values[b]) *
                   circular_lift_difference(g.values[a], g.values[b]);
        }
        total += acc / static_cast<double>(nbrs.size());
    }
    return total;
}

CorrelationMatrix correlation_matrix(const std::vector<CircleMap>& maps,
                                     const NeighborGraph& graph) {
    if (maps.empty()) throw validation_error("correlation_matrix: no maps");
    const int k = static_cast<int>(maps.size());
    CorrelationMatrix out;
    out.knn = graph.knn;
    out.bandwidth = graph.bandwidth;
    out.values.resize(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            out.values(i, j) = estimate_dirichlet(maps[i], maps[j], graph);
            out.values(j, i) = out.values(i, j);
        }
    }
    out.values = ((out.values + out.values.transpose()) / 2.0).eval();
    return out;
}

double CorrelationMatrix::off_diagonal_ratio() const {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < values.rows(); ++i) {
        for (int j = 0; j < values.cols(); ++j) {
            if (i == j) {
                diag += values(i, j) * values(i, j);
            } else {
                off += values(i, j) * values(i, j);
            }
        }
    }
    return diag > 0.0 ? off / diag : 0.0;
}

nlohmann::ordered_json correlation_to_json(const CorrelationMatrix& m) {
    nlohmann::ordered_json j;
    j["knn"] = m.knn;
    j["bandwidth"] = m.bandwidth;
    auto& rows = j["matrix"] = nlohmann::ordered_json::array();
    for (int r = 0; r < m.values.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (int c = 0; c < m.values.cols(); ++c) row.push_back(m.values(r, c));
        rows.push_back(std::move(row));
    }
    j["off_diagonal_ratio"] = m.off_diagonal_ratio();
    return j;
}

std::string correlation_table(const CorrelationMatrix& m) {
    std::string out;
    char buf[64];
    for (int r = 0; r < m.values.rows(); ++r) {
        for (int c = 0; c < m.values.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%10.3f", m.values(r, c));
            out += buf;
        }
        out += '\n';
    }
    std::snprintf(buf, sizeof buf, "off-diagonal ratio: %.6g\n", m.off_diagonal_ratio());
    out += buf;
    return out;
}

} // namespace tcoords
