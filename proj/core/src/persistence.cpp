#include "tcoords/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "tcoords/errors.hpp"

namespace tcoords {

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
    std::int64_t acc = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

/// A live cocycle: a sparse cochain (cell id -> value in (0, p)) together
/// with its birth in the filtration.
struct LiveCocycle {
    int birth_order;
    double birth;
    std::unordered_map<int, std::int64_t> support;
};

/// support_q -= c * support_p (mod p), dropping zeros.
void axpy_mod(std::unordered_map<int, std::int64_t>& q,
              const std::unordered_map<int, std::int64_t>& p_src, std::int64_t c,
              std::int64_t p) {
    for (const auto& [cell, val] : p_src) {
        auto it = q.find(cell);
        const std::int64_t cur = it == q.end() ? 0 : it->second;
        const std::int64_t next = ((cur - c * val) % p + p) % p;
        if (next == 0) {
            if (it != q.end()) q.erase(it);
        } else if (it == q.end()) {
            q.emplace(cell, next);
        } else {
            it->second = next;
        }
    }
}

std::int64_t eval_support(const std::unordered_map<int, std::int64_t>& s, int cell) {
    auto it = s.find(cell);
    return it == s.end() ? 0 : it->second;
}

struct RawInterval {
    int dim;
    double birth, death;
    int birth_order;
    std::unordered_map<int, std::int64_t> representative;   // dim 1 only
};

} // namespace

Barcode persistent_cohomology(const FiltrationComplex& K, std::int64_t p) {
    if (!is_prime(p) || p <= 2 || p >= (1 << 15)) {
        throw validation_error("coefficient prime must satisfy 2 < p < 2^15 and be prime");
    }

    std::vector<LiveCocycle> live0, live1;
    std::vector<RawInterval> raw;
    int order = 0;

    live0.reserve(K.vertex_count());
    for (int v = 0; v < K.vertex_count(); ++v) {
        live0.push_back({order++, 0.0, {{v, 1}}});
    }

    // One pass over edges and triangles merged by (value, dimension, lex);
    // both lists are already sorted by (value, lex).
    const auto& edges = K.edges();
    const auto& triangles = K.triangles();
    std::size_t ie = 0, it = 0;

    // Kills the youngest pairing cocycle in `live` and fixes up the rest.
    // Returns the removed cocycle, or birth_order -1 when no pairing is nonzero.
    const auto strike = [p](std::vector<LiveCocycle>& live,
                            const std::vector<std::int64_t>& pairings) -> LiveCocycle {
        int victim = -1;
        for (std::size_t q = 0; q < live.size(); ++q) {
            if (pairings[q] != 0 &&
                (victim < 0 || live[q].birth_order > live[victim].birth_order)) {
                victim = static_cast<int>(q);
            }
        }
        if (victim < 0) return LiveCocycle{-1, 0.0, {}};
        LiveCocycle dying = std::move(live[victim]);
        const std::int64_t inv = mod_inverse(pairings[victim], p);
        for (std::size_t q = 0; q < live.size(); ++q) {
            if (static_cast<int>(q) == victim || pairings[q] == 0) continue;
            axpy_mod(live[q].support, dying.support, pairings[q] * inv % p, p);
        }
        live.erase(live.begin() + victim);
        return dying;
    };

    std::vector<std::int64_t> pairings;
    while (ie < edges.size() || it < triangles.size()) {
        const bool take_edge =
            it >= triangles.size() || (ie < edges.size() && edges[ie].t <= triangles[it].t);
        if (take_edge) {
            const auto& e = edges[ie];
            const int eid = static_cast<int>(ie);
            ++ie;
            pairings.assign(live0.size(), 0);
            bool any = false;
            for (std::size_t q = 0; q < live0.size(); ++q) {
                const std::int64_t z =
                    (eval_support(live0[q].support, e.j) - eval_support(live0[q].support, e.i)) % p;
                pairings[q] = (z + p) % p;
                any |= pairings[q] != 0;
            }
            if (!any) {
                live1.push_back({order++, e.t, {{eid, 1}}});
            } else {
                LiveCocycle dying = strike(live0, pairings);
                if (e.t > dying.birth) {
                    raw.push_back({0, dying.birth, e.t, dying.birth_order, {}});
                }
            }
        } else {
            const auto& tr = triangles[it];
            ++it;
            const int e_ij = K.edge_id(tr.i, tr.j);
            const int e_jk = K.edge_id(tr.j, tr.k);
            const int e_ik = K.edge_id(tr.i, tr.k);
            pairings.assign(live1.size(), 0);
            bool any = false;
            for (std::size_t q = 0; q < live1.size(); ++q) {
                const auto& s = live1[q].support;
                const std::int64_t z =
                    (eval_support(s, e_ij) + eval_support(s, e_jk) - eval_support(s, e_ik)) % p;
                pairings[q] = (z + p) % p;
                any |= pairings[q] != 0;
            }
            if (any) {
                LiveCocycle dying = strike(live1, pairings);
                if (tr.t > dying.birth) {
                    raw.push_back({1, dying.birth, tr.t, dying.birth_order, std::move(dying.support)});
                }
            }
            // A triangle pairing with nothing would start a 2-cocycle; degree 2
            // is outside this barcode.
        }
    }

    for (auto& c : live0) raw.push_back({0, c.birth, kInfiniteDeath, c.birth_order, {}});
    for (auto& c : live1) raw.push_back({1, c.birth, kInfiniteDeath, c.birth_order, std::move(c.support)});

    std::sort(raw.begin(), raw.end(), [](const RawInterval& a, const RawInterval& b) {
        const double pa = a.death - a.birth, pb = b.death - b.birth;
        if (pa != pb) return pa > pb;
        return std::tie(a.dim, a.birth, a.birth_order) < std::tie(b.dim, b.birth, b.birth_order);
    });

    Barcode out;
    out.prime = p;
    out.intervals.reserve(raw.size());
    for (auto& r : raw) {
        PersistenceInterval iv;
        iv.dim = r.dim;
        iv.birth = r.birth;
        iv.death = r.death;
        if (r.dim == 1) {
            iv.representative.values.assign(K.edge_count(), 0);
            for (const auto& [eid, val] : r.representative) iv.representative.values[eid] = val;
        }
        out.intervals.push_back(std::move(iv));
    }
    return out;
}

std::vector<int> Barcode::degree1_positions() const {
    std::vector<int> pos;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].dim == 1) pos.push_back(static_cast<int>(i));
    }
    return pos;
}

CohomologyClassSelection select_classes(const Barcode& barcode, const FiltrationComplex& K,
                                        double epsilon, const std::vector<int>& indices) {
    const auto deg1 = barcode.degree1_positions();
    CohomologyClassSelection sel;
    sel.epsilon = epsilon;
    sel.prime = barcode.prime;
    sel.complex_at_epsilon = K.restrict_to_scale(epsilon);
    sel.degree1_indices = indices;

    for (int idx : indices) {
        if (idx < 0 || idx >= static_cast<int>(deg1.size())) {
            throw validation_error("class index " + std::to_string(idx) + " out of range (" +
                                   std::to_string(deg1.size()) + " degree-1 intervals)");
        }
        const auto& iv = barcode.intervals[deg1[idx]];
        if (!(iv.birth <= epsilon && epsilon < iv.death)) {
            throw validation_error("class " + std::to_string(idx) + " dead at scale " +
                                   std::to_string(epsilon));
        }
        CocycleZ restricted;
        restricted.values.assign(iv.representative.values.begin(),
                                 iv.representative.values.begin() +
                                     sel.complex_at_epsilon.edge_count());
        if (!check_cocycle_mod(sel.complex_at_epsilon, restricted, barcode.prime)) {
            throw numerical_error("representative fails the cocycle condition at scale " +
                                  std::to_string(epsilon));
        }
        sel.classes.push_back(std::move(restricted));
    }
    return sel;
}

CocycleZ lift_to_integer(const CocycleZ& theta_p, std::int64_t p,
                         const FiltrationComplex& K_at_scale) {
    CocycleZ lifted;
    lifted.values.reserve(theta_p.values.size());
    for (std::int64_t v : theta_p.values) {
        const std::int64_t r = ((v % p) + p) % p;
        lifted.values.push_back(r <= (p - 1) / 2 ? r : r - p);
    }
    if (!check_cocycle(K_at_scale, lifted)) {
        throw numerical_error("integer lift failed the cocycle condition; increase p or refine scale");
    }
    return lifted;
}

nlohmann::ordered_json barcode_to_json(const Barcode& barcode, const FiltrationComplex& K) {
    nlohmann::ordered_json j;
    j["prime"] = barcode.prime;
    auto& ivs = j["intervals"] = nlohmann::ordered_json::array();
    for (const auto& iv : barcode.intervals) {
        nlohmann::ordered_json o;
        o["dim"] = iv.dim;
        o["birth"] = iv.birth;
        if (std::isinf(iv.death)) {
            o["death"] = nullptr;
        } else {
            o["death"] = iv.death;
        }
        auto& rep = o["rep"] = nlohmann::ordered_json::array();
        if (iv.dim == 1) {
            for (std::size_t e = 0; e < iv.representative.values.size(); ++e) {
                if (iv.representative.values[e] != 0) {
                    const auto& ed = K.edge(static_cast<int>(e));
                    rep.push_back({ed.i, ed.j, iv.representative.values[e]});
                }
            }
        }
        ivs.push_back(std::move(o));
    }
    return j;
}

Barcode barcode_from_json(const nlohmann::json& j, const FiltrationComplex& K) {
    Barcode b;
    b.prime = j.at("prime").get<std::int64_t>();
    for (const auto& o : j.at("intervals")) {
        PersistenceInterval iv;
        iv.dim = o.at("dim").get<int>();
        iv.birth = o.at("birth").get<double>();
        iv.death = o.at("death").is_null() ? kInfiniteDeath : o.at("death").get<double>();
        if (iv.dim == 1) {
            iv.representative.values.assign(K.edge_count(), 0);
            for (const auto& r : o.at("rep")) {
                const int e = K.edge_id(r.at(0).get<int>(), r.at(1).get<int>());
                if (e < 0) throw io_error("barcode representative references a missing edge");
                iv.representative.values[e] = r.at(2).get<std::int64_t>();
            }
        }
        b.intervals.push_back(std::move(iv));
    }
    return b;
}

std::string barcode_table(const Barcode& barcode, int max_rows) {
    std::string out = "  idx dim        birth        death  persistence\n";
    char buf[160];
    std::vector<int> per_dim_count(3, 0);
    int rows = 0;
    for (const auto& iv : barcode.intervals) {
        if (max_rows >= 0 && rows >= max_rows) break;
        ++rows;
        const int idx = per_dim_count[iv.dim]++;
        if (std::isinf(iv.death)) {
            std::snprintf(buf, sizeof buf, "%5d %3d %12.6g %12s %12s\n", idx, iv.dim, iv.birth,
                          "inf", "inf");
        } else {
            std::snprintf(buf, sizeof buf, "%5d %3d %12.6g %12.6g %12.6g\n", idx, iv.dim, iv.birth,
                          iv.death, iv.persistence());
        }
        out += buf;
    }
    return out;
}

} // namespace tcoords
