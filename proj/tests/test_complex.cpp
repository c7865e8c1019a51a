#include <doctest.h>

#include <random>

#include "tcoords/complex.hpp"
#include "tcoords/errors.hpp"

using namespace tcoords;

namespace {

PointCloud make_cloud(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        Eigen::Index c = 0;
        for (double x : row) m(r, c++) = x;
        ++r;
    }
    return PointCloud(std::move(m));
}

PointCloud unit_square() { return make_cloud({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

PointCloud random_cloud(int n, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd m(n, dim);
    for (int i = 0; i < n; ++i) {
        for (int d = 0; d < dim; ++d) {
            m(i, d) = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        }
    }
    return PointCloud(std::move(m));
}

} // namespace

TEST_CASE("maxmin on a 1-d cloud picks the extremes") {
    const auto cloud = make_cloud({{0}, {1}, {2}, {3}, {10}});
    const auto [landmarks, radius] = maxmin_sample(cloud, 2);
    CHECK(landmarks == std::vector<int>{0, 4});
    CHECK(radius == doctest::Approx(3.0));
}

TEST_CASE("maxmin with all points as landmarks has zero cover radius") {
    const auto cloud = random_cloud(17, 3, 5);
    const auto [landmarks, radius] = maxmin_sample(cloud, 17);
    CHECK(landmarks.size() == 17);
    CHECK(radius == 0.0);
}

TEST_CASE("maxmin on duplicated points") {
    const auto cloud = make_cloud({{2, 2}, {2, 2}});
    const auto [landmarks, radius] = maxmin_sample(cloud, 1);
    CHECK(landmarks == std::vector<int>{0});
    CHECK(radius == 0.0);
}

TEST_CASE("maxmin rejects out-of-range landmark counts") {
    const auto cloud = make_cloud({{0}, {1}});
    CHECK_THROWS_AS(maxmin_sample(cloud, 0), validation_error);
    CHECK_THROWS_AS(maxmin_sample(cloud, 3), validation_error);
}

TEST_CASE("maxmin cover radius is non-increasing in the landmark count") {
    const auto cloud = random_cloud(60, 2, 7);
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {1, 2, 5, 10, 20, 40, 60}) {
        const auto [landmarks, radius] = maxmin_sample(cloud, n);
        CHECK(radius <= prev + 1e-15);
        prev = radius;
    }
}

TEST_CASE("vietoris_rips on the unit square") {
    SUBCASE("below the diagonal: 4 edges, no triangles") {
        const auto K = vietoris_rips(unit_square(), 1.2);
        CHECK(K.edge_count() == 4);
        CHECK(K.triangle_count() == 0);
        for (const auto& e : K.edges()) CHECK(e.t == doctest::Approx(1.0));
    }
    SUBCASE("above the diagonal: 6 edges, 4 triangles at sqrt(2)") {
        const auto K = vietoris_rips(unit_square(), 1.5);
        CHECK(K.edge_count() == 6);
        CHECK(K.triangle_count() == 4);
        for (const auto& t : K.triangles()) CHECK(t.t == doctest::Approx(std::sqrt(2.0)));
    }
}

TEST_CASE("vietoris_rips of a single point") {
    const auto K = vietoris_rips(make_cloud({{1, 2, 3}}), 10.0);
    CHECK(K.vertex_count() == 1);
    CHECK(K.edge_count() == 0);
}

TEST_CASE("vietoris_rips is monotone in the scale") {
    const auto cloud = random_cloud(25, 2, 11);
    const auto small = vietoris_rips(cloud, 0.3);
    const auto big = vietoris_rips(cloud, 0.6);
    for (const auto& e : small.edges()) {
        CHECK(big.edge_id(e.i, e.j) >= 0);
    }
    CHECK(big.edge_count() >= small.edge_count());
    CHECK(big.triangle_count() >= small.triangle_count());
    // and the restriction of the big complex equals the small one
    const auto restricted = big.restrict_to_scale(0.3);
    CHECK(restricted.edge_count() == small.edge_count());
    CHECK(restricted.triangle_count() == small.triangle_count());
}

TEST_CASE("coboundary on a filled triangle") {
    const auto K = vietoris_rips(make_cloud({{0, 0}, {1, 0}, {0.5, 0.8}}), 2.0);
    Cochain0Z tau{{0, 1, 3}};
    const auto d = coboundary(K, tau);
    CHECK(d.values[K.edge_id(0, 1)] == 1);
    CHECK(d.values[K.edge_id(1, 2)] == 2);
    CHECK(d.values[K.edge_id(0, 2)] == 3);
    CHECK(check_cocycle(K, d));
}

TEST_CASE("coboundary of a constant cochain is zero") {
    const auto K = vietoris_rips(random_cloud(12, 2, 3), 0.7);
    Cochain0Z tau{std::vector<std::int64_t>(12, 42)};
    for (auto v : coboundary(K, tau).values) CHECK(v == 0);
}

TEST_CASE("coboundary on a path graph") {
    const auto K = vietoris_rips(make_cloud({{0}, {1}, {2}}), 1.0);
    CHECK(K.edge_count() == 2);
    Cochain0Z tau{{0, 0, 5}};
    const auto d = coboundary(K, tau);
    CHECK(d.values[K.edge_id(0, 1)] == 0);
    CHECK(d.values[K.edge_id(1, 2)] == 5);
}

TEST_CASE("coboundaries of random cochains are cocycles") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cloud = random_cloud(20, 2, 1000 + trial);
        const auto K = vietoris_rips(cloud, 0.5 + 0.02 * trial);
        Cochain0Z tau;
        for (int v = 0; v < 20; ++v) tau.values.push_back(static_cast<std::int64_t>(rng() % 19) - 9);
        CHECK(check_cocycle(K, coboundary(K, tau)));

        Cochain0R taur;
        for (int v = 0; v < 20; ++v) taur.values.push_back(static_cast<double>(rng() % 1000) / 7.0);
        CHECK(check_cocycle(K, coboundary(K, taur)));
    }
}

TEST_CASE("check_cocycle on the filled triangle") {
    const auto K = vietoris_rips(make_cloud({{0, 0}, {1, 0}, {0.5, 0.8}}), 2.0);
    CocycleZ good{std::vector<std::int64_t>(3, 0)};
    good.values[K.edge_id(0, 1)] = 1;
    good.values[K.edge_id(1, 2)] = 2;
    good.values[K.edge_id(0, 2)] = 3;
    CHECK(check_cocycle(K, good));

    CocycleZ bad = good;
    bad.values[K.edge_id(0, 2)] = 4;
    CHECK_FALSE(check_cocycle(K, bad));
}

TEST_CASE("check_cocycle on a hollow triangle has no constraints") {
    // equilateral-ish triangle with long edges only: scale admits edges, no triangle
    const auto K = FiltrationComplex(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {}, 1.0);
    CocycleZ theta{{1, 0, 0}};
    CHECK(check_cocycle(K, theta));
}

TEST_CASE("oriented evaluation negates on the reversed pair") {
    const auto K = vietoris_rips(random_cloud(15, 3, 21), 0.9);
    CocycleR theta;
    std::mt19937_64 rng(5);
    for (int e = 0; e < K.edge_count(); ++e) {
        theta.values.push_back(static_cast<double>(rng() % 100) - 50.0);
    }
    for (const auto& e : K.edges()) {
        CHECK(evaluate(K, theta, e.i, e.j) == -evaluate(K, theta, e.j, e.i));
    }
}

TEST_CASE("complex JSON round-trip") {
    const auto K = vietoris_rips(random_cloud(10, 2, 31), 0.8);
    const auto j = complex_to_json(K);
    const auto K2 = complex_from_json(j);
    CHECK(K2.vertex_count() == K.vertex_count());
    CHECK(K2.edge_count() == K.edge_count());
    CHECK(K2.triangle_count() == K.triangle_count());
    for (int e = 0; e < K.edge_count(); ++e) {
        CHECK(K2.edge(e).i == K.edge(e).i);
        CHECK(K2.edge(e).j == K.edge(e).j);
        CHECK(K2.edge(e).t == K.edge(e).t);
    }
}

TEST_CASE("filtration invariants are enforced") {
    CHECK_THROWS_AS(FiltrationComplex(3, {{1, 0, 1.0}}, {}, 1.0), validation_error);
    CHECK_THROWS_AS(FiltrationComplex(3, {{0, 1, -1.0}}, {}, 1.0), validation_error);
    // triangle with a missing edge
    CHECK_THROWS_AS(FiltrationComplex(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{0, 1, 2, 1.0}}, 1.0),
                    validation_error);
    // triangle earlier than one of its edges
    CHECK_THROWS_AS(FiltrationComplex(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 2.0}},
                                      {{0, 1, 2, 1.0}}, 2.0),
                    validation_error);
}

TEST_CASE("zero-length edges are allowed for duplicate points") {
    const auto K = vietoris_rips(make_cloud({{1, 1}, {1, 1}, {5, 5}}), 0.5);
    CHECK(K.edge_count() == 1);
    CHECK(K.edge(0).t == 0.0);
}
