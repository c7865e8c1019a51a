#include <doctest.h>

#include <cmath>
#include <random>

#include "tcoords/errors.hpp"
#include "tcoords/persistence.hpp"

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

PointCloud noisy_circle(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double r = 1.0 + 0.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
        pts(i, 0) = r * std::cos(a);
        pts(i, 1) = r * std::sin(a);
    }
    return PointCloud(std::move(pts));
}

std::vector<const PersistenceInterval*> degree1(const Barcode& b) {
    std::vector<const PersistenceInterval*> out;
    for (int pos : b.degree1_positions()) out.push_back(&b.intervals[pos]);
    return out;
}

} // namespace

TEST_CASE("4-cycle: exactly one degree-1 interval [1, sqrt 2)") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    const auto deg1 = degree1(barcode);
    REQUIRE(deg1.size() == 1);
    CHECK(deg1[0]->birth == doctest::Approx(1.0));
    CHECK(deg1[0]->death == doctest::Approx(std::sqrt(2.0)));

    // the representative is supported and passes the cocycle check on every
    // complex in [birth, death)
    int support = 0;
    for (auto v : deg1[0]->representative.values) support += v != 0;
    CHECK(support >= 1);
    for (double s : {1.0, 1.2, 1.4, 1.41}) {
        const auto Ks = K.restrict_to_scale(s);
        CocycleZ restricted;
        restricted.values.assign(deg1[0]->representative.values.begin(),
                                 deg1[0]->representative.values.begin() + Ks.edge_count());
        CHECK(check_cocycle_mod(Ks, restricted, 41));
    }
}

TEST_CASE("filled triangle has no degree-1 intervals") {
    const auto K = vietoris_rips(make_cloud({{0, 0}, {1, 0}, {0.5, 0.8}}), 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    CHECK(degree1(barcode).empty());
}

TEST_CASE("two disjoint 4-cycles give two equal degree-1 intervals") {
    const auto cloud = make_cloud({{0, 0}, {1, 0}, {0, 1}, {1, 1},
                                   {100, 0}, {101, 0}, {100, 1}, {101, 1}});
    // keep the scale below the gap so the complex stays two squares
    const auto K = vietoris_rips(cloud, 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    const auto deg1 = degree1(barcode);
    REQUIRE(deg1.size() == 2);
    for (const auto* iv : deg1) {
        CHECK(iv->birth == doctest::Approx(1.0));
        CHECK(iv->death == doctest::Approx(std::sqrt(2.0)));
    }
    // degree-0: two essential components at this scale
    int essential0 = 0;
    for (const auto& iv : barcode.intervals) {
        essential0 += iv.dim == 0 && std::isinf(iv.death);
    }
    CHECK(essential0 == 2);
}

TEST_CASE("interval multisets agree across primes on torsion-free complexes") {
    const auto K = vietoris_rips(noisy_circle(40, 77), 1.8);
    const auto b41 = persistent_cohomology(K, 41);
    const auto b47 = persistent_cohomology(K, 47);
    REQUIRE(b41.intervals.size() == b47.intervals.size());
    for (std::size_t i = 0; i < b41.intervals.size(); ++i) {
        CHECK(b41.intervals[i].dim == b47.intervals[i].dim);
        CHECK(b41.intervals[i].birth == doctest::Approx(b41.intervals[i].birth));
        if (std::isinf(b41.intervals[i].death)) {
            CHECK(std::isinf(b47.intervals[i].death));
        } else {
            CHECK(b41.intervals[i].death == doctest::Approx(b47.intervals[i].death));
        }
    }
}

TEST_CASE("every degree-1 representative is valid at its birth scale") {
    const auto K = vietoris_rips(noisy_circle(35, 13), 2.2);
    const auto barcode = persistent_cohomology(K, 41);
    for (const auto* iv : degree1(barcode)) {
        const auto Kb = K.restrict_to_scale(iv->birth);
        CocycleZ restricted;
        restricted.values.assign(iv->representative.values.begin(),
                                 iv->representative.values.begin() + Kb.edge_count());
        CHECK(check_cocycle_mod(Kb, restricted, 41));
    }
}

TEST_CASE("degree-0 intervals count connected components at every scale") {
    const auto cloud = make_cloud({{0}, {0.5}, {3}, {3.4}, {10}});
    const auto K = vietoris_rips(cloud, 20.0);
    const auto barcode = persistent_cohomology(K, 41);
    for (double s : {0.1, 0.45, 0.6, 2.6, 3.1, 7.0, 9.9}) {
        const auto comp = K.restrict_to_scale(s).components();
        int expected = 0;
        for (int v = 0; v < static_cast<int>(comp.size()); ++v) expected += comp[v] == v;
        int covering = 0;
        for (const auto& iv : barcode.intervals) {
            covering += iv.dim == 0 && iv.birth <= s && s < iv.death;
        }
        CHECK(covering == expected);
    }
}

TEST_CASE("persistent cohomology is deterministic") {
    const auto K = vietoris_rips(noisy_circle(30, 5), 1.5);
    const auto a = persistent_cohomology(K, 41);
    const auto b = persistent_cohomology(K, 41);
    REQUIRE(a.intervals.size() == b.intervals.size());
    for (std::size_t i = 0; i < a.intervals.size(); ++i) {
        CHECK(a.intervals[i].birth == b.intervals[i].birth);
        CHECK(a.intervals[i].death == b.intervals[i].death);
        CHECK(a.intervals[i].representative.values == b.intervals[i].representative.values);
    }
}

TEST_CASE("select_classes restricts the 4-cycle representative to scale 1.2") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    const auto sel = select_classes(barcode, K, 1.2, {0});
    REQUIRE(sel.classes.size() == 1);
    CHECK(sel.complex_at_epsilon.edge_count() == 4);
    CHECK(check_cocycle_mod(sel.complex_at_epsilon, sel.classes[0], 41));
}

TEST_CASE("select_classes with an empty index list") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    const auto sel = select_classes(barcode, K, 1.2, {});
    CHECK(sel.classes.empty());
}

TEST_CASE("select_classes rejects a scale beyond death") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    const auto barcode = persistent_cohomology(K, 41);
    CHECK_THROWS_WITH_AS(select_classes(barcode, K, 1.5, {0}), doctest::Contains("dead at scale"),
                         validation_error);
}

TEST_CASE("lift_to_integer uses the symmetric representative") {
    const auto K = FiltrationComplex(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {}, 1.0);
    CocycleZ theta{{40, 3, 0}};
    const auto lifted = lift_to_integer(theta, 41, K);
    CHECK(lifted.values[0] == -1);
    CHECK(lifted.values[1] == 3);
    CHECK(lifted.values[2] == 0);
}

TEST_CASE("lift_to_integer maps zero to zero") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    CocycleZ zero{std::vector<std::int64_t>(K.edge_count(), 0)};
    for (auto v : lift_to_integer(zero, 41, K).values) CHECK(v == 0);
}

TEST_CASE("lift_to_integer on a hollow triangle is unconstrained") {
    const auto K = FiltrationComplex(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {}, 1.0);
    CocycleZ theta{{1, 0, 0}};
    const auto lifted = lift_to_integer(theta, 41, K);
    CHECK(lifted.values == std::vector<std::int64_t>{1, 0, 0});
}

TEST_CASE("barcode JSON round-trip keeps intervals and representatives") {
    const auto K = vietoris_rips(noisy_circle(25, 9), 1.9);
    const auto barcode = persistent_cohomology(K, 41);
    const auto j = barcode_to_json(barcode, K);
    const auto back = barcode_from_json(j, K);
    REQUIRE(back.intervals.size() == barcode.intervals.size());
    for (std::size_t i = 0; i < barcode.intervals.size(); ++i) {
        CHECK(back.intervals[i].dim == barcode.intervals[i].dim);
        CHECK(back.intervals[i].birth == barcode.intervals[i].birth);
        if (barcode.intervals[i].dim == 1) {
            CHECK(back.intervals[i].representative.values ==
                  barcode.intervals[i].representative.values);
        }
    }
}

TEST_CASE("prime validation") {
    const auto K = vietoris_rips(unit_square(), 2.0);
    CHECK_THROWS_AS(persistent_cohomology(K, 40), validation_error);
    CHECK_THROWS_AS(persistent_cohomology(K, 2), validation_error);
}
