#include <doctest.h>

#include <cmath>
#include <random>

#include "tcoords/coordinates.hpp"
#include "tcoords/errors.hpp"
#include "tcoords/harmonic.hpp"
#include "tcoords/persistence.hpp"

using namespace tcoords;

namespace {

FiltrationComplex hollow_triangle() {
    return FiltrationComplex(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {}, 1.0);
}

FiltrationComplex four_cycle() {
    return FiltrationComplex(4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}, {}, 1.0);
}

PointCloud circle_sample(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * static_cast<double>(rng() >> 11) * 0x1.0p-53;
        pts(i, 0) = std::cos(a);
        pts(i, 1) = std::sin(a);
    }
    return PointCloud(std::move(pts));
}

double circ(double a, double b) { return circular_distance(a, b); }

/// Max circular distance after aligning at the first point.
double rotational_gap(const CircleMap& f, const CircleMap& g) {
    REQUIRE(f.size() == g.size());
    double gap = 0.0;
    const double shift = circular_lift_difference(f.values[0], g.values[0]);
    for (int i = 0; i < f.size(); ++i) {
        gap = std::max(gap, circ(f.values[i] + shift, g.values[i]));
    }
    return gap;
}

std::pair<FiltrationComplex, CocycleR> circle_harmonic(int n_points, int n_landmarks,
                                                       std::uint64_t seed) {
    const auto cloud = circle_sample(n_points, seed);
    auto [landmarks, radius] = maxmin_sample(cloud, n_landmarks);
    (void)radius;
    const auto K_full = vietoris_rips(cloud.select(landmarks), 2.5);
    const auto barcode = persistent_cohomology(K_full, 41);
    REQUIRE(!barcode.degree1_positions().empty());
    const auto& iv = barcode.intervals[barcode.degree1_positions()[0]];
    const double eps = iv.birth + 0.3 * (std::min(iv.death, 2.5) - iv.birth);
    const auto sel = select_classes(barcode, K_full, eps, {0});
    const auto lift = lift_to_integer(sel.classes[0], 41, sel.complex_at_epsilon);
    const auto form = InnerProductForm::make_dsmv(sel.complex_at_epsilon.edge_count());
    auto theta = harmonic_representative(lift, form, sel.complex_at_epsilon).theta;
    return {sel.complex_at_epsilon, std::move(theta)};
}

} // namespace

TEST_CASE("circular_lift_difference basics") {
    CHECK(circular_lift_difference(0.1, 0.2) == doctest::Approx(0.1));
    CHECK(circular_lift_difference(0.9, 0.1) == doctest::Approx(0.2));
    CHECK(circular_lift_difference(0.0, 0.5) == doctest::Approx(-0.5));
}

TEST_CASE("integrate the harmonic cocycle on the 3-cycle") {
    const auto K = hollow_triangle();
    CocycleR theta{std::vector<double>(3, 0.0)};
    theta.values[K.edge_id(0, 1)] = 1.0 / 3.0;
    theta.values[K.edge_id(1, 2)] = 1.0 / 3.0;
    theta.values[K.edge_id(0, 2)] = -1.0 / 3.0;
    const auto f = integrate(theta, K);
    CHECK(f.values[0] == doctest::Approx(0.0));
    CHECK(f.values[1] == doctest::Approx(1.0 / 3.0));
    CHECK(f.values[2] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("integrating a coboundary recovers the potential up to rotation") {
    const auto K = four_cycle();
    Cochain0R tau{{0.3, 1.7, -0.4, 0.9}};
    const auto dtau = coboundary(K, tau);
    const auto f = integrate(dtau, K);
    CircleMap expected;
    for (double t : tau.values) expected.values.push_back(t - std::floor(t));
    CHECK(rotational_gap(f, expected) < 1e-12);
}

TEST_CASE("integrating the zero cocycle gives the constant map") {
    const auto K = four_cycle();
    CocycleR zero{std::vector<double>(4, 0.0)};
    for (double v : integrate(zero, K).values) CHECK(v == 0.0);
}

TEST_CASE("integrate rejects non-integral classes") {
    const auto K = hollow_triangle();
    CocycleR theta{{0.4, 0.0, 0.0}};   // cycle sum 0.4 + 0 - 0 hmm oriented: see below
    theta.values[K.edge_id(0, 1)] = 0.4;
    theta.values[K.edge_id(1, 2)] = 0.0;
    theta.values[K.edge_id(0, 2)] = 0.0;
    CHECK_THROWS_WITH_AS(integrate(theta, K), doctest::Contains("integral"), numerical_error);
}

TEST_CASE("partition of unity splits evenly at the midpoint") {
    Eigen::MatrixXd data(1, 1), lm(2, 1);
    data << 0.5;
    lm << 0.0, 1.0;
    const auto cover = partition_of_unity(PointCloud(data), PointCloud(lm), 3.0);
    REQUIRE(cover.phi[0].size() == 2);
    CHECK(cover.phi[0][0].second == doctest::Approx(0.5));
    CHECK(cover.phi[0][1].second == doctest::Approx(0.5));
}

TEST_CASE("partition of unity gives a lone covering landmark full weight") {
    Eigen::MatrixXd data(1, 2), lm(2, 2);
    data << 0.0, 0.0;
    lm << 0.0, 0.0, 10.0, 0.0;
    const auto cover = partition_of_unity(PointCloud(data), PointCloud(lm), 2.0);
    REQUIRE(cover.phi[0].size() == 1);
    CHECK(cover.phi[0][0].first == 0);
    CHECK(cover.phi[0][0].second == doctest::Approx(1.0));
}

TEST_CASE("partition of unity tent weights: 1-d worked example") {
    Eigen::MatrixXd data(2, 1), lm(2, 1);
    data << 0.0, 1.0;
    lm << 0.0, 1.0;
    const auto cover = partition_of_unity(PointCloud(data), PointCloud(lm), 3.0);
    REQUIRE(cover.phi[0].size() == 2);
    CHECK(cover.phi[0][0].second == doctest::Approx(0.75));
    CHECK(cover.phi[0][1].second == doctest::Approx(0.25));
}

TEST_CASE("partition of unity reports the first uncovered point") {
    Eigen::MatrixXd data(2, 1), lm(1, 1);
    data << 0.0, 10.0;
    lm << 0.0;
    CHECK_THROWS_WITH_AS(partition_of_unity(PointCloud(data), PointCloud(lm), 2.0),
                         doctest::Contains("point 1"), validation_error);
}

TEST_CASE("partition rows sum to one") {
    const auto cloud = circle_sample(300, 17);
    auto [landmarks, radius] = maxmin_sample(cloud, 12);
    const auto cover = partition_of_unity(cloud, cloud.select(landmarks), 2.05 * radius);
    for (const auto& row : cover.phi) {
        double s = 0.0;
        for (auto [l, w] : row) {
            (void)l;
            CHECK(w > 0.0);
            s += w;
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sparse integration at a landmark with full weight matches the potential") {
    const auto K = four_cycle();
    CocycleR theta{std::vector<double>(4, 0.0)};
    theta.values[K.edge_id(0, 1)] = 0.25;
    theta.values[K.edge_id(1, 3)] = 0.25;
    theta.values[K.edge_id(2, 3)] = -0.25;
    theta.values[K.edge_id(0, 2)] = -0.25;
    CoverData cover;
    cover.landmark_count = 4;
    cover.epsilon = 1.0;
    cover.phi = {{{2, 1.0}}};   // one data point, sitting exactly on landmark 2
    const auto f = sparse_integrate(theta, cover, K, 7);
    const auto dense = integrate(theta, K, 7);
    CHECK(f.values[0] == doctest::Approx(dense.values[2]));
}

TEST_CASE("sparse integration with two equal weights uses the two-term formula") {
    const auto K = four_cycle();
    CocycleR theta{std::vector<double>(4, 0.0)};
    theta.values[K.edge_id(0, 1)] = 0.25;
    theta.values[K.edge_id(1, 3)] = 0.25;
    theta.values[K.edge_id(2, 3)] = -0.25;
    theta.values[K.edge_id(0, 2)] = -0.25;
    CoverData cover;
    cover.landmark_count = 4;
    cover.epsilon = 1.0;
    cover.phi = {{{0, 0.5}, {1, 0.5}}};
    const auto f = sparse_integrate(theta, cover, K, 3);
    const auto dense_pot = integrate(theta, K, 3);
    // base y = 0 (ties broken to the lowest index): tau_0 + 0.5 * theta^{01}
    const double expect = dense_pot.values[0] + 0.5 * 0.25;
    CHECK(circ(f.values[0], expect) < 1e-12);
}

TEST_CASE("sparse integration requires nerve edges") {
    const auto K = FiltrationComplex(3, {{0, 1, 1.0}}, {}, 1.0);   // no edge (0,2) or (1,2)
    CocycleR theta{{0.0}};
    CoverData cover;
    cover.landmark_count = 3;
    cover.epsilon = 1.0;
    cover.phi = {{{0, 0.6}, {2, 0.4}}};
    CHECK_THROWS_WITH_AS(sparse_integrate(theta, cover, K), doctest::Contains("nerve edge"),
                         numerical_error);
}

TEST_CASE("sparse winding map on a dense circle wraps exactly once") {
    const auto cloud = circle_sample(400, 23);
    auto [landmarks, radius] = maxmin_sample(cloud, 8);
    const auto landmark_cloud = cloud.select(landmarks);
    const auto K_full = vietoris_rips(landmark_cloud, 2.5);
    const auto barcode = persistent_cohomology(K_full, 41);
    const auto& iv = barcode.intervals[barcode.degree1_positions()[0]];
    const double eps = std::max(2.05 * radius, iv.birth * 1.05);
    REQUIRE(eps < iv.death);
    const auto sel = select_classes(barcode, K_full, eps, {0});
    const auto& K = sel.complex_at_epsilon;
    const auto lift = lift_to_integer(sel.classes[0], 41, K);
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto theta = harmonic_representative(lift, form, K).theta;
    const auto cover = partition_of_unity(cloud, landmark_cloud, eps);
    const auto f = sparse_integrate(theta, cover, K);

    // sort by angle and count wraps of the lifted values
    std::vector<int> order(cloud.size());
    for (int i = 0; i < cloud.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::atan2(cloud.points(a, 1), cloud.points(a, 0)) <
               std::atan2(cloud.points(b, 1), cloud.points(b, 0));
    });
    double lifted = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        lifted += circular_lift_difference(f.values[order[i]], f.values[order[i + 1]]);
    }
    lifted += circular_lift_difference(f.values[order.back()], f.values[order.front()]);
    CHECK(std::abs(std::abs(lifted) - 1.0) < 1e-6);
}

TEST_CASE("circular coordinates compose harmonic smoothing with integration") {
    const auto K = hollow_triangle();
    CocycleZ eta{{1, 0, 0}};
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto f = circular_coordinates(eta, form, K);
    CHECK(f.values[0] == doctest::Approx(0.0));
    CHECK(f.values[1] == doctest::Approx(1.0 / 3.0));
    CHECK(f.values[2] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("circular coordinates of a coboundary class are constant up to rotation") {
    const auto K = four_cycle();
    Cochain0Z sigma{{2, -1, 0, 3}};
    const auto eta = coboundary(K, sigma);
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto f = circular_coordinates(eta, form, K);
    for (double v : f.values) CHECK(circ(v, f.values[0]) < 1e-9);
}

TEST_CASE("circular coordinates on the 4-cycle are the quarter turns") {
    const auto K = four_cycle();
    CocycleZ eta{std::vector<std::int64_t>(4, 0)};
    eta.values[K.edge_id(0, 1)] = 1;
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto f = circular_coordinates(eta, form, K);
    // quarter-turn map around the cycle 0 -> 1 -> 3 -> 2
    CircleMap expected;
    expected.values = {0.0, 0.25, 0.75, 0.5};
    CHECK(rotational_gap(f, expected) < 1e-9);
}

TEST_CASE("choice independence: different seeds give rotationally equivalent maps") {
    for (int trial = 0; trial < 5; ++trial) {
        auto [K, theta] = circle_harmonic(150, 15, 50 + trial);
        const auto f1 = integrate(theta, K, 1 + trial);
        const auto f2 = integrate(theta, K, 1000 + trial);
        CHECK(rotational_gap(f1, f2) <= 1e-9);
    }
}

TEST_CASE("integration is additive mod 1") {
    auto [K, theta] = circle_harmonic(120, 14, 77);
    // second integral cocycle: a coboundary
    std::mt19937_64 rng(5);
    Cochain0R sigma;
    for (int v = 0; v < K.vertex_count(); ++v) {
        sigma.values.push_back(static_cast<double>(rng() % 100) / 33.0);
    }
    const auto dsigma = coboundary(K, sigma);
    CocycleR sum = theta;
    for (int e = 0; e < K.edge_count(); ++e) sum.values[e] += dsigma.values[e];

    const auto f_theta = integrate(theta, K, 9);
    const auto f_sigma = integrate(dsigma, K, 9);
    const auto f_sum = integrate(sum, K, 9);
    for (int v = 0; v < K.vertex_count(); ++v) {
        CHECK(circ(f_sum.values[v], f_theta.values[v] + f_sigma.values[v]) < 1e-9);
    }
}

TEST_CASE("sparse and dense integration agree on landmarks with basis-vector rows") {
    auto [K, theta] = circle_harmonic(100, 12, 31);
    CoverData cover;
    cover.landmark_count = K.vertex_count();
    cover.epsilon = 1.0;
    for (int v = 0; v < K.vertex_count(); ++v) {
        cover.phi.push_back({{v, 1.0}});
    }
    const auto sparse = sparse_integrate(theta, cover, K, 4);
    const auto dense = integrate(theta, K, 4);
    CHECK(rotational_gap(sparse, dense) <= 1e-9);
}

TEST_CASE("unimodular transforms act on torus maps pointwise") {
    // two classes on disjoint 4-cycles
    const FiltrationComplex K(8,
                              {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0},
                               {4, 5, 1.0}, {4, 6, 1.0}, {5, 7, 1.0}, {6, 7, 1.0}},
                              {}, 1.0);
    CocycleZ a1{std::vector<std::int64_t>(8, 0)}, a2{std::vector<std::int64_t>(8, 0)};
    a1.values[K.edge_id(0, 1)] = 1;
    a2.values[K.edge_id(4, 5)] = 1;
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto h1 = harmonic_representative(a1, form, K).theta;
    const auto h2 = harmonic_representative(a2, form, K).theta;

    IntMatrix U(2, 2);
    U << 1, 2, 0, 1;   // unimodular
    CocycleR u1, u2;
    u1.values.resize(K.edge_count());
    u2.values.resize(K.edge_count());
    for (int e = 0; e < K.edge_count(); ++e) {
        u1.values[e] = 1.0 * h1.values[e] + 2.0 * h2.values[e];
        u2.values[e] = h2.values[e];
    }
    const std::uint64_t seed = 11;
    const auto f1 = integrate(h1, K, seed);
    const auto f2 = integrate(h2, K, seed);
    const auto g1 = integrate(u1, K, seed);
    const auto g2 = integrate(u2, K, seed);
    for (int v = 0; v < K.vertex_count(); ++v) {
        CHECK(circ(g1.values[v], f1.values[v] + 2.0 * f2.values[v]) < 1e-9);
        CHECK(circ(g2.values[v], f2.values[v]) < 1e-9);
    }
}

TEST_CASE("toroidal coordinates with one class match circular coordinates") {
    const auto K = four_cycle();
    CocycleZ eta{std::vector<std::int64_t>(4, 0)};
    eta.values[K.edge_id(0, 1)] = 1;
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto tm = toroidal_coordinates({eta}, form, K, nullptr, 5);
    const auto cc = circular_coordinates(eta, form, K, nullptr, 5);
    REQUIRE(tm.k() == 1);
    CHECK(tm.transform(0, 0) == 1);
    CHECK(rotational_gap(tm.maps[0], cc) <= 1e-12);
}

TEST_CASE("toroidal coordinates mix the second map by the transform") {
    const FiltrationComplex K(8,
                              {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0},
                               {4, 5, 1.0}, {4, 6, 1.0}, {5, 7, 1.0}, {6, 7, 1.0}},
                              {}, 1.0);
    CocycleZ a1{std::vector<std::int64_t>(8, 0)}, a2{std::vector<std::int64_t>(8, 0)};
    a1.values[K.edge_id(0, 1)] = 1;
    a2.values[K.edge_id(4, 5)] = 1;
    a2.values[K.edge_id(0, 1)] += 1;   // correlated second class
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto tm = toroidal_coordinates({a1, a2}, form, K, nullptr, 2);
    CHECK(std::abs(integer_determinant(tm.transform)) == 1);
    // energy of [a1, a2] is 0.25 + 0.5; the reduced set should reach 0.25 + 0.25
    const auto h1 = harmonic_representative(a1, form, K).theta;
    const auto h2 = harmonic_representative(a2, form, K).theta;
    const auto low = low_energy_representatives({h1, h2}, form);
    CHECK(low.output_sq_length == doctest::Approx(0.5));
    CHECK(low.input_sq_length == doctest::Approx(0.75));
}

TEST_CASE("toroidal coordinates reject dependent classes") {
    const auto K = four_cycle();
    CocycleZ eta{std::vector<std::int64_t>(4, 0)};
    eta.values[K.edge_id(0, 1)] = 1;
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    CHECK_THROWS_AS(toroidal_coordinates({eta, eta}, form, K), numerical_error);
}

TEST_CASE("align_torus_maps recovers a planted unimodular transform") {
    std::mt19937_64 rng(99);
    const int n = 400;
    std::vector<CircleMap> truth(2);
    for (auto& m : truth) {
        m.values.resize(n);
        for (int i = 0; i < n; ++i) m.values[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }
    IntMatrix U(2, 2);
    U << 1, -1, 0, 1;
    std::vector<CircleMap> recovered(2);
    for (int r = 0; r < 2; ++r) {
        recovered[r].values.resize(n);
        for (int i = 0; i < n; ++i) {
            double acc = 0.17 * (r + 1);   // offsets
            for (int c = 0; c < 2; ++c) {
                acc += static_cast<double>(U(r, c)) * truth[c].values[i];
            }
            recovered[r].values[i] = acc - std::floor(acc);
        }
    }
    const auto align = align_torus_maps(recovered, truth, 2);
    CHECK(align.mean_circular_error < 1e-9);
    CHECK(align.transform == U);
}
