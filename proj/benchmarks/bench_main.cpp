/**
 * Microbenchmarks for the pipeline's hot stages: Vietoris-Rips construction,
 * the cocycle persistence pass, the harmonic least-squares solve, LLL, and
 * sparse integration.
 */

#include <random>

#include <benchmark/benchmark.h>

#include "tcoords/complex.hpp"
#include "tcoords/coordinates.hpp"
#include "tcoords/datasets.hpp"
#include "tcoords/harmonic.hpp"
#include "tcoords/inner_product.hpp"
#include "tcoords/lattice.hpp"
#include "tcoords/persistence.hpp"

namespace {

using namespace tcoords;

struct TorusFixture {
    PointCloud cloud;
    std::vector<int> landmarks;
    double cover_radius;
    FiltrationComplex complex;

    static const TorusFixture& get(int n_landmarks) {
        static TorusFixture f = [n_landmarks]() {
            TorusFixture out;
            out.cloud = synth_torus(1200, 7).points;
            std::tie(out.landmarks, out.cover_radius) = maxmin_sample(out.cloud, n_landmarks);
            out.complex = vietoris_rips(out.cloud.select(out.landmarks), 2.0);
            return out;
        }();
        return f;
    }
};

void BM_VietorisRips(benchmark::State& state) {
    const auto& f = TorusFixture::get(150);
    const PointCloud landmarks = f.cloud.select(f.landmarks);
    for (auto _ : state) {
        benchmark::DoNotOptimize(vietoris_rips(landmarks, 2.0));
    }
}
BENCHMARK(BM_VietorisRips)->Unit(benchmark::kMillisecond);

void BM_PersistentCohomology(benchmark::State& state) {
    const auto& f = TorusFixture::get(150);
    for (auto _ : state) {
        benchmark::DoNotOptimize(persistent_cohomology(f.complex, 41));
    }
}
BENCHMARK(BM_PersistentCohomology)->Unit(benchmark::kMillisecond);

void BM_HarmonicRepresentative(benchmark::State& state) {
    const auto& f = TorusFixture::get(150);
    const auto barcode = persistent_cohomology(f.complex, 41);
    const auto K = f.complex.restrict_to_scale(2.05 * f.cover_radius);
    const auto sel = select_classes(barcode, f.complex, 2.05 * f.cover_radius, {0});
    const auto lift = lift_to_integer(sel.classes[0], 41, K);
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    for (auto _ : state) {
        benchmark::DoNotOptimize(harmonic_representative(lift, form, K));
    }
}
BENCHMARK(BM_HarmonicRepresentative)->Unit(benchmark::kMillisecond);

void BM_LllReduce(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Eigen::MatrixXd rows(k, k);
    std::mt19937_64 rng(11);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            rows(i, j) = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(lll_reduce(rows));
    }
}
BENCHMARK(BM_LllReduce)->Arg(2)->Arg(4)->Arg(8);

void BM_SparseIntegrate(benchmark::State& state) {
    const auto& f = TorusFixture::get(150);
    const double epsilon = 2.05 * f.cover_radius;
    const auto K = f.complex.restrict_to_scale(epsilon);
    const auto barcode = persistent_cohomology(f.complex, 41);
    const auto sel = select_classes(barcode, f.complex, epsilon, {0});
    const auto lift = lift_to_integer(sel.classes[0], 41, K);
    const auto form = InnerProductForm::make_dsmv(K.edge_count());
    const auto h = harmonic_representative(lift, form, K);
    const auto cover = partition_of_unity(f.cloud, f.cloud.select(f.landmarks), epsilon);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sparse_integrate(h.theta, cover, K));
    }
}
BENCHMARK(BM_SparseIntegrate)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
