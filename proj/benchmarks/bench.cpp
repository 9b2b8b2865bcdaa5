// Microbenchmarks for the hot paths: distance queries, map evaluation,
// and the subharmonicity audit.

#include <benchmark/benchmark.h>

#include "qcharmlab/barrier.hpp"
#include "qcharmlab/distance_field.hpp"
#include "qcharmlab/harmonic.hpp"

using namespace qcharmlab;

namespace {

JordanCurve make_ellipse() {
    std::vector<Complex> pts(64);
    for (int j = 0; j < 64; ++j) {
        double t = kTwoPi * j / 64;
        pts[j] = Complex(4.0 / 3.0 * std::cos(t), 2.0 / 3.0 * std::sin(t));
    }
    return JordanCurve::build(pts, CurveKind::TrigPoly);
}

HarmonicMap make_map(const JordanCurve& curve) {
    return poisson_extend(BoundaryCorrespondence::make(
        curve, PhaseMap::perturbed_uniform(0.04, 3), 1024));
}

void BM_distance_query(benchmark::State& state) {
    auto curve = make_ellipse();
    DistanceField field(curve);
    Rng rng(1);
    std::vector<Complex> points(1024);
    for (auto& p : points) p = 0.6 * rng.next_in_disk();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(field.query(points[i++ & 1023]).distance);
    }
}
BENCHMARK(BM_distance_query);

void BM_map_eval(benchmark::State& state) {
    auto curve = make_ellipse();
    auto map = make_map(curve);
    Rng rng(2);
    std::vector<Complex> points(1024);
    for (auto& p : points) p = rng.next_in_disk(0.999);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(map.eval(points[i++ & 1023]));
    }
}
BENCHMARK(BM_map_eval);

void BM_map_gradient(benchmark::State& state) {
    auto curve = make_ellipse();
    auto map = make_map(curve);
    Rng rng(3);
    std::vector<Complex> points(1024);
    for (auto& p : points) p = rng.next_in_disk(0.999);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(map.gradient(points[i++ & 1023]).jacobian());
    }
}
BENCHMARK(BM_map_gradient);

void BM_audit_subharmonicity(benchmark::State& state) {
    auto curve = make_ellipse();
    auto map = make_map(curve);
    DistanceField field(curve);
    auto profile_k = 1.6;  // representative dilatation bound
    auto spec = BarrierSpec::make(field.kappa0(), profile_k, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            audit_subharmonicity(map, field, spec,
                                 {static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1))},
                                 false)
                .min_lap_phi);
    }
}
BENCHMARK(BM_audit_subharmonicity)->Args({16, 128})->Args({32, 256});

}  // namespace

BENCHMARK_MAIN();
