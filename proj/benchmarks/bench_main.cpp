#include <benchmark/benchmark.h>

#include "viscid/inference.hpp"
#include "viscid/level_set.hpp"
#include "viscid/nn_ops.hpp"
#include "viscid/pressure.hpp"
#include "viscid/scene.hpp"
#include "viscid/simulation.hpp"
#include "viscid/viscosity.hpp"

using namespace viscid;

namespace {

// State captured at the viscosity stage of frame `frame` of a paint-mixing
// style scene.
struct StageFixture {
  Scene scene;
  FluidParams params;
  SolidSdf2 solid;
  VolumeFractions2 vols;
  MacVelocity2 before;
  CellLabels labels;
};

Scene mixing_scene(int n) {
  Scene s;
  s.name = "mixing";
  s.domain = {1.0, 1.0};
  s.dims = GridDims(n, n, 1.0 / n);
  s.mu = 20.0;
  s.fluids = {Shape::box({0.0, 0.0}, {0.5, 0.6}, 0), Shape::box({0.5, 0.0}, {1.0, 0.6}, 1)};
  s.solids = {Shape::disc({0.5, 0.75}, 0.1)};
  s.seed = 3;
  s.jitter = 0.5;
  return s;
}

StageFixture capture(int n, std::size_t frame) {
  StageFixture f;
  f.scene = mixing_scene(n);
  Simulation sim(f.scene, SolverConfig::classic());
  for (std::size_t k = 0; k < frame; ++k) sim.step();
  bool done = false;
  sim.step([&](const ViscosityStageView& v) {
    if (done) return;
    f.params = v.params;
    f.solid = v.solid;
    f.vols = v.vols;
    f.before = v.before;
    done = true;
  });
  f.labels = classify_cells(LevelSet2(f.scene.dims, -1.0), f.solid, f.scene.dims, true);
  return f;
}

void BM_ClassicViscosity(benchmark::State& state) {
  const StageFixture f = capture(static_cast<int>(state.range(0)), 30);
  for (auto _ : state) {
    auto r = viscosity_step(f.before, f.vols, f.solid, f.params, f.scene.dims);
    benchmark::DoNotOptimize(r.velocity.u.data().data());
  }
}
BENCHMARK(BM_ClassicViscosity)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_NeuralViscosity(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(1));
  const StageFixture f = capture(static_cast<int>(state.range(0)), 30);
  const WeightManifest net = make_seeded_manifest(UnetConfig::defaults(depth), 1);
  for (auto _ : state) {
    const ChannelStack stack = encode(f.before, f.vols, f.solid, nullptr, f.scene.dims);
    const MacVelocity2 out = f.before + predict_delta(stack, net, f.scene.dims);
    benchmark::DoNotOptimize(out.u.data().data());
  }
}
BENCHMARK(BM_NeuralViscosity)->Args({25, 2})->Args({25, 4})->Args({50, 2})->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& state) {
  const StageFixture f = capture(static_cast<int>(state.range(0)), 30);
  for (auto _ : state) {
    auto r = project(f.before, f.labels, f.solid, f.params, f.scene.dims);
    benchmark::DoNotOptimize(r.velocity.u.data().data());
  }
}
BENCHMARK(BM_Projection)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Conv3x3(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const int hw = static_cast<int>(state.range(1));
  Layer layer;
  layer.kind = LayerKind::Conv;
  layer.in_channels = c;
  layer.out_channels = c;
  layer.kernel_h = layer.kernel_w = 3;
  layer.weight.assign(static_cast<std::size_t>(c) * c * 9, 0.01f);
  layer.bias.assign(static_cast<std::size_t>(c), 0.0f);
  Tensor x(c, hw, hw, 0.5f);
  for (auto _ : state) {
    Tensor y = conv2d(x, layer);
    benchmark::DoNotOptimize(y.data.data());
  }
}
BENCHMARK(BM_Conv3x3)->Args({32, 52})->Args({64, 26})->Args({128, 13})->Unit(benchmark::kMicrosecond);

void BM_FullStep(benchmark::State& state) {
  Simulation sim(mixing_scene(static_cast<int>(state.range(0))), SolverConfig::classic());
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
}
BENCHMARK(BM_FullStep)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
