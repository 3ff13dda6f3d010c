#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include "viscid/dataset.hpp"
#include "viscid/inference.hpp"
#include "viscid/parallel.hpp"
#include "viscid/simulation.hpp"

namespace viscid::cli {

namespace {

SolverConfig make_solver(const std::string& kind, const std::string& weights) {
  if (kind == "classic") {
    if (!weights.empty()) throw UsageError{"--weights is only valid with --solver neural"};
    return SolverConfig::classic();
  }
  if (weights.empty()) throw UsageError{"--solver neural requires --weights"};
  return SolverConfig::neural_from_file(weights);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string ms(double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", seconds * 1e3);
  return buf;
}

void print_timings(const RunReport& r, std::ostream& out) {
  for (int s = 0; s < kStageCount; ++s) {
    const StageSummary& t = r.stages[static_cast<std::size_t>(s)];
    out << "stage=" << stage_name(s) << " mean_ms=" << ms(t.mean) << " p50_ms=" << ms(t.p50)
        << " p95_ms=" << ms(t.p95) << " max_ms=" << ms(t.max) << '\n';
  }
  out << "stage=total mean_ms=" << ms(r.total.mean) << " p50_ms=" << ms(r.total.p50) << " p95_ms=" << ms(r.total.p95)
      << " max_ms=" << ms(r.total.max) << '\n';
}

}  // namespace

int simulate(const SimulateArgs& a, std::ostream& out) {
  const Scene scene = load_scene(a.scene);
  const SolverConfig solver = make_solver(a.solver, a.weights);
  RunOutputs outputs;
  outputs.snapshot_dir = a.out;
  const RunReport r = run(scene, a.frames, solver, outputs);
  out << "scene=" << scene.name << " frames=" << r.frames << " particles=" << r.particle_count
      << " solver=" << a.solver << " out=" << a.out << '\n';
  print_timings(r, out);
  return 0;
}

int gen_dataset(const DatasetArgs& a, std::ostream& out) {
  const Scene scene = load_scene(a.scene);
  RunOutputs outputs;
  outputs.dataset_path = a.out;
  outputs.dataset_with_coeff = a.with_mu;
  const RunReport r = run(scene, a.frames, SolverConfig::classic(), outputs);

  DatasetManifest m;
  m.frame_count = r.dataset_frames;
  m.scenes = {scene.name};
  m.nx = scene.dims.nx;
  m.ny = scene.dims.ny;
  std::set<double> mus{scene.mu};
  for (const ViscosityRegion& reg : scene.mu_regions) mus.insert(reg.mu);
  m.mu_values.assign(mus.begin(), mus.end());
  m.save(a.out + ".manifest.txt");
  out << "dataset=" << a.out << " frames=" << r.dataset_frames << " nx=" << m.nx << " ny=" << m.ny << '\n';
  return 0;
}

int eval(const EvalArgs& a, std::ostream& out) {
  const WeightManifest net = load_weights(a.weights);
  const std::vector<FrameRecord> frames = read_dataset(a.dataset);
  if (frames.empty()) throw FormatError("eval: dataset has no frames");
  double l2_sum = 0.0, lv_sum = 0.0, l2_max = 0.0, lv_max = 0.0;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    const LossReport r = evaluate_record(frames[k], net);
    out << "frame=" << k << " l2=" << fmt(r.l2) << " l_v=" << fmt(r.l_v) << '\n';
    l2_sum += r.l2;
    lv_sum += r.l_v;
    l2_max = std::max(l2_max, r.l2);
    lv_max = std::max(lv_max, r.l_v);
  }
  const double n = static_cast<double>(frames.size());
  out << "summary frames=" << frames.size() << " l2_mean=" << fmt(l2_sum / n) << " l2_max=" << fmt(l2_max)
      << " l_v_mean=" << fmt(lv_sum / n) << " l_v_max=" << fmt(lv_max) << '\n';
  return 0;
}

int bench(const BenchArgs& a, std::ostream& out) {
  const Scene scene = load_scene(a.scene);
  const SolverConfig solver = make_solver(a.solver, a.weights);
  const RunReport r = run(scene, a.frames, solver);
  out << "scene=" << scene.name << " nx=" << scene.dims.nx << " ny=" << scene.dims.ny << " frames=" << r.frames
      << " particles=" << r.particle_count << " solver=" << a.solver << " threads=" << thread_count() << '\n';
  print_timings(r, out);
  return 0;
}

int init_weights(const InitWeightsArgs& a, std::ostream& out) {
  if (a.depth != 2 && a.depth != 4) throw UsageError{"--depth must be 2 or 4"};
  if (a.in_channels != 6 && a.in_channels != 7) throw UsageError{"--in-channels must be 6 or 7"};
  const UnetConfig config = UnetConfig::defaults(a.depth, a.in_channels);
  const WeightManifest m = a.zero ? make_zero_manifest(config) : make_seeded_manifest(config, a.seed);
  save_weights(m, a.out);
  std::size_t params = 0;
  for (const Layer& l : m.layers) params += l.weight.size() + l.bias.size();
  out << "weights=" << a.out << " depth=" << a.depth << " in_channels=" << a.in_channels
      << " parameters=" << params << " init=" << (a.zero ? "zero" : "seeded") << '\n';
  return 0;
}

}  // namespace viscid::cli
