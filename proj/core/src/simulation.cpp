#include "viscid/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <numeric>

#include "viscid/dataset.hpp"
#include "viscid/inference.hpp"
#include "viscid/level_set.hpp"
#include "viscid/snapshot.hpp"

namespace viscid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SolverConfig SolverConfig::neural(WeightManifest manifest) {
  manifest.validate();
  SolverConfig c;
  c.kind = SolverKind::Neural;
  c.weights = std::make_shared<const WeightManifest>(std::move(manifest));
  return c;
}

SolverConfig SolverConfig::neural_from_file(const std::string& path) { return neural(load_weights(path)); }

const char* stage_name(int stage) {
  static constexpr const char* names[kStageCount] = {"p2g", "gravity", "viscosity", "projection", "g2p", "advect"};
  return stage >= 0 && stage < kStageCount ? names[stage] : "?";
}

double StageTimings::total() const { return std::accumulate(seconds.begin(), seconds.end(), 0.0); }

Simulation::Simulation(Scene scene, SolverConfig solver)
    : Simulation(scene, std::move(solver), seed_particles(scene)) {}

Simulation::Simulation(Scene scene, SolverConfig solver, ParticleSet particles)
    : scene_(std::move(scene)), solver_(std::move(solver)), particles_(std::move(particles)) {
  scene_.validate();
  if (solver_.kind == SolverKind::Neural) {
    if (!solver_.weights) throw InvalidArgument("Simulation: neural solver needs a weight manifest");
    const int in = solver_.weights->config.in_channels;
    if (in != kBaseChannels && in != kChannelsWithCoeff)
      throw ManifestError("Simulation: network must take 6 or 7 input channels");
  }
  params_ = make_params(scene_);
  solid_ = build_solid(scene_);
  velocity_ = MacVelocity2(scene_.dims);
}

MacVelocity2 Simulation::neural_viscosity(const MacVelocity2& vel, const VolumeFractions2& vols) const {
  const GridDims& d = scene_.dims;
  const WeightManifest& net = *solver_.weights;
  const Field2* coeff = net.config.in_channels == kChannelsWithCoeff ? &params_.mu : nullptr;
  return vel + predict_delta(encode(vel, vols, solid_, coeff, d), net, d);
}

StageTimings Simulation::step(const ViscosityObserver& observer) {
  const GridDims& d = scene_.dims;
  const double dt = scene_.dt;
  StageTimings t;
  try {
    auto t0 = Clock::now();
    LevelSet2 phi = level_set_from_particles(particles_.position, default_particle_radius(d), d);
    extend_into_solid(phi, solid_, d);
    const VolumeFractions2 vols = fluid_volumes(phi, d);
    const CellLabels labels = classify_cells(phi, solid_, d, scene_.walls);
    GridTransfer transfer = p2g(particles_, d);
    MacVelocity2 vel = std::move(transfer.velocity);
    extrapolate_velocity(vel, transfer.mass_u, transfer.mass_v);
    t.seconds[kStageP2G] = seconds_since(t0);

    t0 = Clock::now();
    for (double& u : vel.u.data()) u += dt * scene_.gravity.x;
    for (double& v : vel.v.data()) v += dt * scene_.gravity.y;
    enforce_solid_faces(vel, labels, solid_, d);
    t.seconds[kStageGravity] = seconds_since(t0);

    t0 = Clock::now();
    MacVelocity2 after;
    std::size_t iterations = 0;
    if (solver_.kind == SolverKind::Classic) {
      ViscosityResult r = viscosity_step(vel, vols, solid_, params_, d, solver_.viscosity);
      after = std::move(r.velocity);
      iterations = r.iterations;
    } else {
      after = neural_viscosity(vel, vols);
    }
    t.seconds[kStageViscosity] = seconds_since(t0);
    if (observer) observer(ViscosityStageView{frame_, d, params_, solid_, vols, vel, after, iterations});

    t0 = Clock::now();
    ProjectionResult proj = project(after, labels, solid_, params_, d, solver_.pressure_tol);
    velocity_ = std::move(proj.velocity);
    t.seconds[kStageProjection] = seconds_since(t0);

    t0 = Clock::now();
    particles_ = g2p(velocity_, particles_, d);
    t.seconds[kStageG2P] = seconds_since(t0);

    t0 = Clock::now();
    particles_ = advect(particles_, dt, d, solid_);
    t.seconds[kStageAdvect] = seconds_since(t0);
  } catch (const SolverError& e) {
    throw SolverError("frame " + std::to_string(frame_) + ": " + e.what(), e.residual(), e.iterations());
  } catch (const Error& e) {
    throw Error("frame " + std::to_string(frame_) + ": " + e.what());
  }
  ++frame_;
  return t;
}

StageSummary summarize(std::vector<double> samples) {
  StageSummary s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  auto pct = [&](double q) {
    const auto k = static_cast<std::size_t>(q * static_cast<double>(samples.size() - 1) + 0.5);
    return samples[std::min(k, samples.size() - 1)];
  };
  s.p50 = pct(0.5);
  s.p95 = pct(0.95);
  s.max = samples.back();
  return s;
}

RunReport run(const Scene& scene, std::size_t frames, const SolverConfig& solver, const RunOutputs& outputs) {
  if (frames < 1) throw InvalidArgument("run: frames must be at least 1");
  Simulation sim(scene, solver);
  RunReport report;

  namespace fs = std::filesystem;
  if (!outputs.snapshot_dir.empty()) {
    std::error_code ec;
    fs::create_directories(outputs.snapshot_dir, ec);
    if (ec) throw IoError("cannot create " + outputs.snapshot_dir + ": " + ec.message());
    write_snapshot((fs::path(outputs.snapshot_dir) / snapshot_filename(0)).string(), sim.particles(), 0, 0.0);
  }
  std::unique_ptr<DatasetWriter> writer;
  if (!outputs.dataset_path.empty()) writer = std::make_unique<DatasetWriter>(outputs.dataset_path);

  ViscosityObserver observer;
  if (writer || outputs.observer) {
    observer = [&](const ViscosityStageView& v) {
      if (outputs.observer) outputs.observer(v);
      if (!writer) return;
      FrameRecord r;
      r.dims = v.dims;
      r.dt = v.params.dt;
      r.rho = v.params.rho;
      r.mu = v.params.mu;
      r.input = encode(v.before, v.vols, v.solid, outputs.dataset_with_coeff ? &v.params.mu : nullptr, v.dims);
      const MacVelocity2 delta = v.after - v.before;
      r.label_du = delta.u;
      r.label_dv = delta.v;
      writer->append(r);
    };
  }

  report.timings.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    report.timings.push_back(sim.step(observer));
    if (!outputs.snapshot_dir.empty()) {
      const auto frame = static_cast<std::uint32_t>(sim.frame());
      write_snapshot((fs::path(outputs.snapshot_dir) / snapshot_filename(frame)).string(), sim.particles(), frame,
                     sim.time());
    }
  }
  if (writer) {
    report.dataset_frames = writer->frames();
    writer->close();
  }

  report.frames = frames;
  report.particle_count = sim.particles().size();
  for (int s = 0; s < kStageCount; ++s) {
    std::vector<double> samples;
    samples.reserve(frames);
    for (const StageTimings& t : report.timings) samples.push_back(t.seconds[static_cast<std::size_t>(s)]);
    report.stages[static_cast<std::size_t>(s)] = summarize(std::move(samples));
  }
  std::vector<double> totals;
  for (const StageTimings& t : report.timings) totals.push_back(t.total());
  report.total = summarize(std::move(totals));
  return report;
}

}  // namespace viscid
