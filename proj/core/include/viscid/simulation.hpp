#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "viscid/apic.hpp"
#include "viscid/fluid_params.hpp"
#include "viscid/grid.hpp"
#include "viscid/pressure.hpp"
#include "viscid/scene.hpp"
#include "viscid/symgrid.hpp"
#include "viscid/unet.hpp"
#include "viscid/viscosity.hpp"

namespace viscid {

enum class SolverKind { Classic, Neural };

struct SolverConfig {
  SolverKind kind = SolverKind::Classic;
  std::shared_ptr<const WeightManifest> weights;  // required for Neural
  SolveOptions viscosity{};
  double pressure_tol = 1e-6;

  static SolverConfig classic() { return {}; }
  static SolverConfig neural(WeightManifest manifest);
  static SolverConfig neural_from_file(const std::string& path);
};

enum Stage : int { kStageP2G, kStageGravity, kStageViscosity, kStageProjection, kStageG2P, kStageAdvect, kStageCount };

const char* stage_name(int stage);

/// Wall-clock seconds per stage for one frame. Stage kStageP2G includes the
/// level set, volume and label construction.
struct StageTimings {
  std::array<double, kStageCount> seconds{};
  double total() const;
};

/// Everything the viscosity stage saw and produced on one frame.
struct ViscosityStageView {
  std::size_t frame;
  const GridDims& dims;
  const FluidParams& params;
  const SolidSdf2& solid;
  const VolumeFractions2& vols;
  const MacVelocity2& before;
  const MacVelocity2& after;
  std::size_t iterations;  // 0 on the neural path
};

using ViscosityObserver = std::function<void(const ViscosityStageView&)>;

class Simulation {
 public:
  Simulation(Scene scene, SolverConfig solver);
  /// Starts from an explicit particle set instead of seeding the scene.
  Simulation(Scene scene, SolverConfig solver, ParticleSet particles);

  /// Advances one frame. Solver failures are rethrown with the frame index
  /// in the message.
  StageTimings step(const ViscosityObserver& observer = {});

  const Scene& scene() const noexcept { return scene_; }
  const ParticleSet& particles() const noexcept { return particles_; }
  const SolidSdf2& solid() const noexcept { return solid_; }
  const FluidParams& params() const noexcept { return params_; }
  /// Grid velocity after the most recent projection.
  const MacVelocity2& grid_velocity() const noexcept { return velocity_; }
  std::size_t frame() const noexcept { return frame_; }
  double time() const noexcept { return static_cast<double>(frame_) * scene_.dt; }

 private:
  MacVelocity2 neural_viscosity(const MacVelocity2& vel, const VolumeFractions2& vols) const;

  Scene scene_;
  SolverConfig solver_;
  FluidParams params_;
  SolidSdf2 solid_;
  ParticleSet particles_;
  MacVelocity2 velocity_;
  std::size_t frame_ = 0;
};

struct RunOutputs {
  std::string snapshot_dir;   // one file per frame when non-empty
  std::string dataset_path;   // training records when non-empty
  bool dataset_with_coeff = false;
  ViscosityObserver observer;
};

struct StageSummary {
  double mean = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
};

struct RunReport {
  std::size_t frames = 0;
  std::vector<StageTimings> timings;
  std::array<StageSummary, kStageCount> stages{};
  StageSummary total{};
  std::size_t dataset_frames = 0;
  std::size_t particle_count = 0;
};

StageSummary summarize(std::vector<double> samples);

/// Runs `frames` steps from the scene's initial state, emitting the
/// requested outputs after every frame. Snapshots of the initial state are
/// written as frame 0.
RunReport run(const Scene& scene, std::size_t frames, const SolverConfig& solver, const RunOutputs& outputs = {});

}  // namespace viscid
