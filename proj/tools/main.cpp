#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "viscid/error.hpp"

int main(int argc, char** argv) {
  using namespace viscid::cli;

  CLI::App app{"viscid: grid fluid simulation with implicit and learned viscosity"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a scene and write per-frame particle snapshots");
  simulate_cmd->add_option("--scene", sim.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--frames", sim.frames, "Number of frames")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--solver", sim.solver, "classic or neural")->check(CLI::IsMember({"classic", "neural"}));
  simulate_cmd->add_option("--weights", sim.weights, "Weight file for --solver neural");
  simulate_cmd->add_option("--out", sim.out, "Snapshot directory")->required();

  DatasetArgs ds;
  auto* dataset_cmd = app.add_subcommand("gen-dataset", "Record classic-solver training frames");
  dataset_cmd->add_option("--scene", ds.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  dataset_cmd->add_option("--frames", ds.frames, "Number of frames")->required()->check(CLI::PositiveNumber);
  dataset_cmd->add_option("--out", ds.out, "Dataset file")->required();
  dataset_cmd->add_flag("--with-mu", ds.with_mu, "Add the viscosity coefficient channel");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Score a network against dataset labels");
  eval_cmd->add_option("--dataset", ev.dataset, "Dataset file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--weights", ev.weights, "Weight file")->required()->check(CLI::ExistingFile);

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "Per-stage timing statistics");
  bench_cmd->add_option("--scene", bn.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--solver", bn.solver, "classic or neural")->check(CLI::IsMember({"classic", "neural"}));
  bench_cmd->add_option("--weights", bn.weights, "Weight file for --solver neural");
  bench_cmd->add_option("--frames", bn.frames, "Number of frames")->required()->check(CLI::PositiveNumber);

  InitWeightsArgs iw;
  auto* init_cmd = app.add_subcommand("init-weights", "Write a zero or seeded weight file");
  init_cmd->add_option("--depth", iw.depth, "Pooling depth (2 or 4)");
  init_cmd->add_option("--in-channels", iw.in_channels, "Input channels (6 or 7)");
  init_cmd->add_option("--seed", iw.seed, "Initialization seed");
  init_cmd->add_flag("--zero", iw.zero, "All weights and biases zero");
  init_cmd->add_option("--out", iw.out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate_cmd) return simulate(sim, std::cout);
    if (*dataset_cmd) return gen_dataset(ds, std::cout);
    if (*eval_cmd) return eval(ev, std::cout);
    if (*bench_cmd) return bench(bn, std::cout);
    if (*init_cmd) return init_weights(iw, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
