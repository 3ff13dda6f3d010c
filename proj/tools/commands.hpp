#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace viscid::cli {

/// Thrown for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError {
  std::string message;
};

struct SimulateArgs {
  std::string scene;
  std::size_t frames = 0;
  std::string solver = "classic";
  std::string weights;
  std::string out;
};

struct DatasetArgs {
  std::string scene;
  std::size_t frames = 0;
  std::string out;
  bool with_mu = false;
};

struct EvalArgs {
  std::string dataset;
  std::string weights;
};

struct BenchArgs {
  std::string scene;
  std::string solver = "classic";
  std::string weights;
  std::size_t frames = 0;
};

struct InitWeightsArgs {
  int depth = 4;
  int in_channels = 6;
  std::uint64_t seed = 0;
  bool zero = false;
  std::string out;
};

int simulate(const SimulateArgs& a, std::ostream& out);
int gen_dataset(const DatasetArgs& a, std::ostream& out);
int eval(const EvalArgs& a, std::ostream& out);
int bench(const BenchArgs& a, std::ostream& out);
int init_weights(const InitWeightsArgs& a, std::ostream& out);

}  // namespace viscid::cli
