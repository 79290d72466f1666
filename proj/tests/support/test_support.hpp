#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "climsim/calibration.hpp"
#include "climsim/engine.hpp"
#include "climsim/scenario.hpp"

namespace climsim::testing {

inline std::filesystem::path source_dir() { return CLIMSIM_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }

inline RunResult run_preset(const std::string& id) { return run_simulation(load_preset(id, data_dir())); }

inline double terminal(const RunResult& r, const std::string& id) { return r.series(id).values.back(); }

/// Seeded generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace climsim::testing
