#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghzlab/kernels.hpp"

namespace ghzlab::sim {

struct VerifyOptions {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  int delta_grid = 64;  // deltas for the grid-style invariants
  int ks_deltas = 8;    // deltas that get a full KS pass (costly: sorts)
  kernels::SimdMode simd = kernels::SimdMode::Auto;
  // Test fixture: deliberately damage one ingredient to prove the checks
  // can fail. "" (off), "transform", "response".
  std::string corrupt;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured figure of merit
  double threshold = 0.0;  // pass iff value <= threshold
  std::string note;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);
bool all_pass(const std::vector<CheckResult>& results);

}  // namespace ghzlab::sim
