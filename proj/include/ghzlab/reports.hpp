#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ghzlab/qm.hpp"
#include "ghzlab/trials.hpp"

namespace ghzlab::sim {

/// Per-trial exactness of the dual-population reflection: after star_remap
/// the A.B product must equal the sign of eta* on every single trial.
struct StarCheck {
  double delta_eff = 0.0;
  std::uint64_t n = 0;
  std::uint64_t violations = 0;
  double mean_product = 0.0;  // of s_a * s_b * sign(eta*); +1 when exact
  bool all_plus_one() const { return violations == 0; }
};
StarCheck star_correlation_check(double delta_eff, std::uint64_t n_trials,
                                 std::uint64_t seed);

/// One of the four planar setting triples of the parity argument.
struct ParadoxLine {
  std::string label;  // "XXX", "XYY", "YXY", "YYX"
  XYSettings settings;
  double delta_eff = 0.0;
  double product_mean = 0.0;
  double product_stderr = 0.0;
  bool constant = false;  // same product on every trial
  int constant_value = 0;
  double oracle = 0.0;  // quantum expectation of the same product
};

/// The four runs, the Mermin combination, and whether the classical
/// single-outcome bound |M| <= 2 is violated.
struct ParadoxReport {
  double phi = 0.0;
  std::uint64_t n_per_setting = 0;
  std::uint64_t seed = 0;
  std::array<ParadoxLine, 4> lines;
  double mermin = 0.0;         // E_XXX - E_XYY - E_YXY - E_YYX
  double mermin_oracle = 0.0;
  bool classical_bound_violated = false;
};
ParadoxReport ghz_paradox_report(double phi, std::uint64_t n_per_setting,
                                 std::uint64_t seed,
                                 kernels::SimdMode mode = kernels::SimdMode::Auto);

struct ComparePoint {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  double delta_eff = 0.0;
  double model = 0.0;   // triple correlator from the hidden-variable model
  double oracle = 0.0;  // quantum expectation
  double diff = 0.0;    // |model - oracle|
};

/// Joint +-1 outcome distribution, model vs Born rule, at one setting.
/// Outcome index: bit 2 = (s_a == +1), bit 1 = (s_b == +1), bit 0 = (s_c == +1).
struct JointComparison {
  XYSettings settings;
  std::uint64_t n = 0;
  std::array<double, 8> model_freq{};
  std::array<double, 8> born{};
  double total_variation = 0.0;
};

struct CompareReport {
  Method method = Method::Quadrature;
  double phi = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  std::vector<ComparePoint> points;
  double max_abs_diff = 0.0;
  JointComparison joint;
};

/// Model vs oracle on the grid axis_values^3 (each of alpha, beta, gamma runs
/// over axis_values), plus a joint-distribution comparison at (0, pi/2, pi/2).
CompareReport compare_with_oracle(const std::vector<double>& axis_values,
                                  double phi, Method method,
                                  std::uint64_t n_trials, std::uint64_t seed,
                                  kernels::SimdMode mode = kernels::SimdMode::Auto);

/// Setting independence of the hidden stream: two schedules, same hidden
/// seed, must see identical configurations; distribution must not react to
/// the schedule; chart changes must not reshape the omega density.
struct FreewillAudit {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  bool identical_hidden_streams = false;
  double two_sample_ks = 0.0;  // disjoint counter ranges of the same stream
  double two_sample_p = 0.0;   // asymptotic Kolmogorov tail
  double chart_ks = 0.0;       // transformed sample vs the model CDF
  double chart_delta = 0.0;
};
FreewillAudit freewill_audit(const ScheduleSpec& first,
                             const ScheduleSpec& second, std::uint64_t n,
                             double phi, std::uint64_t seed);

}  // namespace ghzlab::sim
