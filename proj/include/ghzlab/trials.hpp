#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ghzlab/angle.hpp"
#include "ghzlab/kernels.hpp"
#include "ghzlab/lhv.hpp"

namespace ghzlab::sim {

/// Planar analyzer angles of the three stations plus the state phase. Only
/// their canonical sum enters any outcome.
struct SettingTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double phi = 0.0;

  double effective_delta() const {
    return canonical_angle(((alpha + beta) + gamma) + phi);
  }
};

struct XYSettings {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

enum class ScheduleMode { Fixed, Alternating, PerTrialRandom };
const char* schedule_mode_name(ScheduleMode m);

/// Which settings each trial uses. The schedule seed drives only the
/// per-trial-random choice; the hidden-config stream never sees it.
struct ScheduleSpec {
  ScheduleMode mode = ScheduleMode::Fixed;
  std::vector<XYSettings> settings{XYSettings{}};
  std::uint64_t seed = 0;

  XYSettings at(std::uint64_t trial) const;  // throws on empty settings
};

struct TrialRecord {
  std::uint64_t index = 0;
  double omega = 0.0;
  double eta = 0.0;
  SettingTriple settings;
  std::int8_t s_a = 0;
  std::int8_t s_b = 0;
  std::int8_t s_c = 0;
  lhv::RegionTag region = lhv::RegionTag::PP;
};

/// Stream the trials of hidden stream `seed` under a schedule without
/// materializing them.
void for_each_trial(const ScheduleSpec& schedule, std::uint64_t n_trials,
                    double phi, std::uint64_t seed,
                    const std::function<void(const TrialRecord&)>& fn);

std::vector<TrialRecord> run_trials(const ScheduleSpec& schedule,
                                    std::uint64_t n_trials, double phi,
                                    std::uint64_t seed);

enum class Method { MonteCarlo, Quadrature };
const char* method_name(Method m);

/// Singles, pairs, and the triple correlator with standard errors
/// (all zero when produced by quadrature).
struct CorrelatorReport {
  Method method = Method::MonteCarlo;
  std::uint64_t n = 0;
  double e_a = 0.0, e_b = 0.0, e_c = 0.0;
  double e_ab = 0.0, e_bc = 0.0, e_ca = 0.0;
  double e_abc = 0.0;
  double se_a = 0.0, se_b = 0.0, se_c = 0.0;
  double se_ab = 0.0, se_bc = 0.0, se_ca = 0.0;
  double se_abc = 0.0;
  double region_frac[4] = {0.0, 0.0, 0.0, 0.0};
  double eta_pos_frac = 0.0;
  double e_ab_eta_pos = 0.0;  // pair correlator conditioned on eta > 0

  bool operator==(const CorrelatorReport&) const = default;
};

kernels::TrialCounts counts_from_records(const std::vector<TrialRecord>& recs);
CorrelatorReport report_from_counts(const kernels::TrialCounts& c);
CorrelatorReport estimate_correlators(const std::vector<TrialRecord>& recs);

/// Kernel fast path: correlators at one fixed canonical effective delta.
CorrelatorReport mc_correlators(double delta_eff, std::uint64_t n_trials,
                                std::uint64_t seed,
                                kernels::SimdMode mode = kernels::SimdMode::Auto,
                                int n_workers = 1);

}  // namespace ghzlab::sim
