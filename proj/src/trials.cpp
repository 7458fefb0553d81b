#include "ghzlab/trials.hpp"

#include <stdexcept>

#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"

namespace ghzlab::sim {

const char* schedule_mode_name(ScheduleMode m) {
  switch (m) {
    case ScheduleMode::Fixed: return "fixed";
    case ScheduleMode::Alternating: return "alternating";
    case ScheduleMode::PerTrialRandom: return "per-trial-random";
  }
  return "?";
}

const char* method_name(Method m) {
  return m == Method::MonteCarlo ? "mc" : "quadrature";
}

XYSettings ScheduleSpec::at(std::uint64_t trial) const {
  if (settings.empty())
    throw std::invalid_argument("ScheduleSpec: empty settings list");
  switch (mode) {
    case ScheduleMode::Fixed:
      return settings.front();
    case ScheduleMode::Alternating:
      return settings[trial % settings.size()];
    case ScheduleMode::PerTrialRandom: {
      const std::uint64_t w = rng::counter_word(
          rng::stream_offset(seed, rng::Stream::Schedule), trial);
      return settings[w % settings.size()];
    }
  }
  throw std::invalid_argument("ScheduleSpec: bad mode");
}

void for_each_trial(const ScheduleSpec& schedule, std::uint64_t n_trials,
                    double phi, std::uint64_t seed,
                    const std::function<void(const TrialRecord&)>& fn) {
  const std::uint64_t off_u = rng::stream_offset(seed, rng::Stream::HiddenU);
  const std::uint64_t off_v = rng::stream_offset(seed, rng::Stream::HiddenV);
  const bool fixed = schedule.mode == ScheduleMode::Fixed;
  SettingTriple fixed_settings{};
  double fixed_delta = 0.0;
  if (fixed) {
    const XYSettings s = schedule.at(0);
    fixed_settings = {s.alpha, s.beta, s.gamma, phi};
    fixed_delta = fixed_settings.effective_delta();
  }

  TrialRecord rec;
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    double delta_eff;
    if (fixed) {
      rec.settings = fixed_settings;
      delta_eff = fixed_delta;
    } else {
      const XYSettings s = schedule.at(i);
      rec.settings = {s.alpha, s.beta, s.gamma, phi};
      delta_eff = rec.settings.effective_delta();
    }
    const double u = rng::to_unit(rng::counter_word(off_u, i));
    const double v = rng::to_unit(rng::counter_word(off_v, i));
    const lhv::HiddenConfig h = lhv::sample_hidden(u, v);
    rec.index = i;
    rec.omega = h.omega;
    rec.eta = h.eta;
    rec.s_a = static_cast<std::int8_t>(lhv::response(h.omega, h.eta));
    rec.s_b = static_cast<std::int8_t>(
        lhv::response(lhv::omega_B_of(h.omega, h.eta, delta_eff), h.eta));
    rec.s_c = static_cast<std::int8_t>(lhv::outcome_C(h.eta));
    rec.region = lhv::classify_region_signed(h.omega, delta_eff);
    fn(rec);
  }
}

std::vector<TrialRecord> run_trials(const ScheduleSpec& schedule,
                                    std::uint64_t n_trials, double phi,
                                    std::uint64_t seed) {
  std::vector<TrialRecord> out;
  out.reserve(n_trials);
  for_each_trial(schedule, n_trials, phi, seed,
                 [&](const TrialRecord& r) { out.push_back(r); });
  return out;
}

kernels::TrialCounts counts_from_records(const std::vector<TrialRecord>& recs) {
  kernels::TrialCounts c;
  for (const auto& r : recs) {
    const int a = r.s_a, b = r.s_b, s = r.s_c;
    c.trials += 1;
    c.eta_pos += r.eta > 0.0 ? 1 : 0;
    c.sum_a += a;
    c.sum_b += b;
    c.sum_c += s;
    c.sum_ab += a * b;
    c.sum_bc += b * s;
    c.sum_ca += s * a;
    c.sum_abc += a * b * s;
    c.sum_ab_eta_pos += r.eta > 0.0 ? a * b : 0;
    c.region[static_cast<int>(r.region)] += 1;
  }
  return c;
}

CorrelatorReport report_from_counts(const kernels::TrialCounts& c) {
  CorrelatorReport r;
  r.method = Method::MonteCarlo;
  r.n = c.trials;
  const auto put = [&](std::int64_t sum, double& e, double& se) {
    const num::MeanStderr ms = num::pm_mean_stderr(sum, c.trials);
    e = ms.mean;
    se = ms.stderr_;
  };
  put(c.sum_a, r.e_a, r.se_a);
  put(c.sum_b, r.e_b, r.se_b);
  put(c.sum_c, r.e_c, r.se_c);
  put(c.sum_ab, r.e_ab, r.se_ab);
  put(c.sum_bc, r.e_bc, r.se_bc);
  put(c.sum_ca, r.e_ca, r.se_ca);
  put(c.sum_abc, r.e_abc, r.se_abc);
  if (c.trials > 0) {
    const double n = static_cast<double>(c.trials);
    for (int k = 0; k < 4; ++k)
      r.region_frac[k] = static_cast<double>(c.region[k]) / n;
    r.eta_pos_frac = static_cast<double>(c.eta_pos) / n;
    if (c.eta_pos > 0)
      r.e_ab_eta_pos = static_cast<double>(c.sum_ab_eta_pos) /
                       static_cast<double>(c.eta_pos);
  }
  return r;
}

CorrelatorReport estimate_correlators(const std::vector<TrialRecord>& recs) {
  return report_from_counts(counts_from_records(recs));
}

CorrelatorReport mc_correlators(double delta_eff, std::uint64_t n_trials,
                                std::uint64_t seed, kernels::SimdMode mode,
                                int n_workers) {
  return report_from_counts(
      kernels::accumulate_trials(seed, 0, n_trials, delta_eff, mode, n_workers));
}

}  // namespace ghzlab::sim
