#include "ghzlab/reports.hpp"

#include <cmath>

#include "ghzlab/quadchecks.hpp"
#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"

namespace ghzlab::sim {

StarCheck star_correlation_check(double delta_eff, std::uint64_t n_trials,
                                 std::uint64_t seed) {
  StarCheck out;
  out.delta_eff = delta_eff;
  out.n = n_trials;
  std::int64_t sum = 0;
  const std::uint64_t off_u = rng::stream_offset(seed, rng::Stream::HiddenU);
  const std::uint64_t off_v = rng::stream_offset(seed, rng::Stream::HiddenV);
  for (std::uint64_t i = 0; i < n_trials; ++i) {
    const double u = rng::to_unit(rng::counter_word(off_u, i));
    const double v = rng::to_unit(rng::counter_word(off_v, i));
    const lhv::HiddenConfig h = lhv::sample_hidden(u, v);
    const double omega_b = lhv::omega_B_of(h.omega, h.eta, delta_eff);
    const int s_a = lhv::response(h.omega, h.eta);
    const int s_b = lhv::response(omega_b, h.eta);
    const lhv::RegionTag region =
        lhv::classify_region_signed(h.omega, delta_eff);
    const lhv::StarConfig star =
        lhv::star_remap(h.omega, omega_b, h.eta, region);
    const int s_c_star = star.eta > 0.0 ? +1 : -1;
    const int product = s_a * s_b * s_c_star;
    sum += product;
    if (product != +1) out.violations += 1;
  }
  out.mean_product =
      n_trials == 0 ? 0.0
                    : static_cast<double>(sum) / static_cast<double>(n_trials);
  return out;
}

ParadoxReport ghz_paradox_report(double phi, std::uint64_t n_per_setting,
                                 std::uint64_t seed, kernels::SimdMode mode) {
  ParadoxReport rep;
  rep.phi = phi;
  rep.n_per_setting = n_per_setting;
  rep.seed = seed;
  const double h = kPi / 2.0;
  const std::array<std::pair<const char*, XYSettings>, 4> plan{{
      {"XXX", {0.0, 0.0, 0.0}},
      {"XYY", {0.0, h, h}},
      {"YXY", {h, 0.0, h}},
      {"YYX", {h, h, 0.0}},
  }};
  const qm::State state = qm::ghz_state(3, phi);
  for (int k = 0; k < 4; ++k) {
    ParadoxLine& line = rep.lines[k];
    line.label = plan[k].first;
    line.settings = plan[k].second;
    const SettingTriple st{line.settings.alpha, line.settings.beta,
                           line.settings.gamma, phi};
    line.delta_eff = st.effective_delta();
    const kernels::TrialCounts counts =
        kernels::accumulate_trials(seed, 0, n_per_setting, line.delta_eff, mode);
    const num::MeanStderr ms = num::pm_mean_stderr(counts.sum_abc, counts.trials);
    line.product_mean = ms.mean;
    line.product_stderr = ms.stderr_;
    const std::int64_t n = static_cast<std::int64_t>(counts.trials);
    line.constant = counts.sum_abc == n || counts.sum_abc == -n;
    line.constant_value = line.constant ? (counts.sum_abc > 0 ? +1 : -1) : 0;
    line.oracle = qm::expectation(
        state, {qm::SiteObservable::xy(line.settings.alpha),
                qm::SiteObservable::xy(line.settings.beta),
                qm::SiteObservable::xy(line.settings.gamma)});
  }
  rep.mermin = rep.lines[0].product_mean - rep.lines[1].product_mean -
               rep.lines[2].product_mean - rep.lines[3].product_mean;
  rep.mermin_oracle = rep.lines[0].oracle - rep.lines[1].oracle -
                      rep.lines[2].oracle - rep.lines[3].oracle;
  rep.classical_bound_violated = std::fabs(rep.mermin) > 2.0;
  return rep;
}

CompareReport compare_with_oracle(const std::vector<double>& axis_values,
                                  double phi, Method method,
                                  std::uint64_t n_trials, std::uint64_t seed,
                                  kernels::SimdMode mode) {
  CompareReport rep;
  rep.method = method;
  rep.phi = phi;
  rep.n_trials = n_trials;
  rep.seed = seed;
  const qm::State state = qm::ghz_state(3, phi);
  for (double a : axis_values)
    for (double b : axis_values)
      for (double g : axis_values) {
        ComparePoint pt;
        pt.alpha = a;
        pt.beta = b;
        pt.gamma = g;
        pt.delta_eff = SettingTriple{a, b, g, phi}.effective_delta();
        pt.model = method == Method::Quadrature
                       ? quadrature_triple_correlation(pt.delta_eff)
                       : mc_correlators(pt.delta_eff, n_trials, seed, mode).e_abc;
        pt.oracle = qm::expectation(state, {qm::SiteObservable::xy(a),
                                            qm::SiteObservable::xy(b),
                                            qm::SiteObservable::xy(g)});
        pt.diff = std::fabs(pt.model - pt.oracle);
        rep.max_abs_diff = std::max(rep.max_abs_diff, pt.diff);
        rep.points.push_back(pt);
      }

  // Joint outcome distribution at one pinned setting.
  JointComparison& j = rep.joint;
  j.settings = {0.0, kPi / 2.0, kPi / 2.0};
  j.n = n_trials;
  ScheduleSpec sched;
  sched.settings = {j.settings};
  std::array<std::uint64_t, 8> hist{};
  for_each_trial(sched, n_trials, phi, seed, [&](const TrialRecord& r) {
    const int idx = ((r.s_a > 0) << 2) | ((r.s_b > 0) << 1) | (r.s_c > 0);
    hist[idx] += 1;
  });
  const qm::OutcomeDistribution born = qm::joint_distribution(
      state, {qm::SiteObservable::xy(j.settings.alpha),
              qm::SiteObservable::xy(j.settings.beta),
              qm::SiteObservable::xy(j.settings.gamma)});
  double tv = 0.0;
  for (int t = 0; t < 8; ++t) {
    j.model_freq[t] = n_trials == 0 ? 0.0
                                    : static_cast<double>(hist[t]) /
                                          static_cast<double>(n_trials);
    j.born[t] = born.prob[t];
    tv += std::fabs(j.model_freq[t] - j.born[t]);
  }
  j.total_variation = 0.5 * tv;
  return rep;
}

FreewillAudit freewill_audit(const ScheduleSpec& first,
                             const ScheduleSpec& second, std::uint64_t n,
                             double phi, std::uint64_t seed) {
  FreewillAudit out;
  out.n = n;
  out.seed = seed;

  // 1) Hidden stream is a function of (seed, index) alone: the two schedules
  //    must observe the very same configurations.
  const std::uint64_t probe = std::min<std::uint64_t>(n, 10000);
  const std::vector<TrialRecord> run1 = run_trials(first, probe, phi, seed);
  const std::vector<TrialRecord> run2 = run_trials(second, probe, phi, seed);
  out.identical_hidden_streams = true;
  for (std::uint64_t i = 0; i < probe; ++i) {
    if (run1[i].omega != run2[i].omega || run1[i].eta != run2[i].eta) {
      out.identical_hidden_streams = false;
      break;
    }
  }

  // 2) Distributional stability across disjoint counter ranges (same-seed
  //    streams are identical by construction, so ranges stand in for
  //    independent repetitions).
  const std::uint64_t off = rng::stream_offset(seed, rng::Stream::HiddenU);
  std::vector<double> xs(n), ys(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    xs[i] = lhv::omega_from_unit(rng::to_unit(rng::counter_word(off, i)));
    ys[i] = lhv::omega_from_unit(rng::to_unit(rng::counter_word(off, n + i)));
  }
  out.two_sample_ks = num::ks_two_sample(xs, ys);
  out.two_sample_p = num::kolmogorov_q(
      out.two_sample_ks * std::sqrt(static_cast<double>(n) / 2.0));

  // 3) A chart change must leave the omega distribution invariant.
  const XYSettings rep = second.at(0);
  out.chart_delta =
      SettingTriple{rep.alpha, rep.beta, rep.gamma, phi}.effective_delta();
  if (out.chart_delta == 0.0) out.chart_delta = canonical_angle(kPi / 3.0);
  out.chart_ks = ks_transformed(out.chart_delta, n, seed);
  return out;
}

}  // namespace ghzlab::sim
