#include "ghzlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ghzlab/qm.hpp"
#include "ghzlab/quadchecks.hpp"
#include "ghzlab/reports.hpp"
#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"
#include "ghzlab/trials.hpp"

namespace ghzlab::sim {

namespace {

// Fixture mutations for the negative path: each breaks exactly the physics
// its named checks guard, leaving everything else intact.
TransformFn corrupted_transform() {
  return [](double w, double d) {
    const double mapped = lhv::transform_L(w, d);
    if (d > 0.0 && w > 0.0 && w < d) return 0.9 * mapped;
    return mapped;
  };
}

// A symmetric change (both stations) of the eta flip would cancel out of
// every correlator, so the damage is a stuck patch: outcomes ignore eta on
// part of the circle, which biases the singles by (1 - cos 1/2)/4.
ResponseFn corrupted_response() {
  return [](double w, double e) {
    if (w > 0.0 && w < 0.5) return +1;
    return lhv::response(w, e);
  };
}

std::vector<double> canonical_grid(int count) {
  std::vector<double> ds(count);
  for (int k = 0; k < count; ++k)
    ds[k] = canonical_angle(-kPi + k * kTwoPi / count);
  return ds;
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

std::vector<CheckResult> run_verify(const VerifyOptions& opt) {
  const bool bad_transform = opt.corrupt == "transform";
  const bool bad_response = opt.corrupt == "response";
  if (!opt.corrupt.empty() && !bad_transform && !bad_response)
    throw std::invalid_argument("verify: unknown corrupt target '" +
                                opt.corrupt + "'");
  const TransformFn tf =
      bad_transform ? corrupted_transform() : default_transform();
  const ResponseFn rf =
      bad_response ? corrupted_response() : default_response();
  const std::vector<double> ds = canonical_grid(opt.delta_grid);

  std::vector<CheckResult> out;
  const auto add = [&](std::string name, double value, double threshold,
                       std::string note = "") {
    out.push_back({std::move(name), value <= threshold, value, threshold,
                   std::move(note)});
  };

  {  // total hidden measure is 1
    const double v = std::fabs(density_normalization() - 1.0);
    add("density-normalization", v, 1e-10, "2d quadrature over the torus");
  }

  {  // g(-w) = g(w+pi) = g(w) pointwise
    double worst = 0.0;
    const int n = 20001;
    for (int k = 0; k < n; ++k) {
      const double w = canonical_angle(-kPi + (k + 0.5) * kTwoPi / n);
      const double g = lhv::omega_density(w);
      worst = std::max(
          worst, std::fabs(lhv::omega_density(negate_angle(w)) - g));
      worst = std::max(
          worst, std::fabs(lhv::omega_density(canonical_angle(w + kPi)) - g));
    }
    add("density-symmetry", worst, 5e-16, "g(-w), g(w+pi) vs g(w)");
  }

  {  // F(omega(u)) = u
    double worst = 0.0;
    const int n = 20001;
    for (int k = 0; k < n; ++k) {
      const double u = (k + 0.5) / n;
      worst =
          std::max(worst, std::fabs(lhv::omega_cdf(lhv::omega_from_unit(u)) - u));
    }
    add("sampler-inverse-cdf", worst, 5e-15, "");
  }

  // KS gate: 0.002 at the default million trials, the matching quantile
  // (99.9th of the Kolmogorov law) when fewer trials are requested.
  const double ks_gate = std::max(
      0.002, 1.95 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(
                 opt.trials, 1))));

  {  // empirical sampler distribution
    add("sampler-ks", ks_sampler(opt.trials, opt.seed), ks_gate,
        "n=" + std::to_string(opt.trials));
  }

  {  // transform = rotation in the cumulative-measure coordinate
    double worst = 0.0;
    for (double d : ds)
      worst = std::max(worst, rotation_identity_max_error(d, 4096, tf));
    add("transform-rotation-identity", worst, 1e-12,
        std::to_string(ds.size()) + " deltas x 4096 points");
  }

  {  // pointwise measure preservation, away from branch ends
    double worst = 0.0;
    for (double d : ds)
      worst = std::max(worst,
                       jacobian_invariance_max_error(d, 2048, 0.05, 1e-5, tf));
    add("measure-invariance-jacobian", worst, 1e-6,
        std::to_string(ds.size()) + " deltas");
  }

  {  // distributional measure preservation
    double worst = 0.0;
    for (int j = 0; j < opt.ks_deltas; ++j) {
      const double d =
          canonical_angle(-kPi + (j + 0.37) * kTwoPi / opt.ks_deltas);
      worst = std::max(worst, ks_transformed(d, opt.trials, opt.seed, tf));
    }
    add("measure-invariance-ks", worst, ks_gate,
        std::to_string(opt.ks_deltas) + " deltas, n=" +
            std::to_string(opt.trials));
  }

  {  // region weights vs closed forms
    double worst = 0.0;
    for (int j = 0; j <= opt.delta_grid; ++j) {
      const double d = j * kPi / opt.delta_grid;
      const PartitionMeasures pm = partition_measures(d);
      const double plus = (1.0 + std::cos(d)) / 4.0;
      const double minus = (1.0 - std::cos(d)) / 4.0;
      worst = std::max({worst, std::fabs(pm.pp - plus), std::fabs(pm.mm - plus),
                        std::fabs(pm.pm - minus), std::fabs(pm.mp - minus)});
    }
    for (double d : ds) {
      const PartitionMeasures pm = partition_measures_signed(d);
      const double plus = (1.0 + std::cos(d)) / 4.0;
      const double minus = (1.0 - std::cos(d)) / 4.0;
      worst = std::max({worst, std::fabs(pm.pp - plus), std::fabs(pm.mm - plus),
                        std::fabs(pm.pm - minus), std::fabs(pm.mp - minus),
                        std::fabs(pm.pp + pm.pm + pm.mp + pm.mm - 1.0)});
    }
    add("partition-measures", worst, 1e-9, "strict and signed conventions");
  }

  {  // conditional pair structure and null marginals
    double worst = 0.0;
    for (double d : ds) {
      const QuadCorrelators q = quadrature_correlators(d, 32, rf);
      const double cd = std::cos(d);
      worst = std::max({worst, std::fabs(q.ab_eta_pos - cd),
                        std::fabs(q.ab_eta_nonpos + cd), std::fabs(q.e_ab),
                        std::fabs(q.e_a), std::fabs(q.e_b), std::fabs(q.e_c),
                        std::fabs(q.e_bc), std::fabs(q.e_ca)});
    }
    add("conditional-correlations", worst, 1e-9,
        "+-cos(delta) split, null singles/pairs");
  }

  {  // triple correlator law by quadrature
    double worst = 0.0;
    const std::vector<double> grid = canonical_grid(128);
    for (double d : grid) {
      const QuadCorrelators q = quadrature_correlators(d, 32, rf);
      worst = std::max(worst, std::fabs(q.e_abc - std::cos(d)));
    }
    add("triple-correlation-law", worst, 1e-9, "128 deltas, 32-node rule");
  }

  {  // Monte Carlo estimates sit on the quadrature values
    double worst_ratio = 0.0;
    const double floor_se =
        1.0 / std::sqrt(static_cast<double>(std::max<std::uint64_t>(opt.trials, 1)));
    for (const double d : {0.0, kPi / 3.0, -kPi / 2.0, 2.0}) {
      const CorrelatorReport r =
          mc_correlators(canonical_angle(d), opt.trials, opt.seed, opt.simd);
      const double allow_abc = 5.0 * std::max(r.se_abc, floor_se);
      worst_ratio = std::max(
          worst_ratio, std::fabs(r.e_abc - std::cos(d)) / allow_abc);
      const double allow = 5.0 * floor_se;
      for (const double v : {r.e_a, r.e_b, r.e_c, r.e_ab, r.e_bc, r.e_ca})
        worst_ratio = std::max(worst_ratio, std::fabs(v) / allow);
    }
    add("mc-consistency", worst_ratio, 1.0,
        "max |error| / (5 sigma), 4 deltas");
  }

  {  // per-trial exactness at the parity deltas
    std::uint64_t violations = 0;
    for (const double target : {0.0, -kPi}) {
      ScheduleSpec sched;
      sched.settings = {target == 0.0 ? XYSettings{0.0, 0.0, 0.0}
                                      : XYSettings{kPi / 2.0, kPi / 2.0, 0.0}};
      const int expected = target == 0.0 ? +1 : -1;
      for_each_trial(sched, opt.trials, 0.0, opt.seed,
                     [&](const TrialRecord& r) {
                       if (r.s_a * r.s_b * r.s_c != expected) ++violations;
                     });
    }
    add("per-trial-exactness", static_cast<double>(violations), 0.0,
        "delta 0 and -pi, " + std::to_string(opt.trials) + " trials each");
  }

  {  // product equals region parity at generic deltas
    std::uint64_t violations = 0;
    const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 200000);
    for (const double d : {kPi / 3.0, -kPi / 3.0, 2.5, -2.9, 0.7}) {
      ScheduleSpec sched;
      sched.settings = {XYSettings{canonical_angle(d), 0.0, 0.0}};
      for_each_trial(sched, n, 0.0, opt.seed, [&](const TrialRecord& r) {
        if (r.s_a * r.s_b * r.s_c != lhv::region_parity(r.region))
          ++violations;
      });
    }
    add("product-region-parity", static_cast<double>(violations), 0.0,
        "5 deltas, " + std::to_string(n) + " trials each");
  }

  {  // star remap: exact anti/correlated swap per trial
    std::uint64_t violations = 0;
    const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 100000);
    for (const double d : {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
      const StarCheck sc = star_correlation_check(canonical_angle(d), n, opt.seed);
      violations += sc.violations;
    }
    add("star-remap-exactness", static_cast<double>(violations), 0.0,
        "4 deltas, " + std::to_string(n) + " trials each");
  }

  {  // star remap preserves the density and the response sign
    double worst = 0.0;
    std::uint64_t violations = 0;
    const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 100000);
    const std::uint64_t off_u = rng::stream_offset(opt.seed, rng::Stream::HiddenU);
    const std::uint64_t off_v = rng::stream_offset(opt.seed, rng::Stream::HiddenV);
    const std::uint64_t off_d = rng::stream_offset(opt.seed, rng::Stream::Schedule);
    for (std::uint64_t i = 0; i < n; ++i) {
      const double u = rng::to_unit(rng::counter_word(off_u, i));
      const double v = rng::to_unit(rng::counter_word(off_v, i));
      const double d = kTwoPi * rng::to_unit(rng::counter_word(off_d, i)) - kPi;
      const lhv::HiddenConfig h = lhv::sample_hidden(u, v);
      const double wb = lhv::omega_B_of(h.omega, h.eta, d);
      const lhv::RegionTag region = lhv::classify_region_signed(h.omega, d);
      const lhv::StarConfig star = lhv::star_remap(h.omega, wb, h.eta, region);
      worst = std::max(worst, std::fabs(lhv::omega_density(star.omega_a) -
                                        lhv::omega_density(h.omega)));
      worst = std::max(worst, std::fabs(lhv::omega_density(star.omega_b) -
                                        lhv::omega_density(wb)));
      if (lhv::response(star.omega_a, star.eta) != lhv::response(h.omega, h.eta))
        ++violations;
    }
    add("star-remap-density", worst, 1e-15, std::to_string(n) + " configs");
    add("star-response-invariance", static_cast<double>(violations), 0.0,
        std::to_string(n) + " configs");
  }

  {  // scalar and SIMD kernels agree bit for bit
    if (kernels::avx2_available()) {
      std::uint64_t mismatches = 0;
      const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 200000);
      for (const double d : {0.0, -kPi, kPi / 3.0, -kPi / 3.0, 2.5, -0.7}) {
        const auto a = kernels::accumulate_trials(opt.seed, 0, n, canonical_angle(d),
                                                  kernels::SimdMode::Scalar);
        const auto b = kernels::accumulate_trials(opt.seed, 0, n, canonical_angle(d),
                                                  kernels::SimdMode::Avx2);
        if (!(a == b)) ++mismatches;
      }
      add("kernel-equivalence-simd", static_cast<double>(mismatches), 0.0,
          "6 deltas, n=" + std::to_string(n));
    } else {
      out.push_back({"kernel-equivalence-simd", true, 0.0, 0.0,
                     "avx2 unavailable on this cpu; skipped"});
    }
  }

  {  // kernel counts match the record path exactly
    std::uint64_t mismatches = 0;
    const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 100000);
    for (const double d : {0.0, -kPi, kPi / 3.0, -kPi / 3.0, 2.5, -0.7}) {
      const double dc = canonical_angle(d);
      ScheduleSpec sched;
      sched.settings = {XYSettings{dc, 0.0, 0.0}};
      const auto recs = run_trials(sched, n, 0.0, opt.seed);
      const auto from_records = counts_from_records(recs);
      const auto from_kernel = kernels::accumulate_trials(
          opt.seed, 0, n, dc, kernels::SimdMode::Scalar);
      if (!(from_records == from_kernel)) ++mismatches;
    }
    add("kernel-equivalence-reference", static_cast<double>(mismatches), 0.0,
        "6 deltas, n=" + std::to_string(n));
  }

  {  // identical bytes across repeats and worker counts
    std::uint64_t mismatches = 0;
    const std::uint64_t n = std::min<std::uint64_t>(opt.trials, 500000);
    const CorrelatorReport ref = mc_correlators(1.1, n, opt.seed, opt.simd, 1);
    if (!(mc_correlators(1.1, n, opt.seed, opt.simd, 1) == ref)) ++mismatches;
    for (int workers : {2, 5})
      if (!(mc_correlators(1.1, n, opt.seed, opt.simd, workers) == ref))
        ++mismatches;
    add("determinism-repeat", static_cast<double>(mismatches), 0.0,
        "repeat run and worker counts 2, 5");
  }

  {  // oracle reproduces the closed-form planar correlator
    double worst = 0.0;
    for (const double phi : {0.0, 1.0, -kPi / 2.0}) {
      const qm::State state = qm::ghz_state(3, phi);
      for (int ia = 0; ia < 5; ++ia)
        for (int ib = 0; ib < 5; ++ib)
          for (int ig = 0; ig < 5; ++ig) {
            const double a = -kPi + ia * kTwoPi / 5.0;
            const double b = -kPi + ib * kTwoPi / 5.0;
            const double g = -kPi + ig * kTwoPi / 5.0;
            const double e = qm::expectation(
                state, {qm::SiteObservable::xy(a), qm::SiteObservable::xy(b),
                        qm::SiteObservable::xy(g)});
            worst = std::max(worst, std::fabs(e - std::cos(a + b + g + phi)));
          }
    }
    add("oracle-closed-form", worst, 1e-12, "5x5x5 grid x 3 phases");
  }

  {  // oracle marginals: null planar singles/pairs, Z parity structure
    double worst = 0.0;
    const qm::State state = qm::ghz_state(3, 0.9);
    const auto I = qm::SiteObservable::identity;
    const auto XY = qm::SiteObservable::xy;
    const auto Z = qm::SiteObservable::z;
    for (const double a : {0.0, 0.7, -2.0}) {
      worst = std::max(worst,
                       std::fabs(qm::expectation(state, {XY(a), I(), I()})));
      worst = std::max(worst,
                       std::fabs(qm::expectation(state, {I(), XY(a), I()})));
      worst = std::max(
          worst, std::fabs(qm::expectation(state, {XY(a), XY(0.4), I()})));
      worst = std::max(
          worst, std::fabs(qm::expectation(state, {I(), XY(a), XY(-0.3)})));
    }
    worst = std::max(worst,
                     std::fabs(qm::expectation(state, {Z(), Z(), I()}) - 1.0));
    worst = std::max(worst,
                     std::fabs(qm::expectation(state, {I(), Z(), Z()}) - 1.0));
    worst = std::max(worst, std::fabs(qm::expectation(state, {Z(), I(), I()})));
    worst = std::max(worst, std::fabs(qm::expectation(state, {Z(), Z(), Z()})));
    add("oracle-marginals", worst, 1e-12, "singles, pairs, z parity");
  }

  {  // joint distribution consistent with expectations
    double worst = 0.0;
    const qm::State state = qm::ghz_state(3, 0.6);
    const std::vector<qm::SiteObservable> obs{qm::SiteObservable::xy(0.3),
                                              qm::SiteObservable::xy(-1.1),
                                              qm::SiteObservable::xy(2.2)};
    const qm::OutcomeDistribution dist = qm::joint_distribution(state, obs);
    worst = std::max(worst, std::fabs(dist.total() - 1.0));
    worst = std::max(worst,
                     std::fabs(dist.moment({0, 1, 2}) -
                               qm::expectation(state, obs)));
    worst = std::max(worst, std::fabs(dist.moment({0})));
    worst = std::max(worst, std::fabs(dist.moment({0, 1})));
    add("oracle-joint-consistency", worst, 1e-12, "");
  }

  return out;
}

}  // namespace ghzlab::sim
