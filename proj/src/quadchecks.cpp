#include "ghzlab/quadchecks.hpp"

#include <algorithm>
#include <cmath>

#include "ghzlab/gauss.hpp"
#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"

namespace ghzlab::sim {

TransformFn default_transform() {
  return [](double w, double d) { return lhv::transform_L(w, d); };
}

ResponseFn default_response() {
  return [](double w, double eta) { return lhv::response(w, eta); };
}

std::vector<double> omega_breakpoints(double delta_eff) {
  std::vector<double> b{-kPi, 0.0, kPi};
  if (delta_eff >= 0.0) {
    b.push_back(delta_eff);
    b.push_back(delta_eff - kPi);
  } else {
    b.push_back(delta_eff);
    b.push_back(delta_eff + kPi);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

QuadCorrelators quadrature_correlators(double delta_eff, int nodes,
                                       const ResponseFn& response) {
  const num::GaussLegendre rule(nodes);
  const std::vector<double> breaks = omega_breakpoints(delta_eff);
  QuadCorrelators q;
  // eta enters outcomes only through its sign, so each sub-population is
  // represented by one value and carries half the total weight.
  for (const double eta_rep : {kPi / 2.0, -kPi / 2.0}) {
    const bool pos_half = eta_rep > 0.0;
    const int s_c = lhv::outcome_C(eta_rep);
    double ab_half = 0.0;
    for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
      const double a = breaks[s], b = breaks[s + 1];
      const double half_len = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      for (std::size_t i = 0; i < rule.node.size(); ++i) {
        const double w = mid + half_len * rule.node[i];
        const double wt =
            0.5 * rule.weight[i] * half_len * lhv::omega_density(w);
        const int s_a = response(w, eta_rep);
        const int s_b =
            response(lhv::omega_B_of(w, eta_rep, delta_eff), eta_rep);
        q.e_a += wt * s_a;
        q.e_b += wt * s_b;
        q.e_c += wt * s_c;
        q.e_ab += wt * (s_a * s_b);
        q.e_bc += wt * (s_b * s_c);
        q.e_ca += wt * (s_c * s_a);
        q.e_abc += wt * (s_a * s_b * s_c);
        ab_half += wt * (s_a * s_b);
      }
    }
    // Conditional pair correlator: divide out the half-population weight.
    if (pos_half)
      q.ab_eta_pos = ab_half / 0.5;
    else
      q.ab_eta_nonpos = ab_half / 0.5;
  }
  return q;
}

double quadrature_triple_correlation(double delta_eff, int nodes) {
  return quadrature_correlators(delta_eff, nodes).e_abc;
}

CorrelatorReport quadrature_report(double delta_eff, int nodes) {
  const QuadCorrelators q = quadrature_correlators(delta_eff, nodes);
  CorrelatorReport r;
  r.method = Method::Quadrature;
  r.n = 0;
  r.e_a = q.e_a;
  r.e_b = q.e_b;
  r.e_c = q.e_c;
  r.e_ab = q.e_ab;
  r.e_bc = q.e_bc;
  r.e_ca = q.e_ca;
  r.e_abc = q.e_abc;
  r.e_ab_eta_pos = q.ab_eta_pos;
  r.eta_pos_frac = 0.5;
  const PartitionMeasures pm = partition_measures_signed(delta_eff, nodes);
  r.region_frac[0] = pm.pp;
  r.region_frac[1] = pm.pm;
  r.region_frac[2] = pm.mp;
  r.region_frac[3] = pm.mm;
  return r;
}

PartitionMeasures partition_measures(double delta, int nodes) {
  if (!(delta >= 0.0 && delta <= kPi))
    throw std::invalid_argument("partition_measures: delta outside [0, pi]");
  const num::GaussLegendre rule(nodes);
  // Segment interiors carry the tags; delta = pi needs its own breakpoints
  // since the canonical helper folds it.
  std::vector<double> breaks{-kPi, delta - kPi, 0.0, delta, kPi};
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  PartitionMeasures out;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    const lhv::RegionTag tag = lhv::classify_region(0.5 * (a + b), delta);
    const double mass =
        rule.integrate([](double w) { return lhv::omega_density(w); }, a, b);
    switch (tag) {
      case lhv::RegionTag::PP: out.pp += mass; break;
      case lhv::RegionTag::PM: out.pm += mass; break;
      case lhv::RegionTag::MP: out.mp += mass; break;
      case lhv::RegionTag::MM: out.mm += mass; break;
    }
  }
  return out;
}

PartitionMeasures partition_measures_signed(double delta_eff, int nodes) {
  if (!(delta_eff >= -kPi && delta_eff < kPi))
    throw std::invalid_argument("partition_measures_signed: delta not canonical");
  if (delta_eff >= 0.0) return partition_measures(delta_eff, nodes);
  const num::GaussLegendre rule(nodes);
  const std::vector<double> breaks = omega_breakpoints(delta_eff);
  PartitionMeasures out;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    const lhv::RegionTag tag =
        lhv::classify_region_signed(0.5 * (a + b), delta_eff);
    const double mass =
        rule.integrate([](double w) { return lhv::omega_density(w); }, a, b);
    switch (tag) {
      case lhv::RegionTag::PP: out.pp += mass; break;
      case lhv::RegionTag::PM: out.pm += mass; break;
      case lhv::RegionTag::MP: out.mp += mass; break;
      case lhv::RegionTag::MM: out.mm += mass; break;
    }
  }
  return out;
}

double density_normalization(int nodes) {
  const num::GaussLegendre rule(nodes);
  const auto inner = [&](double w) {
    return rule.integrate(
        [&](double eta) { return lhv::density({w, eta}); }, -kPi, kPi);
  };
  return rule.integrate(inner, -kPi, 0.0) + rule.integrate(inner, 0.0, kPi);
}

double measure_coordinate(double omega) { return 4.0 * lhv::omega_cdf(omega); }

double jacobian_invariance_max_error(double delta_eff, int grid, double margin,
                                     double step, const TransformFn& transform) {
  const std::vector<double> breaks = omega_breakpoints(delta_eff);
  double worst = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double w = -kPi + (k + 0.5) * kTwoPi / grid;
    double dist = kTwoPi;
    for (double b : breaks) dist = std::min(dist, std::fabs(w - b));
    if (dist < margin) continue;
    const double mapped = transform(w, delta_eff);
    const double jac =
        (transform(w + step, delta_eff) - transform(w - step, delta_eff)) /
        (2.0 * step);
    const double err = std::fabs(lhv::omega_density(mapped) * std::fabs(jac) -
                                 lhv::omega_density(w));
    worst = std::max(worst, err);
  }
  return worst;
}

double rotation_identity_max_error(double delta_eff, int grid,
                                   const TransformFn& transform) {
  const double shift = delta_eff >= 0.0 ? -(1.0 - std::cos(delta_eff))
                                        : (1.0 - std::cos(delta_eff));
  double worst = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double w = -kPi + (k + 0.5) * kTwoPi / grid;
    const double expect = std::fmod(measure_coordinate(w) + shift + 4.0, 4.0);
    const double got = measure_coordinate(transform(w, delta_eff));
    double d = std::fabs(got - expect);
    d = std::fmod(d, 4.0);
    d = std::min(d, 4.0 - d);
    worst = std::max(worst, d);
  }
  return worst;
}

double ks_transformed(double delta_eff, std::size_t n, std::uint64_t seed,
                      const TransformFn& transform) {
  const std::uint64_t off = rng::stream_offset(seed, rng::Stream::HiddenU);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        lhv::omega_from_unit(rng::to_unit(rng::counter_word(off, i)));
    xs[i] = transform(w, delta_eff);
  }
  return num::ks_distance(xs, [](double x) { return lhv::omega_cdf(x); });
}

double ks_sampler(std::size_t n, std::uint64_t seed) {
  const std::uint64_t off = rng::stream_offset(seed, rng::Stream::HiddenU);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = lhv::omega_from_unit(rng::to_unit(rng::counter_word(off, i)));
  return num::ks_distance(xs, [](double x) { return lhv::omega_cdf(x); });
}

}  // namespace ghzlab::sim
