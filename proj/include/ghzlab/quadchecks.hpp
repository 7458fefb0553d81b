#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ghzlab/trials.hpp"

// Exact-integration counterparts of the Monte Carlo estimators, plus the
// measure-invariance diagnostics. Quadrature is composite Gauss-Legendre on
// segments where the integrand is analytic (breakpoints at the transform's
// branch boundaries); at 32 nodes per segment the error sits at roundoff,
// orders of magnitude inside the 1e-9 gates.

namespace ghzlab::sim {

using TransformFn = std::function<double(double, double)>;
TransformFn default_transform();  // lhv::transform_L
using ResponseFn = std::function<int(double, double)>;
ResponseFn default_response();    // lhv::response

/// Branch boundaries of the transform in omega, including the circle ends:
/// sorted, unique, first -pi and last +pi.
std::vector<double> omega_breakpoints(double delta_eff);

/// Triple correlator at one canonical effective delta; equals cos(delta)
/// up to quadrature roundoff.
double quadrature_triple_correlation(double delta_eff, int nodes = 32);

struct PartitionMeasures {
  double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
};

/// Hidden-measure weights of the four regions; delta in [0, pi].
PartitionMeasures partition_measures(double delta, int nodes = 32);
/// Same for canonical delta in [-pi, pi) (signed-region convention).
PartitionMeasures partition_measures_signed(double delta_eff, int nodes = 32);

/// All correlators by quadrature, including the pair correlator conditioned
/// on each eta sub-population (+cos delta / -cos delta).
struct QuadCorrelators {
  double e_a = 0.0, e_b = 0.0, e_c = 0.0;
  double e_ab = 0.0, e_bc = 0.0, e_ca = 0.0;
  double e_abc = 0.0;
  double ab_eta_pos = 0.0;
  double ab_eta_nonpos = 0.0;
};
QuadCorrelators quadrature_correlators(double delta_eff, int nodes = 32,
                                       const ResponseFn& response =
                                           default_response());

/// QuadCorrelators packaged as a CorrelatorReport (method = Quadrature,
/// all standard errors zero, n = 0).
CorrelatorReport quadrature_report(double delta_eff, int nodes = 32);

/// Integral of the joint density over the torus (should be 1).
double density_normalization(int nodes = 64);

/// Cumulative-measure coordinate m(omega) = 4 F(omega) in [0, 4).
double measure_coordinate(double omega);

/// max over a grid of |g(L(w)) |L'(w)| - g(w)| with L' by central difference;
/// grid points closer than `margin` to a branch boundary are skipped.
double jacobian_invariance_max_error(double delta_eff, int grid = 2048,
                                     double margin = 0.05, double step = 1e-5,
                                     const TransformFn& transform =
                                         default_transform());

/// max over a grid of the mod-4 distance between m(L(w)) and
/// m(w) - sign(delta)(1 - cos delta): the transform must be exactly this
/// rotation in the cumulative-measure coordinate.
double rotation_identity_max_error(double delta_eff, int grid = 4096,
                                   const TransformFn& transform =
                                       default_transform());

/// KS distance between n transformed samples L(omega_i) and the omega CDF.
double ks_transformed(double delta_eff, std::size_t n, std::uint64_t seed,
                      const TransformFn& transform = default_transform());

/// KS distance between n raw sampler draws and the omega CDF.
double ks_sampler(std::size_t n, std::uint64_t seed);

}  // namespace ghzlab::sim
