#pragma once

#include <complex>
#include <vector>

// Quantum-mechanical oracle: dense state-vector arithmetic, no shortcuts
// shared with the hidden-variable code. Conventions: spin-up is basis index 1
// of a site, site 0 is the most significant bit, so "all up" is amplitude
// index 2^n - 1. With these, the planar observable below satisfies
// O(theta)|down> = e^{i theta}|up>, and the n=3 GHZ triple correlator is
// cos(alpha + beta + gamma + phi).

namespace ghzlab::qm {

using Complex = std::complex<double>;

struct State {
  int n_sites = 0;
  std::vector<Complex> amp;  // size 2^n_sites
};

/// (|up..up> + e^{i phi} |down..down>) / sqrt(2); n_sites in [2, 12].
State ghz_state(int n_sites, double phi);

/// One site's factor of a product observable.
struct SiteObservable {
  enum class Kind { Identity, XY, Z } kind = Kind::Identity;
  double angle = 0.0;  // XY only: cos(angle) sigma_x + sin(angle) sigma_y

  static SiteObservable identity() { return {Kind::Identity, 0.0}; }
  static SiteObservable xy(double angle) { return {Kind::XY, angle}; }
  static SiteObservable z() { return {Kind::Z, 0.0}; }
};

/// <state| O_0 x O_1 x ... |state>. Hermitian product, so the value is real;
/// throws std::logic_error if the imaginary residue exceeds 1e-12.
double expectation(const State& state, const std::vector<SiteObservable>& obs);

/// Born-rule joint distribution of +-1 outcomes for the measured sites.
struct OutcomeDistribution {
  std::vector<int> sites;    // measured site indices, ascending
  std::vector<double> prob;  // 2^m entries; bit (m-1-k) set <=> sites[k] = +1

  /// E[product of outcomes over `subset`] (subset of measured sites).
  double moment(const std::vector<int>& subset) const;
  double total() const;
};

/// Requires every site to carry a real observable (no Identity entries).
OutcomeDistribution joint_distribution(const State& state,
                                       const std::vector<SiteObservable>& obs);

}  // namespace ghzlab::qm
