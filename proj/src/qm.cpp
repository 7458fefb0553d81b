#include "ghzlab/qm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghzlab::qm {

namespace {

struct Mat2 {
  // Row-major, basis (down = index 0, up = index 1).
  Complex a00, a01, a10, a11;
};

Mat2 site_matrix(const SiteObservable& o) {
  switch (o.kind) {
    case SiteObservable::Kind::Identity:
      return {1.0, 0.0, 0.0, 1.0};
    case SiteObservable::Kind::XY:
      // cos(t) sigma_x + sin(t) sigma_y = [[0, e^{-it}], [e^{it}, 0]]
      return {0.0, std::polar(1.0, -o.angle), std::polar(1.0, o.angle), 0.0};
    case SiteObservable::Kind::Z:
      return {1.0, 0.0, 0.0, -1.0};
  }
  throw std::invalid_argument("site_matrix: bad observable kind");
}

// Apply a one-site operator in place; site 0 is the most significant bit.
void apply_site(std::vector<Complex>& amp, int n_sites, int site,
                const Mat2& m) {
  const int bit = n_sites - 1 - site;
  const std::size_t stride = std::size_t{1} << bit;
  for (std::size_t base = 0; base < amp.size(); base += 2 * stride) {
    for (std::size_t k = 0; k < stride; ++k) {
      const std::size_t i0 = base + k;          // site bit = 0 (down)
      const std::size_t i1 = i0 + stride;       // site bit = 1 (up)
      const Complex lo = amp[i0], hi = amp[i1];
      amp[i0] = m.a00 * lo + m.a01 * hi;
      amp[i1] = m.a10 * lo + m.a11 * hi;
    }
  }
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void check_sites(const State& state, const std::vector<SiteObservable>& obs) {
  if (state.n_sites < 2 || state.amp.size() != (std::size_t{1} << state.n_sites))
    throw std::invalid_argument("qm: malformed state");
  if (static_cast<int>(obs.size()) != state.n_sites)
    throw std::invalid_argument("qm: observable list size != site count");
}

}  // namespace

State ghz_state(int n_sites, double phi) {
  if (n_sites < 2 || n_sites > 12)
    throw std::invalid_argument("ghz_state: n_sites outside [2, 12]");
  State s;
  s.n_sites = n_sites;
  s.amp.assign(std::size_t{1} << n_sites, Complex{0.0, 0.0});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  s.amp.back() = inv_sqrt2;                          // all spins up
  s.amp.front() = std::polar(inv_sqrt2, phi);        // all spins down
  return s;
}

double expectation(const State& state, const std::vector<SiteObservable>& obs) {
  check_sites(state, obs);
  std::vector<Complex> work = state.amp;
  for (int k = 0; k < state.n_sites; ++k)
    if (obs[k].kind != SiteObservable::Kind::Identity)
      apply_site(work, state.n_sites, k, site_matrix(obs[k]));
  const Complex val = inner(state.amp, work);
  if (std::fabs(val.imag()) > 1e-12)
    throw std::logic_error("expectation: non-real value for Hermitian product");
  return val.real();
}

double OutcomeDistribution::moment(const std::vector<int>& subset) const {
  const int m = static_cast<int>(sites.size());
  std::vector<int> bits;
  for (int s : subset) {
    const auto it = std::find(sites.begin(), sites.end(), s);
    if (it == sites.end())
      throw std::invalid_argument("moment: site was not measured");
    bits.push_back(m - 1 - static_cast<int>(it - sites.begin()));
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < prob.size(); ++t) {
    int sign = 1;
    for (int b : bits) sign *= (t >> b) & 1 ? +1 : -1;
    acc += sign * prob[t];
  }
  return acc;
}

double OutcomeDistribution::total() const {
  double acc = 0.0;
  for (double p : prob) acc += p;
  return acc;
}

OutcomeDistribution joint_distribution(const State& state,
                                       const std::vector<SiteObservable>& obs) {
  check_sites(state, obs);
  for (const auto& o : obs)
    if (o.kind == SiteObservable::Kind::Identity)
      throw std::invalid_argument("joint_distribution: Identity entry");
  OutcomeDistribution dist;
  for (int k = 0; k < state.n_sites; ++k) dist.sites.push_back(k);
  const int m = state.n_sites;
  dist.prob.assign(std::size_t{1} << m, 0.0);
  for (std::size_t t = 0; t < dist.prob.size(); ++t) {
    std::vector<Complex> work = state.amp;
    for (int k = 0; k < m; ++k) {
      const int sign = (t >> (m - 1 - k)) & 1 ? +1 : -1;
      // Eigenprojector (I + sign * O) / 2 of a +-1-valued observable.
      Mat2 p = site_matrix(obs[k]);
      p.a00 = 0.5 * (1.0 + static_cast<double>(sign) * p.a00);
      p.a01 = 0.5 * (static_cast<double>(sign) * p.a01);
      p.a10 = 0.5 * (static_cast<double>(sign) * p.a10);
      p.a11 = 0.5 * (1.0 + static_cast<double>(sign) * p.a11);
      apply_site(work, m, k, p);
    }
    const Complex v = inner(state.amp, work);
    if (std::fabs(v.imag()) > 1e-12)
      throw std::logic_error("joint_distribution: non-real probability");
    dist.prob[t] = std::max(0.0, v.real());
  }
  return dist;
}

}  // namespace ghzlab::qm
