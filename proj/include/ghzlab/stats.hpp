#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ghzlab::num {

/// Mean and standard error of a +-1 sequence, from its exact integer sum.
struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr pm_mean_stderr(std::int64_t sum, std::uint64_t n);

/// One-sample Kolmogorov-Smirnov distance against a continuous CDF.
/// Sorts xs in place.
double ks_distance(std::vector<double>& xs,
                   const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance. Sorts both in place.
double ks_two_sample(std::vector<double>& a, std::vector<double>& b);

/// Asymptotic Kolmogorov tail probability Q(t) = 2 sum (-1)^{k-1} e^{-2k^2t^2}.
double kolmogorov_q(double t);

}  // namespace ghzlab::num
