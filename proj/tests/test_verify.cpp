#include <stdexcept>

#include "doctest.h"
#include "ghzlab/verify.hpp"

using namespace ghzlab;
using namespace ghzlab::sim;

namespace {

const CheckResult* find(const std::vector<CheckResult>& rs, const char* name) {
  for (const CheckResult& r : rs)
    if (r.name == name) return &r;
  return nullptr;
}

VerifyOptions small_options() {
  VerifyOptions opt;
  opt.trials = 4000;
  opt.seed = 0;
  opt.delta_grid = 8;
  opt.ks_deltas = 3;
  return opt;
}

}  // namespace

TEST_CASE("the full battery passes on the honest model") {
  const auto results = run_verify(small_options());
  CHECK(results.size() >= 16);
  for (const CheckResult& r : results) {
    CAPTURE(r.name);
    CAPTURE(r.value);
    CHECK(r.pass);
  }
  CHECK(all_pass(results));
  CHECK(find(results, "per-trial-exactness") != nullptr);
  CHECK(find(results, "kernel-equivalence-simd") != nullptr);
  CHECK(find(results, "oracle-closed-form") != nullptr);
}

TEST_CASE("a damaged transform trips exactly the measure checks") {
  VerifyOptions opt = small_options();
  opt.corrupt = "transform";
  const auto results = run_verify(opt);
  CHECK_FALSE(all_pass(results));
  CHECK_FALSE(find(results, "transform-rotation-identity")->pass);
  CHECK_FALSE(find(results, "measure-invariance-jacobian")->pass);
  // checks that do not consume the transform hook stay green
  CHECK(find(results, "density-normalization")->pass);
  CHECK(find(results, "oracle-closed-form")->pass);
  CHECK(find(results, "per-trial-exactness")->pass);
}

TEST_CASE("a damaged response trips the conditional structure") {
  VerifyOptions opt = small_options();
  opt.corrupt = "response";
  const auto results = run_verify(opt);
  CHECK_FALSE(all_pass(results));
  CHECK_FALSE(find(results, "conditional-correlations")->pass);
  CHECK(find(results, "transform-rotation-identity")->pass);
}

TEST_CASE("unknown corruption targets are rejected") {
  VerifyOptions opt = small_options();
  opt.corrupt = "bogus";
  CHECK_THROWS_AS((void)run_verify(opt), std::invalid_argument);
}
