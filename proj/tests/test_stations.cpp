#include <cmath>
#include <stdexcept>
#include <variant>

#include "doctest.h"
#include "ghzlab/angle.hpp"
#include "ghzlab/lhv.hpp"
#include "ghzlab/stations.hpp"
#include "ghzlab/trials.hpp"

using namespace ghzlab;
using namespace ghzlab::stations;

TEST_CASE("wire frames round-trip with pinned sizes") {
  const EmissionMsg e{42, -2.5, 0.75};
  const Frame fe = encode_frame(e);
  CHECK(fe.size() == 29);  // 4 + 1 + 8 + 8 + 8
  CHECK(fe[4] == 1);       // type byte after the length prefix
  CHECK(std::get<EmissionMsg>(decode_frame(fe)) == e);

  const SettingMsg s{StationId::B, kPi / 3};
  const Frame fs = encode_frame(s);
  CHECK(fs.size() == 14);
  CHECK(std::get<SettingMsg>(decode_frame(fs)) == s);

  const OutcomeMsg o{7, StationId::C, -1};
  const Frame fo = encode_frame(o);
  CHECK(fo.size() == 15);
  CHECK(std::get<OutcomeMsg>(decode_frame(fo)) == o);

  const FinishMsg f{1000};
  const Frame ff = encode_frame(f);
  CHECK(ff.size() == 13);
  CHECK(std::get<FinishMsg>(decode_frame(ff)) == f);

  // little-endian length prefix: emission body is 25 bytes
  CHECK(fe[0] == 25);
  CHECK(fe[1] == 0);
  CHECK(fe[2] == 0);
  CHECK(fe[3] == 0);
}

TEST_CASE("decoder rejects malformed frames") {
  Frame f = encode_frame(EmissionMsg{1, 0.0, 0.0});
  f.pop_back();
  CHECK_THROWS_AS((void)decode_frame(f), std::invalid_argument);
  Frame bad_type = encode_frame(FinishMsg{2});
  bad_type[4] = 99;
  CHECK_THROWS_AS((void)decode_frame(bad_type), std::invalid_argument);
  CHECK_THROWS_AS((void)decode_frame(Frame{1, 0, 0}), std::invalid_argument);
  Frame bad_station = encode_frame(SettingMsg{StationId::A, 0.0});
  bad_station[5] = 9;
  CHECK_THROWS_AS((void)decode_frame(bad_station), std::invalid_argument);
}

TEST_CASE("station outcomes are the pure chart responses") {
  for (const double w : {-2.0, -0.5, 0.0, 0.8, 2.9, -kPi}) {
    for (const double e : {0.6, -0.6, 0.0}) {
      CHECK(station_outcome(StationId::C, 123.0, w, e) == lhv::outcome_C(e));
      CHECK(station_outcome(StationId::A, 0.0, w, e) == lhv::response(w, e));
      const double d = -1.1;
      CHECK(station_outcome(StationId::B, d, w, e) ==
            lhv::response(lhv::omega_B_of(w, e, d), e));
    }
  }
  // settings are canonicalized before use
  CHECK(station_outcome(StationId::A, kTwoPi, 0.9, 0.5) ==
        lhv::response(0.9, 0.5));
}

TEST_CASE("pipes deliver frames in order and signal end of stream") {
  for (const Transport t : {Transport::Channel, Transport::Socket}) {
    CAPTURE(transport_name(t));
    const std::unique_ptr<Pipe> p = make_pipe(t);
    for (std::uint64_t i = 0; i < 100; ++i)
      p->send(encode_frame(OutcomeMsg{i, StationId::A, +1}));
    p->send(encode_frame(FinishMsg{100}));
    p->close_send();
    for (std::uint64_t i = 0; i < 100; ++i) {
      const auto m = p->recv();
      REQUIRE(m.has_value());
      CHECK(std::get<OutcomeMsg>(*m).trial == i);
    }
    CHECK(std::get<FinishMsg>(*p->recv()).n_trials == 100);
    CHECK_FALSE(p->recv().has_value());
  }
}

TEST_CASE("distributed run matches the direct trial loop bit for bit") {
  sim::ScheduleSpec sched;
  sched.settings = {sim::XYSettings{0.3, -1.1, 0.7}};
  const double phi = 0.4;
  const std::uint64_t n = 5000;
  const std::vector<sim::TrialRecord> recs = sim::run_trials(sched, n, phi, 0);
  const double delta =
      sim::SettingTriple{0.3, -1.1, 0.7, phi}.effective_delta();

  DistributedConfig cfg;
  cfg.setting_a = 0.0;
  cfg.setting_b = delta;
  cfg.setting_c = 0.0;
  cfg.n_trials = n;
  cfg.seed = 0;
  for (const Transport t : {Transport::Channel, Transport::Socket}) {
    CAPTURE(transport_name(t));
    cfg.transport = t;
    const DistributedResult res = run_distributed(cfg);
    REQUIRE(res.a.size() == n);
    for (std::uint64_t i = 0; i < n; ++i) {
      CHECK(res.a[i] == recs[i].s_a);
      CHECK(res.b[i] == recs[i].s_b);
      CHECK(res.c[i] == recs[i].s_c);
    }
    CHECK(res.audit.enabled);
    CHECK(res.audit.violations == 0);
    CHECK(res.audit.frames == 6 * n + 9);
    CHECK(res.audit.bytes == 132 * n + 120);
    CHECK(res.report.n == n);
    CHECK(res.report.e_abc ==
          static_cast<double>(res.counts.sum_abc) / static_cast<double>(n));
  }
}

TEST_CASE("both transports produce identical results") {
  DistributedConfig cfg;
  cfg.setting_a = 0.9;
  cfg.setting_b = -1.2;
  cfg.setting_c = 0.5;
  cfg.n_trials = 3000;
  cfg.seed = 11;
  cfg.transport = Transport::Channel;
  const DistributedResult chan = run_distributed(cfg);
  cfg.transport = Transport::Socket;
  const DistributedResult sock = run_distributed(cfg);
  CHECK(chan == sock);
  // and a repeat run is byte-identical too
  const DistributedResult again = run_distributed(cfg);
  CHECK(again == sock);
}

TEST_CASE("counts from outcome triples") {
  const std::vector<std::int8_t> a{+1, -1}, b{+1, +1}, c{+1, -1};
  const kernels::TrialCounts t = counts_from_outcomes(a, b, c);
  CHECK(t.trials == 2);
  CHECK(t.sum_a == 0);
  CHECK(t.sum_b == 2);
  CHECK(t.sum_c == 0);
  CHECK(t.sum_ab == 0);
  CHECK(t.sum_abc == 2);
  CHECK(t.eta_pos == 1);
  CHECK(t.sum_ab_eta_pos == 1);
  CHECK(t.region[0] == 0);  // the coordinator never sees hidden configs
  CHECK_THROWS_AS((void)counts_from_outcomes(a, b, {+1}),
                  std::invalid_argument);
}

TEST_CASE("chart composition: identity factors compose, generic ones do not") {
  const CompositionReport id1 = composition_check(0.9, 0.0, 4000, 0);
  CHECK(id1.agree_fraction == 1.0);
  CHECK(id1.correlator_gap == 0.0);
  const CompositionReport id2 = composition_check(0.0, 1.3, 4000, 0);
  CHECK(id2.agree_fraction == 1.0);

  const CompositionReport gen = composition_check(0.9, 1.3, 20000, 0);
  CHECK(gen.delta_sum == doctest::Approx(2.2).epsilon(1e-12));
  CHECK(gen.agree_fraction <= 0.05);  // the two routes land apart a.e.
  CHECK(gen.max_gap > 0.1);
  CHECK(gen.correlator_direct == doctest::Approx(std::cos(2.2)).epsilon(0.15));

  const CompositionReport wrap = composition_check(3.0, 3.0, 1000, 0);
  CHECK(wrap.delta_sum == doctest::Approx(6.0 - kTwoPi).epsilon(1e-12));
}
