#include "ghzlab/stations.hpp"

#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

#include "ghzlab/angle.hpp"
#include "ghzlab/lhv.hpp"
#include "ghzlab/rng.hpp"

namespace ghzlab::stations {

namespace {

constexpr std::size_t kMaxBody = 64;  // largest real body is 25 bytes

void put_u32(Frame& f, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) f.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_u64(Frame& f, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) f.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_f64(Frame& f, double v) { put_u64(f, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(p[k]) << (8 * k);
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  return v;
}

double get_f64(const std::uint8_t* p) {
  return std::bit_cast<double>(get_u64(p));
}

}  // namespace

const char* station_name(StationId id) {
  switch (id) {
    case StationId::A: return "A";
    case StationId::B: return "B";
    case StationId::C: return "C";
  }
  return "?";
}

const char* transport_name(Transport t) {
  return t == Transport::Channel ? "channel" : "socket";
}

Frame encode_frame(const Message& msg) {
  Frame body;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, EmissionMsg>) {
          body.push_back(static_cast<std::uint8_t>(MsgType::Emission));
          put_u64(body, m.trial);
          put_f64(body, m.omega);
          put_f64(body, m.eta);
        } else if constexpr (std::is_same_v<T, SettingMsg>) {
          body.push_back(static_cast<std::uint8_t>(MsgType::Setting));
          body.push_back(static_cast<std::uint8_t>(m.station));
          put_f64(body, m.value);
        } else if constexpr (std::is_same_v<T, OutcomeMsg>) {
          body.push_back(static_cast<std::uint8_t>(MsgType::Outcome));
          put_u64(body, m.trial);
          body.push_back(static_cast<std::uint8_t>(m.station));
          body.push_back(static_cast<std::uint8_t>(m.value));
        } else {
          body.push_back(static_cast<std::uint8_t>(MsgType::Finish));
          put_u64(body, m.n_trials);
        }
      },
      msg);
  Frame frame;
  frame.reserve(4 + body.size());
  put_u32(frame, static_cast<std::uint32_t>(body.size()));
  frame.insert(frame.end(), body.begin(), body.end());
  return frame;
}

Message decode_body(const std::uint8_t* data, std::size_t size) {
  if (size == 0) throw std::invalid_argument("frame body is empty");
  const auto type = static_cast<MsgType>(data[0]);
  switch (type) {
    case MsgType::Emission:
      if (size != 25) throw std::invalid_argument("emission frame length");
      return EmissionMsg{get_u64(data + 1), get_f64(data + 9), get_f64(data + 17)};
    case MsgType::Setting: {
      if (size != 10) throw std::invalid_argument("setting frame length");
      const std::uint8_t sid = data[1];
      if (sid > 2) throw std::invalid_argument("setting frame station id");
      return SettingMsg{static_cast<StationId>(sid), get_f64(data + 2)};
    }
    case MsgType::Outcome: {
      if (size != 11) throw std::invalid_argument("outcome frame length");
      const std::uint8_t sid = data[9];
      if (sid > 2) throw std::invalid_argument("outcome frame station id");
      return OutcomeMsg{get_u64(data + 1), static_cast<StationId>(sid),
                        static_cast<std::int8_t>(data[10])};
    }
    case MsgType::Finish:
      if (size != 9) throw std::invalid_argument("finish frame length");
      return FinishMsg{get_u64(data + 1)};
  }
  throw std::invalid_argument("unknown frame type");
}

Message decode_frame(const Frame& frame) {
  if (frame.size() < 5) throw std::invalid_argument("frame shorter than header");
  const std::uint32_t len = get_u32(frame.data());
  if (len != frame.size() - 4)
    throw std::invalid_argument("frame length prefix mismatch");
  return decode_body(frame.data() + 4, len);
}

// --------------------------------------------------------------------------
// Transports
// --------------------------------------------------------------------------

namespace {

class ChannelPipe final : public Pipe {
 public:
  void send(const Frame& frame) override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (closed_) throw std::logic_error("send on closed channel");
      q_.push_back(frame);
    }
    cv_.notify_one();
  }

  std::optional<Message> recv() override {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] { return !q_.empty() || closed_; });
    if (q_.empty()) return std::nullopt;
    const Frame frame = std::move(q_.front());
    q_.pop_front();
    lock.unlock();
    return decode_frame(frame);
  }

  void close_send() override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Frame> q_;
  bool closed_ = false;
};

class SocketPipe final : public Pipe {
 public:
  SocketPipe() {
    int fds[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
      throw std::runtime_error("socketpair failed");
    wfd_ = fds[0];
    rfd_ = fds[1];
  }

  ~SocketPipe() override {
    if (wfd_ >= 0) ::close(wfd_);
    if (rfd_ >= 0) ::close(rfd_);
  }

  void send(const Frame& frame) override {
    const std::uint8_t* p = frame.data();
    std::size_t left = frame.size();
    while (left > 0) {
      const ssize_t k = ::write(wfd_, p, left);
      if (k < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error("socket write failed");
      }
      p += k;
      left -= static_cast<std::size_t>(k);
    }
  }

  std::optional<Message> recv() override {
    std::uint8_t header[4];
    if (!read_exact(header, 4, /*eof_ok=*/true)) return std::nullopt;
    const std::uint32_t len = get_u32(header);
    if (len == 0 || len > kMaxBody)
      throw std::runtime_error("socket frame length out of range");
    std::uint8_t body[kMaxBody];
    read_exact(body, len, /*eof_ok=*/false);
    return decode_body(body, len);
  }

  void close_send() override { ::shutdown(wfd_, SHUT_WR); }

 private:
  // Reads exactly n bytes. EOF before the first byte returns false when
  // eof_ok; EOF anywhere else is a truncated stream.
  bool read_exact(std::uint8_t* dst, std::size_t n, bool eof_ok) {
    std::size_t got = 0;
    while (got < n) {
      const ssize_t k = ::read(rfd_, dst + got, n - got);
      if (k < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error("socket read failed");
      }
      if (k == 0) {
        if (got == 0 && eof_ok) return false;
        throw std::runtime_error("socket stream truncated mid-frame");
      }
      got += static_cast<std::size_t>(k);
    }
    return true;
  }

  int wfd_ = -1;
  int rfd_ = -1;
};

}  // namespace

std::unique_ptr<Pipe> make_pipe(Transport t) {
  if (t == Transport::Socket) return std::make_unique<SocketPipe>();
  return std::make_unique<ChannelPipe>();
}

// --------------------------------------------------------------------------
// Station logic and the distributed run
// --------------------------------------------------------------------------

int station_outcome(StationId id, double setting, double omega, double eta) {
  if (id == StationId::C) return lhv::outcome_C(eta);
  const double d = canonical_angle(setting);
  if (d == 0.0) return lhv::response(omega, eta);
  return lhv::response(lhv::omega_B_of(omega, eta, d), eta);
}

namespace {

struct EdgeLog {
  const char* from = "";
  const char* to = "";
  std::vector<Frame> frames;  // appended only by the edge's sending thread
};

void log_frame(EdgeLog* log, const Frame& frame) {
  if (log) log->frames.push_back(frame);
}

void source_worker(std::uint64_t n, std::uint64_t seed, Pipe& to_a, Pipe& to_b,
                   Pipe& to_c, EdgeLog* la, EdgeLog* lb, EdgeLog* lc) {
  const std::uint64_t off_u = rng::stream_offset(seed, rng::Stream::HiddenU);
  const std::uint64_t off_v = rng::stream_offset(seed, rng::Stream::HiddenV);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng::to_unit(rng::counter_word(off_u, i));
    const double v = rng::to_unit(rng::counter_word(off_v, i));
    const lhv::HiddenConfig h = lhv::sample_hidden(u, v);
    const Frame frame = encode_frame(EmissionMsg{i, h.omega, h.eta});
    log_frame(la, frame);
    log_frame(lb, frame);
    log_frame(lc, frame);
    to_a.send(frame);
    to_b.send(frame);
    to_c.send(frame);
  }
  const Frame fin = encode_frame(FinishMsg{n});
  log_frame(la, fin);
  log_frame(lb, fin);
  log_frame(lc, fin);
  to_a.send(fin);
  to_b.send(fin);
  to_c.send(fin);
  to_a.close_send();
  to_b.close_send();
  to_c.close_send();
}

void station_worker(StationId id, Pipe& setting_in, Pipe& emission_in,
                    Pipe& outcome_out, EdgeLog* log) {
  double setting = 0.0;
  {
    const std::optional<Message> m = setting_in.recv();
    if (!m || !std::holds_alternative<SettingMsg>(*m))
      throw std::runtime_error("station expected a setting frame first");
    const SettingMsg& s = std::get<SettingMsg>(*m);
    if (s.station != id)
      throw std::runtime_error("setting frame addressed to another station");
    setting = s.value;
  }
  while (const std::optional<Message> m = emission_in.recv()) {
    if (std::holds_alternative<EmissionMsg>(*m)) {
      const EmissionMsg& e = std::get<EmissionMsg>(*m);
      const OutcomeMsg out{
          e.trial, id,
          static_cast<std::int8_t>(station_outcome(id, setting, e.omega, e.eta))};
      const Frame frame = encode_frame(out);
      log_frame(log, frame);
      outcome_out.send(frame);
    } else if (std::holds_alternative<FinishMsg>(*m)) {
      const Frame frame = encode_frame(*m);
      log_frame(log, frame);
      outcome_out.send(frame);
      break;
    } else {
      throw std::runtime_error("unexpected frame type on emission pipe");
    }
  }
  outcome_out.close_send();
}

void collector_worker(Pipe& in, std::vector<OutcomeMsg>& sink,
                      std::uint64_t& finish_n) {
  while (const std::optional<Message> m = in.recv()) {
    if (std::holds_alternative<OutcomeMsg>(*m)) {
      sink.push_back(std::get<OutcomeMsg>(*m));
    } else if (std::holds_alternative<FinishMsg>(*m)) {
      finish_n = std::get<FinishMsg>(*m).n_trials;
      break;
    } else {
      throw std::runtime_error("unexpected frame type on outcome pipe");
    }
  }
}

void audit_note(TrafficAudit& audit, const std::string& note) {
  ++audit.violations;
  if (audit.notes.size() < 8) audit.notes.push_back(note);
}

void audit_edge(TrafficAudit& audit, const EdgeLog& log, StationId endpoint,
                bool is_source_edge, bool is_setting_edge,
                std::uint64_t n_trials) {
  const std::string tag = std::string(log.from) + "->" + log.to + ": ";
  std::uint64_t next_trial = 0;
  for (const Frame& frame : log.frames) {
    ++audit.frames;
    audit.bytes += frame.size();
    Message m;
    try {
      m = decode_frame(frame);
    } catch (const std::exception& ex) {
      audit_note(audit, tag + "undecodable frame: " + ex.what());
      continue;
    }
    if (is_setting_edge) {
      if (!std::holds_alternative<SettingMsg>(m)) {
        audit_note(audit, tag + "non-setting frame on a setting edge");
      } else if (std::get<SettingMsg>(m).station != endpoint) {
        audit_note(audit, tag + "setting addressed to another station");
      }
    } else if (is_source_edge) {
      if (std::holds_alternative<EmissionMsg>(m)) {
        const EmissionMsg& e = std::get<EmissionMsg>(m);
        if (e.trial != next_trial++)
          audit_note(audit, tag + "emission trial index out of order");
      } else if (std::holds_alternative<FinishMsg>(m)) {
        if (std::get<FinishMsg>(m).n_trials != n_trials)
          audit_note(audit, tag + "finish count differs from the trial count");
      } else {
        audit_note(audit, tag + "unexpected frame type on an emission edge");
      }
    } else {  // outcome edge
      if (std::holds_alternative<OutcomeMsg>(m)) {
        const OutcomeMsg& o = std::get<OutcomeMsg>(m);
        if (o.station != endpoint)
          audit_note(audit, tag + "outcome claims another station");
        if (o.value != 1 && o.value != -1)
          audit_note(audit, tag + "outcome value not in {-1,+1}");
        if (o.trial != next_trial++)
          audit_note(audit, tag + "outcome trial index out of order");
      } else if (!std::holds_alternative<FinishMsg>(m)) {
        audit_note(audit, tag + "unexpected frame type on an outcome edge");
      }
    }
  }
  if (is_setting_edge && log.frames.size() != 1)
    audit_note(audit, tag + "expected exactly one setting frame");
  if (!is_setting_edge && log.frames.size() != n_trials + 1)
    audit_note(audit, tag + "frame count differs from trials + finish");
}

}  // namespace

kernels::TrialCounts counts_from_outcomes(const std::vector<std::int8_t>& a,
                                          const std::vector<std::int8_t>& b,
                                          const std::vector<std::int8_t>& c) {
  if (a.size() != b.size() || a.size() != c.size())
    throw std::invalid_argument("outcome vectors differ in length");
  kernels::TrialCounts t{};
  t.trials = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t sa = a[i], sb = b[i], sc = c[i];
    t.sum_a += sa;
    t.sum_b += sb;
    t.sum_c += sc;
    t.sum_ab += sa * sb;
    t.sum_bc += sb * sc;
    t.sum_ca += sc * sa;
    t.sum_abc += sa * sb * sc;
    if (sc > 0) {  // station C reports the sign of eta exactly
      ++t.eta_pos;
      t.sum_ab_eta_pos += sa * sb;
    }
  }
  return t;
}

DistributedResult run_distributed(const DistributedConfig& cfg) {
  const double set_a = canonical_angle(cfg.setting_a);
  const double set_b = canonical_angle(cfg.setting_b);
  const double set_c = canonical_angle(cfg.setting_c);

  // Nine directed edges: emissions to each station, one setting to each
  // station, and each station's outcomes to its collector.
  std::unique_ptr<Pipe> src_a = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> src_b = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> src_c = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> op_a = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> op_b = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> op_c = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> out_a = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> out_b = make_pipe(cfg.transport);
  std::unique_ptr<Pipe> out_c = make_pipe(cfg.transport);

  EdgeLog logs[9] = {{"source", "A"}, {"source", "B"}, {"source", "C"},
                     {"operator", "A"}, {"operator", "B"}, {"operator", "C"},
                     {"A", "collector"}, {"B", "collector"}, {"C", "collector"}};
  const bool audit = cfg.audit_traffic;
  EdgeLog* lg = audit ? logs : nullptr;

  {  // settings go out before anything runs
    const Frame fa = encode_frame(SettingMsg{StationId::A, set_a});
    const Frame fb = encode_frame(SettingMsg{StationId::B, set_b});
    const Frame fc = encode_frame(SettingMsg{StationId::C, set_c});
    if (audit) {
      logs[3].frames.push_back(fa);
      logs[4].frames.push_back(fb);
      logs[5].frames.push_back(fc);
    }
    op_a->send(fa);
    op_b->send(fb);
    op_c->send(fc);
    op_a->close_send();
    op_b->close_send();
    op_c->close_send();
  }

  std::vector<OutcomeMsg> got_a, got_b, got_c;
  got_a.reserve(cfg.n_trials);
  got_b.reserve(cfg.n_trials);
  got_c.reserve(cfg.n_trials);
  std::uint64_t fin_a = 0, fin_b = 0, fin_c = 0;

  std::exception_ptr errors[7] = {};
  const auto guarded = [&errors](int slot, auto fn) {
    return [slot, fn = std::move(fn), &errors]() mutable {
      try {
        fn();
      } catch (...) {
        errors[slot] = std::current_exception();
      }
    };
  };

  std::thread threads[7] = {
      std::thread(guarded(0, [&] {
        source_worker(cfg.n_trials, cfg.seed, *src_a, *src_b, *src_c,
                      lg ? &logs[0] : nullptr, lg ? &logs[1] : nullptr,
                      lg ? &logs[2] : nullptr);
      })),
      std::thread(guarded(1, [&] {
        station_worker(StationId::A, *op_a, *src_a, *out_a,
                       lg ? &logs[6] : nullptr);
      })),
      std::thread(guarded(2, [&] {
        station_worker(StationId::B, *op_b, *src_b, *out_b,
                       lg ? &logs[7] : nullptr);
      })),
      std::thread(guarded(3, [&] {
        station_worker(StationId::C, *op_c, *src_c, *out_c,
                       lg ? &logs[8] : nullptr);
      })),
      std::thread(guarded(4, [&] { collector_worker(*out_a, got_a, fin_a); })),
      std::thread(guarded(5, [&] { collector_worker(*out_b, got_b, fin_b); })),
      std::thread(guarded(6, [&] { collector_worker(*out_c, got_c, fin_c); })),
  };
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  const std::uint64_t n = cfg.n_trials;
  if (fin_a != n || fin_b != n || fin_c != n || got_a.size() != n ||
      got_b.size() != n || got_c.size() != n)
    throw std::runtime_error("collector counts disagree with the trial count");

  DistributedResult res;
  res.a.resize(n);
  res.b.resize(n);
  res.c.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (got_a[i].trial != i || got_b[i].trial != i || got_c[i].trial != i)
      throw std::runtime_error("outcomes arrived out of trial order");
    res.a[i] = got_a[i].value;
    res.b[i] = got_b[i].value;
    res.c[i] = got_c[i].value;
  }
  res.counts = counts_from_outcomes(res.a, res.b, res.c);
  res.report = sim::report_from_counts(res.counts);

  res.audit.enabled = audit;
  if (audit) {
    const StationId endpoints[9] = {StationId::A, StationId::B, StationId::C,
                                    StationId::A, StationId::B, StationId::C,
                                    StationId::A, StationId::B, StationId::C};
    for (int e = 0; e < 9; ++e)
      audit_edge(res.audit, logs[e], endpoints[e], e < 3, e >= 3 && e < 6, n);
  }
  return res;
}

CompositionReport composition_check(double delta1, double delta2,
                                    std::uint64_t n, std::uint64_t seed) {
  CompositionReport rep;
  rep.delta1 = canonical_angle(delta1);
  rep.delta2 = canonical_angle(delta2);
  rep.delta_sum = canonical_angle(delta1 + delta2);
  rep.n = n;
  if (n == 0) return rep;

  const auto chart = [](double w, double e, double d) {
    return d == 0.0 ? w : lhv::omega_B_of(w, e, d);
  };
  const std::uint64_t off_u = rng::stream_offset(seed, rng::Stream::HiddenU);
  const std::uint64_t off_v = rng::stream_offset(seed, rng::Stream::HiddenV);
  std::uint64_t agree = 0;
  std::int64_t sum_direct = 0;
  std::int64_t sum_chained = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng::to_unit(rng::counter_word(off_u, i));
    const double v = rng::to_unit(rng::counter_word(off_v, i));
    const lhv::HiddenConfig h = lhv::sample_hidden(u, v);
    const double direct = chart(h.omega, h.eta, rep.delta_sum);
    const double chained =
        chart(chart(h.omega, h.eta, rep.delta1), h.eta, rep.delta2);
    const double gap = circular_distance(direct, chained);
    if (gap < 1e-9) ++agree;
    if (gap > rep.max_gap) rep.max_gap = gap;
    const int sa = lhv::response(h.omega, h.eta);
    const int sc = lhv::outcome_C(h.eta);
    sum_direct += sa * lhv::response(direct, h.eta) * sc;
    sum_chained += sa * lhv::response(chained, h.eta) * sc;
  }
  rep.agree_fraction = static_cast<double>(agree) / static_cast<double>(n);
  rep.correlator_direct =
      static_cast<double>(sum_direct) / static_cast<double>(n);
  rep.correlator_chained =
      static_cast<double>(sum_chained) / static_cast<double>(n);
  rep.correlator_gap = std::fabs(rep.correlator_direct - rep.correlator_chained);
  return rep;
}

}  // namespace ghzlab::stations
