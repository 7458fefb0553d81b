#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghzlab/kernels.hpp"
#include "ghzlab/trials.hpp"

namespace ghzlab::stations {

enum class StationId : std::uint8_t { A = 0, B = 1, C = 2 };
const char* station_name(StationId id);

// ---------------------------------------------------------------------------
// Wire protocol. One frame = [u32 length, little endian][u8 type][payload].
// The length counts the type byte plus the payload. All integers little
// endian, all angles IEEE-754 binary64 bit patterns.
// ---------------------------------------------------------------------------

enum class MsgType : std::uint8_t {
  Emission = 1,  // u64 trial, f64 omega, f64 eta            (len 25)
  Setting = 2,   // u8 station, f64 setting                  (len 10)
  Outcome = 3,   // u64 trial, u8 station, i8 value          (len 11)
  Finish = 4,    // u64 n_trials                              (len 9)
};

struct EmissionMsg {
  std::uint64_t trial = 0;
  double omega = 0.0;
  double eta = 0.0;
  bool operator==(const EmissionMsg&) const = default;
};

struct SettingMsg {
  StationId station = StationId::A;
  double value = 0.0;
  bool operator==(const SettingMsg&) const = default;
};

struct OutcomeMsg {
  std::uint64_t trial = 0;
  StationId station = StationId::A;
  std::int8_t value = 0;
  bool operator==(const OutcomeMsg&) const = default;
};

struct FinishMsg {
  std::uint64_t n_trials = 0;
  bool operator==(const FinishMsg&) const = default;
};

using Message = std::variant<EmissionMsg, SettingMsg, OutcomeMsg, FinishMsg>;
using Frame = std::vector<std::uint8_t>;  // full wire bytes incl. prefix

Frame encode_frame(const Message& msg);
/// Decode the body of a frame (the bytes after the length prefix).
/// Throws std::invalid_argument on unknown type or length mismatch.
Message decode_body(const std::uint8_t* data, std::size_t size);
Message decode_frame(const Frame& frame);

// ---------------------------------------------------------------------------
// Transports. A Pipe is one directed edge; exactly one thread sends and one
// receives. The channel transport is an in-process queue, the socket
// transport a Unix-domain stream socket pair carrying the same frames.
// ---------------------------------------------------------------------------

enum class Transport : std::uint8_t { Channel = 0, Socket = 1 };
const char* transport_name(Transport t);

class Pipe {
 public:
  virtual ~Pipe() = default;
  virtual void send(const Frame& frame) = 0;
  virtual std::optional<Message> recv() = 0;  // nullopt once closed and drained
  virtual void close_send() = 0;
};

std::unique_ptr<Pipe> make_pipe(Transport t);

// ---------------------------------------------------------------------------
// Station logic. A station owns nothing but its identity, its one setting
// message, and the emissions it receives; its outcome is a pure function of
// those. Station C ignores its setting entirely.
// ---------------------------------------------------------------------------

int station_outcome(StationId id, double setting, double omega, double eta);

struct TrafficAudit {
  bool enabled = false;
  std::uint64_t frames = 0;
  std::uint64_t bytes = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> notes;  // one entry per violation found

  bool operator==(const TrafficAudit&) const = default;
};

struct DistributedConfig {
  double setting_a = 0.0;
  double setting_b = 0.0;
  double setting_c = 0.0;  // delivered but never used by C
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  Transport transport = Transport::Channel;
  bool audit_traffic = true;
};

/// Outcomes in trial order plus the correlator report assembled by the
/// coordinator. The coordinator never sees a hidden config, so the report
/// carries no region occupancy (those entries stay zero).
struct DistributedResult {
  std::vector<std::int8_t> a, b, c;
  kernels::TrialCounts counts;
  sim::CorrelatorReport report;
  TrafficAudit audit;

  bool operator==(const DistributedResult&) const = default;
};

DistributedResult run_distributed(const DistributedConfig& cfg);

kernels::TrialCounts counts_from_outcomes(const std::vector<std::int8_t>& a,
                                          const std::vector<std::int8_t>& b,
                                          const std::vector<std::int8_t>& c);

// ---------------------------------------------------------------------------
// Chart composition probe: applying the station chart at delta1 and then at
// delta2 is not the chart at delta1+delta2, even though every chart preserves
// the hidden measure. This quantifies the pointwise gap and the correlator
// each route produces.
// ---------------------------------------------------------------------------

struct CompositionReport {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double delta_sum = 0.0;  // canonical(delta1 + delta2)
  std::uint64_t n = 0;
  double agree_fraction = 0.0;  // trials where both routes land together
  double max_gap = 0.0;         // largest circular distance between routes
  double correlator_direct = 0.0;
  double correlator_chained = 0.0;
  double correlator_gap = 0.0;
};

CompositionReport composition_check(double delta1, double delta2,
                                    std::uint64_t n, std::uint64_t seed);

}  // namespace ghzlab::stations
