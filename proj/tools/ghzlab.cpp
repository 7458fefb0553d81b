#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzlab/angle.hpp"
#include "ghzlab/io.hpp"
#include "ghzlab/kernels.hpp"
#include "ghzlab/qm.hpp"
#include "ghzlab/quadchecks.hpp"
#include "ghzlab/reports.hpp"
#include "ghzlab/stations.hpp"
#include "ghzlab/trials.hpp"
#include "ghzlab/verify.hpp"

namespace {

namespace io = ghzlab::io;
namespace sim = ghzlab::sim;
namespace lhv = ghzlab::lhv;
namespace qm = ghzlab::qm;
namespace kernels = ghzlab::kernels;
namespace stations = ghzlab::stations;
using ghzlab::canonical_angle;
using ghzlab::kPi;
using ghzlab::kTwoPi;

// Exit codes: 0 success, 1 invariant/model failure, 2 usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double to_rad(double v, bool degrees) { return degrees ? v * kPi / 180.0 : v; }

double parse_num(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw UsageError(std::string("--delta-grid: bad ") + what + " '" + s + "'");
  }
}

// "N": N points covering the circle half-open; "start:stop:count": inclusive.
std::vector<double> parse_grid(const std::string& spec, bool degrees) {
  const std::size_t c1 = spec.find(':');
  if (c1 == std::string::npos) {
    const double raw = parse_num(spec, "count");
    const int n = static_cast<int>(raw);
    if (n < 1 || raw != n)
      throw UsageError("--delta-grid: count must be a positive integer");
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
      out[k] = canonical_angle(-kPi + k * kTwoPi / n);
    return out;
  }
  const std::size_t c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw UsageError("--delta-grid: expected count or start:stop:count");
  const double a = to_rad(parse_num(spec.substr(0, c1), "start"), degrees);
  const double b = to_rad(parse_num(spec.substr(c1 + 1, c2 - c1 - 1), "stop"), degrees);
  const double raw_n = parse_num(spec.substr(c2 + 1), "count");
  const int n = static_cast<int>(raw_n);
  if (n < 1 || raw_n != n)
    throw UsageError("--delta-grid: count must be a positive integer");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = canonical_angle(a);
    return out;
  }
  for (int k = 0; k < n; ++k)
    out[k] = canonical_angle(a + k * (b - a) / (n - 1));
  return out;
}

kernels::SimdMode parse_simd(const std::string& s) {
  if (s == "auto") return kernels::SimdMode::Auto;
  if (s == "scalar") return kernels::SimdMode::Scalar;
  if (s == "avx2") return kernels::SimdMode::Avx2;
  throw UsageError("--simd: expected auto, scalar, or avx2");
}

io::Format parse_format(const std::string& s) {
  if (s == "csv") return io::Format::Csv;
  if (s == "json") return io::Format::Json;
  throw UsageError("--format: expected csv or json");
}

struct CommonArgs {
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out = "-";
  bool degrees = false;
  std::string simd = "auto";
  int workers = 1;
};

void add_common(CLI::App* sub, CommonArgs& a, std::uint64_t default_trials) {
  a.trials = default_trials;
  sub->add_option("-n,--trials", a.trials, "Number of trials")
      ->capture_default_str();
  sub->add_option("--seed", a.seed, "Hidden-stream seed")->capture_default_str();
  sub->add_option("--format", a.format, "Output format: csv or json")
      ->capture_default_str();
  sub->add_option("-o,--out", a.out, "Output file, '-' for stdout")
      ->capture_default_str();
  sub->add_flag("--degrees", a.degrees, "Interpret angle inputs as degrees");
}

void add_simd(CLI::App* sub, CommonArgs& a) {
  sub->add_option("--simd", a.simd, "Counting kernel: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
  sub->add_option("--workers", a.workers, "Worker threads for the kernel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void put_common_config(io::RunConfig& cfg, const char* command,
                       const CommonArgs& a) {
  cfg.set("command", command);
  cfg.set("version", io::kVersion);
  cfg.set("trials", a.trials);
  cfg.set("seed", a.seed);
}

int cmd_verify(const CommonArgs& a, int delta_grid, const std::string& corrupt,
               const std::string& format) {
  sim::VerifyOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.delta_grid = delta_grid;
  opt.simd = parse_simd(a.simd);
  opt.corrupt = corrupt;
  const std::vector<sim::CheckResult> results = sim::run_verify(opt);
  const bool ok = sim::all_pass(results);

  if (format == "text") {
    std::string out;
    for (const sim::CheckResult& r : results) {
      out += r.pass ? "[PASS] " : "[FAIL] ";
      out += r.name;
      for (std::size_t k = r.name.size(); k < 34; ++k) out += ' ';
      out += " value=" + io::fmt(r.value) + " threshold=" + io::fmt(r.threshold);
      if (!r.note.empty()) out += "  (" + r.note + ")";
      out += '\n';
    }
    out += ok ? "verify: all checks passed\n" : "verify: failures present\n";
    io::write_output(a.out, out);
  } else {
    io::Table t;
    t.columns = {"check", "pass", "value", "threshold", "note"};
    for (const sim::CheckResult& r : results)
      t.add_row({io::cell(r.name), io::cell(r.pass), io::cell(r.value),
                 io::cell(r.threshold), io::cell(r.note)});
    io::RunConfig cfg;
    put_common_config(cfg, "verify", a);
    cfg.set("delta_grid", std::uint64_t(delta_grid));
    cfg.set("simd", a.simd);
    if (!corrupt.empty()) cfg.set("corrupt", corrupt);
    cfg.set("all_pass", ok);
    io::write_output(a.out, io::render(parse_format(format), t, cfg));
  }
  return ok ? 0 : 1;
}

int cmd_sweep(const CommonArgs& a, const std::string& grid_spec, double phi_in) {
  const double phi = to_rad(phi_in, a.degrees);
  const std::vector<double> grid = parse_grid(grid_spec, a.degrees);
  const kernels::SimdMode mode = parse_simd(a.simd);
  const qm::State state = qm::ghz_state(3, phi);

  io::Table t;
  t.columns = {"delta", "mc", "quad", "oracle", "stderr", "n"};
  for (const double d : grid) {
    const double de = sim::SettingTriple{d, 0.0, 0.0, phi}.effective_delta();
    const sim::CorrelatorReport r =
        sim::mc_correlators(de, a.trials, a.seed, mode, a.workers);
    const double quad = sim::quadrature_triple_correlation(de);
    const double oracle = qm::expectation(
        state, {qm::SiteObservable::xy(d), qm::SiteObservable::xy(0.0),
                qm::SiteObservable::xy(0.0)});
    t.add_row({io::cell(d), io::cell(r.e_abc), io::cell(quad), io::cell(oracle),
               io::cell(r.se_abc), io::cell(a.trials)});
  }
  io::RunConfig cfg;
  put_common_config(cfg, "sweep", a);
  cfg.set("phi", phi);
  cfg.set("delta_grid", grid_spec);
  cfg.set("simd", a.simd);
  cfg.set("workers", std::uint64_t(a.workers));
  io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
  return 0;
}

int cmd_paradox(const CommonArgs& a, double phi_in) {
  const double phi = to_rad(phi_in, a.degrees);
  const sim::ParadoxReport rep =
      sim::ghz_paradox_report(phi, a.trials, a.seed, parse_simd(a.simd));

  io::Table t;
  t.columns = {"setting", "alpha",    "beta",           "gamma",
               "delta",   "product",  "stderr",         "constant",
               "value",   "oracle"};
  for (const sim::ParadoxLine& line : rep.lines)
    t.add_row({io::cell(line.label), io::cell(line.settings.alpha),
               io::cell(line.settings.beta), io::cell(line.settings.gamma),
               io::cell(line.delta_eff), io::cell(line.product_mean),
               io::cell(line.product_stderr), io::cell(line.constant),
               io::cell(std::int64_t(line.constant_value)),
               io::cell(line.oracle)});
  io::RunConfig cfg;
  put_common_config(cfg, "paradox", a);
  cfg.set("phi", phi);
  cfg.set("simd", a.simd);
  cfg.set("mermin", rep.mermin);
  cfg.set("mermin_oracle", rep.mermin_oracle);
  cfg.set("classical_bound_violated", rep.classical_bound_violated);
  io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
  return 0;
}

int cmd_compare(const CommonArgs& a, int grid_n, double phi_in,
                const std::string& method_name) {
  const double phi = to_rad(phi_in, a.degrees);
  if (grid_n < 1) throw UsageError("--grid: count must be >= 1");
  std::vector<double> axis(grid_n);
  for (int k = 0; k < grid_n; ++k)
    axis[k] = canonical_angle(-kPi + k * kTwoPi / grid_n);
  const sim::Method method = method_name == "mc" ? sim::Method::MonteCarlo
                                                 : sim::Method::Quadrature;
  const sim::CompareReport rep = compare_with_oracle(
      axis, phi, method, a.trials, a.seed, parse_simd(a.simd));

  io::Table t;
  t.columns = {"alpha", "beta", "gamma", "delta", "model", "oracle", "diff"};
  for (const sim::ComparePoint& p : rep.points)
    t.add_row({io::cell(p.alpha), io::cell(p.beta), io::cell(p.gamma),
               io::cell(p.delta_eff), io::cell(p.model), io::cell(p.oracle),
               io::cell(p.diff)});
  io::RunConfig cfg;
  put_common_config(cfg, "compare", a);
  cfg.set("phi", phi);
  cfg.set("method", sim::method_name(method));
  cfg.set("grid", std::uint64_t(grid_n));
  cfg.set("max_abs_diff", rep.max_abs_diff);
  cfg.set("joint_total_variation", rep.joint.total_variation);
  io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
  return 0;
}

int cmd_stations(const CommonArgs& a, double alpha_in, double beta_in,
                 double gamma_in, const std::string& transport_name,
                 bool compose) {
  const double alpha = to_rad(alpha_in, a.degrees);
  const double beta = to_rad(beta_in, a.degrees);
  const double gamma = to_rad(gamma_in, a.degrees);

  if (compose) {
    const stations::CompositionReport rep =
        stations::composition_check(alpha, beta, a.trials, a.seed);
    io::Table t;
    t.columns = {"delta1",         "delta2",     "delta_sum",
                 "n",              "agree_frac", "max_gap",
                 "direct",         "chained",    "gap"};
    t.add_row({io::cell(rep.delta1), io::cell(rep.delta2),
               io::cell(rep.delta_sum), io::cell(rep.n),
               io::cell(rep.agree_fraction), io::cell(rep.max_gap),
               io::cell(rep.correlator_direct), io::cell(rep.correlator_chained),
               io::cell(rep.correlator_gap)});
    io::RunConfig cfg;
    put_common_config(cfg, "stations", a);
    cfg.set("mode", "compose");
    io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
    return 0;
  }

  stations::DistributedConfig dc;
  dc.setting_a = alpha;
  dc.setting_b = beta;
  dc.setting_c = gamma;
  dc.n_trials = a.trials;
  dc.seed = a.seed;
  dc.transport = transport_name == "socket" ? stations::Transport::Socket
                                            : stations::Transport::Channel;
  dc.audit_traffic = true;
  const stations::DistributedResult res = stations::run_distributed(dc);
  const sim::CorrelatorReport& r = res.report;

  io::Table t;
  t.columns = {"n",    "e_a",  "e_b",   "e_c",          "e_ab",
               "e_bc", "e_ca", "e_abc", "stderr",       "eta_pos_frac",
               "e_ab_eta_pos", "frames", "bytes", "violations"};
  t.add_row({io::cell(r.n), io::cell(r.e_a), io::cell(r.e_b), io::cell(r.e_c),
             io::cell(r.e_ab), io::cell(r.e_bc), io::cell(r.e_ca),
             io::cell(r.e_abc), io::cell(r.se_abc), io::cell(r.eta_pos_frac),
             io::cell(r.e_ab_eta_pos), io::cell(res.audit.frames),
             io::cell(res.audit.bytes), io::cell(res.audit.violations)});
  io::RunConfig cfg;
  put_common_config(cfg, "stations", a);
  cfg.set("setting_a", canonical_angle(alpha));
  cfg.set("setting_b", canonical_angle(beta));
  cfg.set("setting_c", canonical_angle(gamma));
  cfg.set("transport", transport_name);
  io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
  for (const std::string& note : res.audit.notes)
    std::fprintf(stderr, "audit: %s\n", note.c_str());
  return res.audit.violations == 0 ? 0 : 1;
}

int cmd_sample(const CommonArgs& a, double alpha_in, double beta_in,
               double gamma_in, double phi_in) {
  const double phi = to_rad(phi_in, a.degrees);
  sim::ScheduleSpec sched;
  sched.settings = {sim::XYSettings{to_rad(alpha_in, a.degrees),
                                    to_rad(beta_in, a.degrees),
                                    to_rad(gamma_in, a.degrees)}};
  io::Table t;
  t.columns = {"trial", "omega", "eta", "s_a", "s_b", "s_c", "region"};
  sim::for_each_trial(sched, a.trials, phi, a.seed, [&](const sim::TrialRecord& r) {
    t.add_row({io::cell(r.index), io::cell(r.omega), io::cell(r.eta),
               io::cell(std::int64_t(r.s_a)), io::cell(std::int64_t(r.s_b)),
               io::cell(std::int64_t(r.s_c)),
               io::cell(lhv::region_name(r.region))});
  });
  io::RunConfig cfg;
  put_common_config(cfg, "sample", a);
  cfg.set("alpha", to_rad(alpha_in, a.degrees));
  cfg.set("beta", to_rad(beta_in, a.degrees));
  cfg.set("gamma", to_rad(gamma_in, a.degrees));
  cfg.set("phi", phi);
  io::write_output(a.out, io::render(parse_format(a.format), t, cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local hidden-variable laboratory for the three-particle GHZ state"};
  app.set_version_flag("--version", std::string(io::kVersion));
  app.require_subcommand(1);

  // verify
  CommonArgs va;
  int v_delta_grid = 64;
  std::string v_corrupt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the model invariant battery and report pass/fail");
  add_common(verify, va, 1'000'000);
  add_simd(verify, va);
  va.format = "text";
  verify->get_option("--format")->default_str("text")->description(
      "Output format: text, csv, or json");
  verify->add_option("--delta-grid", v_delta_grid,
                     "Number of deltas for grid invariants")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--corrupt", v_corrupt,
                     "Deliberately damage one ingredient (transform, response)")
      ->check(CLI::IsMember({"transform", "response"}));

  // sweep
  CommonArgs sa;
  std::string s_grid = "64";
  double s_phi = 0.0;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Triple correlator vs effective delta: model and oracle");
  add_common(sweep, sa, 1'000'000);
  add_simd(sweep, sa);
  sweep->add_option("--delta-grid", s_grid,
                    "Delta grid: count, or start:stop:count")
      ->capture_default_str();
  sweep->add_option("--phi", s_phi, "State phase")->capture_default_str();

  // paradox
  CommonArgs pa;
  double p_phi = 0.0;
  CLI::App* paradox = app.add_subcommand(
      "paradox", "Four-setting parity runs and the Mermin combination");
  add_common(paradox, pa, 1'000'000);
  add_simd(paradox, pa);
  paradox->add_option("--phi", p_phi, "State phase")->capture_default_str();

  // compare
  CommonArgs ca;
  int c_grid = 5;
  double c_phi = 0.0;
  std::string c_method = "quad";
  CLI::App* compare = app.add_subcommand(
      "compare", "Model vs quantum oracle over a settings grid");
  add_common(compare, ca, 1'000'000);
  add_simd(compare, ca);
  compare->add_option("--grid", c_grid, "Points per settings axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--phi", c_phi, "State phase")->capture_default_str();
  compare->add_option("--method", c_method, "Model route: quad or mc")
      ->check(CLI::IsMember({"quad", "mc"}))
      ->capture_default_str();

  // stations
  CommonArgs ta;
  double t_alpha = 0.0, t_beta = 0.0, t_gamma = 0.0;
  std::string t_transport = "channel";
  bool t_compose = false;
  CLI::App* station_cmd = app.add_subcommand(
      "stations", "Message-passing run: source, three stations, collectors");
  add_common(station_cmd, ta, 1'000'000);
  station_cmd->add_option("--alpha", t_alpha, "Station A chart setting")
      ->capture_default_str();
  station_cmd->add_option("--beta", t_beta, "Station B chart setting")
      ->capture_default_str();
  station_cmd->add_option("--gamma", t_gamma, "Station C setting (unused by C)")
      ->capture_default_str();
  station_cmd->add_option("--transport", t_transport,
                          "Frame transport: channel or socket")
      ->check(CLI::IsMember({"channel", "socket"}))
      ->capture_default_str();
  station_cmd->add_flag(
      "--compose", t_compose,
      "Probe chart composition: alpha then beta vs alpha+beta");

  // sample
  CommonArgs ma;
  double m_alpha = 0.0, m_beta = 0.0, m_gamma = 0.0, m_phi = 0.0;
  CLI::App* sample = app.add_subcommand(
      "sample", "Dump per-trial hidden configs and outcomes");
  add_common(sample, ma, 32);
  sample->add_option("--alpha", m_alpha, "Station A analyzer angle")
      ->capture_default_str();
  sample->add_option("--beta", m_beta, "Station B analyzer angle")
      ->capture_default_str();
  sample->add_option("--gamma", m_gamma, "Station C analyzer angle")
      ->capture_default_str();
  sample->add_option("--phi", m_phi, "State phase")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(va, v_delta_grid, v_corrupt, va.format);
    if (*sweep) return cmd_sweep(sa, s_grid, s_phi);
    if (*paradox) return cmd_paradox(pa, p_phi);
    if (*compare) return cmd_compare(ca, c_grid, c_phi, c_method);
    if (*station_cmd)
      return cmd_stations(ta, t_alpha, t_beta, t_gamma, t_transport, t_compose);
    if (*sample) return cmd_sample(ma, m_alpha, m_beta, m_gamma, m_phi);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
