#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/entropy.hpp"
#include "qwalk/io.hpp"
#include "qwalk/two_particle.hpp"

namespace qwalk::cli {

enum class Mode { Single, Two, Ctqw, Classical, Sweep };
enum class Format { Csv, Json };
enum class InitCoin { Up, Down, Plus, PlusI };

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kIoError = 2, kInvariantFailure = 3 };

/// Raised for anything the user got wrong on the command line. `exit_code` is
/// 0 only for an explicit --help request.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg, int exit_code = kUsageError)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct RunConfig {
  Mode mode = Mode::Single;
  Topology topology = Topology::line();
  std::string topology_spec = "line";
  std::vector<Position> sweep_periods;
  CoinOperator coin = hadamard();
  std::string coin_spec = "hadamard";
  InitCoin init_coin = InitCoin::Up;
  InitialStateKind state = InitialStateKind::Product;
  bool sweep_two_particle = false;
  std::size_t steps = 100;
  double gamma = 1.0;
  double time = 0.0;
  Format format = Format::Csv;
  std::optional<std::string> plot;
  bool trace = false;
  std::optional<std::string> out;
};

// ---------------------------------------------------------------------------
// Value parsers for the flag grammar.

namespace detail {

template <typename T>
T parse_number(std::string_view text, const std::string& flag) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw UsageError(flag + ": cannot parse '" + std::string(text) + "' as a number");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw UsageError(flag + ": value must be finite");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

}  // namespace detail

inline Topology parse_topology(const std::string& spec) {
  const std::string flag = "--topology";
  if (spec == "line") return Topology::line();
  std::string_view sv = spec;
  if (sv.starts_with("cycle:")) {
    const auto n = detail::parse_number<std::int64_t>(sv.substr(6), flag);
    if (n < 3) throw UsageError(flag + ": cycle size must be >= 3, got " + std::to_string(n));
    return Topology::cycle(n);
  }
  if (sv.starts_with("absorbing:")) {
    const auto parts = detail::split(sv.substr(10), ',');
    if (parts.size() != 2) throw UsageError(flag + ": expected absorbing:<left>,<right>");
    const auto left = detail::parse_number<std::int64_t>(parts[0], flag);
    const auto right = detail::parse_number<std::int64_t>(parts[1], flag);
    if (!(left < 0 && 0 < right)) throw UsageError(flag + ": absorbing sites must satisfy left < 0 < right");
    return Topology::absorbing(left, right);
  }
  throw UsageError(flag + ": expected line, cycle:<n> or absorbing:<left>,<right>, got '" + spec + "'");
}

inline CoinOperator parse_coin(const std::string& spec) {
  const std::string flag = "--coin";
  if (spec == "hadamard") return hadamard();
  std::string_view sv = spec;
  if (sv.starts_with("su2:")) {
    const auto parts = detail::split(sv.substr(4), ',');
    if (parts.size() != 3) throw UsageError(flag + ": expected su2:<theta>,<phi>,<lambda>");
    return su2(detail::parse_number<double>(parts[0], flag), detail::parse_number<double>(parts[1], flag),
               detail::parse_number<double>(parts[2], flag));
  }
  throw UsageError(flag + ": expected hadamard or su2:<theta>,<phi>,<lambda>, got '" + spec + "'");
}

inline std::pair<Complex, Complex> coin_amplitudes(InitCoin c) {
  const double s = 1.0 / std::numbers::sqrt2;
  switch (c) {
    case InitCoin::Up: return {1.0, 0.0};
    case InitCoin::Down: return {0.0, 1.0};
    case InitCoin::Plus: return {s, s};
    case InitCoin::PlusI: return {s, Complex(0.0, s)};
  }
  return {1.0, 0.0};
}

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::Single: return "single";
    case Mode::Two: return "two";
    case Mode::Ctqw: return "ctqw";
    case Mode::Classical: return "classical";
    case Mode::Sweep: return "sweep";
  }
  return {};
}

inline std::string to_string(InitCoin c) {
  switch (c) {
    case InitCoin::Up: return "up";
    case InitCoin::Down: return "down";
    case InitCoin::Plus: return "plus";
    case InitCoin::PlusI: return "plus-i";
  }
  return {};
}

inline std::string to_string(InitialStateKind k) {
  switch (k) {
    case InitialStateKind::Product: return "product";
    case InitialStateKind::Symmetric: return "symmetric";
    case InitialStateKind::Antisymmetric: return "antisymmetric";
  }
  return {};
}

/// Parses `walk <subcommand> [flags]`; argv[0] is the program name.
/// Throws UsageError naming the offending flag.
inline RunConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Exact simulator for discrete- and continuous-time quantum walks", "walk"};
  app.require_subcommand(1, 1);

  std::string topology, coin, init_coin, state, format = "csv", plot, out;
  std::int64_t steps = 100;
  double gamma = 1.0, time = 0.0;
  bool trace = false;

  const std::map<std::string, InitCoin> coin_names{
      {"up", InitCoin::Up}, {"down", InitCoin::Down}, {"plus", InitCoin::Plus}, {"plus-i", InitCoin::PlusI}};
  const std::map<std::string, InitialStateKind> state_names{{"product", InitialStateKind::Product},
                                                            {"symmetric", InitialStateKind::Symmetric},
                                                            {"antisymmetric", InitialStateKind::Antisymmetric}};

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--plot", plot, "write an SVG plot to this file");
    sub->add_option("--out", out, "data file (default: stdout)");
  };
  auto add_walk = [&](CLI::App* sub, bool with_trace) {
    sub->add_option("--topology", topology, "line | cycle:<n> | absorbing:<left>,<right>");
    sub->add_option("--coin", coin, "hadamard | su2:<theta>,<phi>,<lambda>");
    sub->add_option("--steps", steps, "number of walk steps");
    if (with_trace) sub->add_flag("--trace", trace, "emit every step");
    add_output(sub);
  };

  CLI::App* single = app.add_subcommand("single", "one walker, discrete time");
  add_walk(single, true);
  single->add_option("--init-coin", init_coin, "up | down | plus | plus-i");

  CLI::App* two = app.add_subcommand("two", "two walkers with entangled coins");
  add_walk(two, true);
  two->add_option("--state", state, "product | symmetric | antisymmetric");

  CLI::App* ctqw = app.add_subcommand("ctqw", "continuous-time walk from vertex 0");
  ctqw->add_option("--topology", topology, "line | cycle:<n>");
  ctqw->add_option("--gamma", gamma, "hopping rate");
  ctqw->add_option("--time", time, "evolution time")->required();
  add_output(ctqw);

  CLI::App* classical = app.add_subcommand("classical", "exact fair +-1 random walk");
  classical->add_option("--steps", steps, "number of walk steps");
  add_output(classical);

  CLI::App* sweep = app.add_subcommand("sweep", "period sweep over cycle sizes");
  add_walk(sweep, false);
  sweep->add_option("--init-coin", init_coin, "single walker initial coin");
  sweep->add_option("--state", state, "two walkers initial state");

  std::vector<std::string> args = argv;
  if (args.empty()) args.emplace_back("walk");
  std::vector<char*> raw;
  raw.reserve(args.size());
  for (auto& a : args) raw.push_back(a.data());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), kSuccess);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  cfg.mode = name == "single"  ? Mode::Single
             : name == "two"   ? Mode::Two
             : name == "ctqw"  ? Mode::Ctqw
             : name == "classical" ? Mode::Classical
                               : Mode::Sweep;

  if (steps < 0) throw UsageError("--steps: must be >= 0, got " + std::to_string(steps));
  cfg.steps = static_cast<std::size_t>(steps);
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (!plot.empty()) cfg.plot = plot;
  if (!out.empty()) cfg.out = out;
  cfg.trace = trace;

  if (!coin.empty()) {
    cfg.coin = parse_coin(coin);
    cfg.coin_spec = coin;
  }
  if (!init_coin.empty()) {
    auto it = coin_names.find(init_coin);
    if (it == coin_names.end()) throw UsageError("--init-coin: expected up, down, plus or plus-i, got '" + init_coin + "'");
    cfg.init_coin = it->second;
  }
  if (!state.empty()) {
    auto it = state_names.find(state);
    if (it == state_names.end()) {
      throw UsageError("--state: expected product, symmetric or antisymmetric, got '" + state + "'");
    }
    cfg.state = it->second;
  }

  if (cfg.mode == Mode::Sweep) {
    if (!init_coin.empty() && !state.empty()) throw UsageError("--state and --init-coin are mutually exclusive");
    cfg.sweep_two_particle = !state.empty();
    if (!cfg.out) throw UsageError("--out: sweep writes one file per period and needs a base path");
    if (topology.empty()) {
      cfg.sweep_periods = {8, 16, 64, 100};
    } else {
      std::string_view sv = topology;
      if (!sv.starts_with("cycle:")) throw UsageError("--topology: sweep expects cycle:<n1>,<n2>,...");
      for (auto part : detail::split(sv.substr(6), ',')) {
        const auto n = detail::parse_number<std::int64_t>(part, "--topology");
        if (n < 3) throw UsageError("--topology: cycle size must be >= 3, got " + std::to_string(n));
        cfg.sweep_periods.push_back(n);
      }
    }
    cfg.topology_spec = topology.empty() ? "cycle:8,16,64,100" : topology;
    return cfg;
  }

  if (!topology.empty()) {
    cfg.topology = parse_topology(topology);
    cfg.topology_spec = topology;
  }
  if (cfg.mode == Mode::Ctqw) {
    if (cfg.topology.is_absorbing()) throw UsageError("--topology: ctqw supports line and cycle:<n> only");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw UsageError("--gamma: must be a positive finite rate");
    if (time < 0.0 || !std::isfinite(time)) throw UsageError("--time: must be finite and >= 0");
    cfg.gamma = gamma;
    cfg.time = time;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Execution

namespace detail {

using Json = nlohmann::ordered_json;

inline constexpr double kClosureTolerance = 1e-12;

struct Emitted {
  std::string data;
  std::optional<std::string> svg;
  bool invariants_ok = true;
};

inline Json config_json(const RunConfig& cfg) {
  Json j;
  j["mode"] = to_string(cfg.mode);
  switch (cfg.mode) {
    case Mode::Single:
    case Mode::Two:
      j["topology"] = cfg.topology.describe();
      j["coin"] = cfg.coin_spec;
      if (cfg.mode == Mode::Single) j["init_coin"] = to_string(cfg.init_coin);
      else j["state"] = to_string(cfg.state);
      j["steps"] = cfg.steps;
      j["trace"] = cfg.trace;
      break;
    case Mode::Ctqw:
      j["topology"] = cfg.topology.describe();
      j["gamma"] = cfg.gamma;
      j["time"] = cfg.time;
      break;
    case Mode::Classical:
      j["steps"] = cfg.steps;
      break;
    case Mode::Sweep:
      break;
  }
  return j;
}

inline Json distribution_json(const Distribution& d) {
  Json arr = Json::array();
  for (const auto& [pos, p] : d.entries) arr.push_back(Json::array({pos, p}));
  return arr;
}

inline Json joint_json(const JointDistribution& d) {
  Json arr = Json::array();
  for (const auto& [ij, p] : d.entries) arr.push_back(Json::array({ij.first, ij.second, p}));
  return arr;
}

inline Json moments_json(const Distribution& d) {
  const MomentSummary m = moments(d);
  return Json{{"mean", m.mean}, {"variance", m.variance}, {"total", m.total}};
}

inline bool closes(double total, double absorbed) { return std::abs(total + absorbed - 1.0) <= kClosureTolerance; }

inline std::string title_for(const RunConfig& cfg) {
  std::ostringstream os;
  os << to_string(cfg.mode) << ' ' << cfg.topology.describe();
  if (cfg.mode == Mode::Single) os << " init=" << to_string(cfg.init_coin);
  if (cfg.mode == Mode::Two) os << " state=" << to_string(cfg.state);
  os << " N=" << cfg.steps;
  return os.str();
}

inline Emitted run_single(const RunConfig& cfg) {
  const auto [up, down] = coin_amplitudes(cfg.init_coin);
  const SingleParticleState init = point_state(cfg.topology, 0, up, down);
  std::vector<StepReport> reports;
  if (cfg.trace) {
    reports = evolve_with_trace(init, cfg.coin, cfg.steps);
  } else {
    reports.push_back({evolve(init, cfg.coin, cfg.steps), cfg.steps, 0.0});
  }

  Emitted e;
  std::ostringstream csv;
  Json trace = Json::array();
  if (cfg.format == Format::Csv) io::write_csv_header(csv, false, cfg.trace);
  for (const auto& r : reports) {
    // Only structurally zero sites are dropped from emitted files.
    const Distribution d = position_distribution(r.state, 0.0);
    e.invariants_ok = e.invariants_ok && closes(d.total(), r.state.absorbed());
    if (cfg.format == Format::Csv) {
      io::write_csv_rows(csv, d, cfg.trace ? std::optional<std::size_t>(r.step_index) : std::nullopt);
    } else if (cfg.trace) {
      Json step{{"step", r.step_index}, {"distribution", distribution_json(d)}};
      if (cfg.topology.is_absorbing()) step["absorbed"] = r.state.absorbed();
      trace.push_back(std::move(step));
    }
  }

  const SingleParticleState& final_state = reports.back().state;
  const Distribution final_dist = position_distribution(final_state, 0.0);
  if (cfg.format == Format::Csv) {
    e.data = csv.str();
  } else {
    Json j;
    j["config"] = config_json(cfg);
    j["distribution"] = distribution_json(final_dist);
    if (!final_dist.empty()) j["moments"] = moments_json(final_dist);
    if (cfg.topology.is_absorbing()) j["absorbed"] = final_state.absorbed();
    if (cfg.trace) j["trace"] = std::move(trace);
    e.data = j.dump(1) + "\n";
  }
  if (cfg.plot) {
    std::optional<io::Curve> overlay;
    if (cfg.topology.is_line() && cfg.steps > 0 && !final_dist.empty()) {
      overlay = io::parity_gaussian(static_cast<double>(cfg.steps),
                                    static_cast<double>(final_dist.entries.begin()->first),
                                    static_cast<double>(final_dist.entries.rbegin()->first));
    }
    e.svg = io::bar_chart_svg(final_dist, title_for(cfg), overlay);
  }
  return e;
}

struct TwoReport {
  std::size_t step;
  TwoParticleState state;
};

inline Emitted run_two(const RunConfig& cfg) {
  const TwoParticleState init = initial_two_particle(cfg.state, cfg.topology);
  std::vector<TwoReport> reports;
  if (cfg.trace) {
    reports.push_back({0, init});
    for (std::size_t n = 1; n <= cfg.steps; ++n) reports.push_back({n, step_two(reports.back().state, cfg.coin)});
  } else {
    reports.push_back({cfg.steps, evolve_two(init, cfg.coin, cfg.steps)});
  }

  Emitted e;
  std::ostringstream csv;
  Json trace = Json::array();
  if (cfg.format == Format::Csv) io::write_csv_header(csv, true, cfg.trace);
  for (const auto& r : reports) {
    const JointDistribution d = joint_distribution(r.state, 0.0);
    e.invariants_ok = e.invariants_ok && closes(d.total(), r.state.absorbed());
    if (cfg.format == Format::Csv) {
      io::write_csv_rows(csv, d, cfg.trace ? std::optional<std::size_t>(r.step) : std::nullopt);
    } else if (cfg.trace) {
      Json step{{"step", r.step}, {"joint", joint_json(d)}};
      if (cfg.topology.is_absorbing()) step["absorbed"] = r.state.absorbed();
      trace.push_back(std::move(step));
    }
  }

  const TwoParticleState& final_state = reports.back().state;
  const JointDistribution final_joint = joint_distribution(final_state, 0.0);
  if (cfg.format == Format::Csv) {
    e.data = csv.str();
  } else {
    Json j;
    j["config"] = config_json(cfg);
    j["joint"] = joint_json(final_joint);
    if (!final_joint.empty()) {
      j["marginals"] = Json{{"particle1", distribution_json(marginal(final_joint, Particle::One))},
                            {"particle2", distribution_json(marginal(final_joint, Particle::Two))}};
      j["correlation"] = correlation(final_joint);
      j["separation_moment"] = separation_moment(final_joint);
      j["entropy_bits"] = von_neumann_entropy(reduced_density_particle1(final_state));
    }
    if (cfg.topology.is_absorbing()) j["absorbed"] = final_state.absorbed();
    if (cfg.trace) j["trace"] = std::move(trace);
    e.data = j.dump(1) + "\n";
  }
  if (cfg.plot) e.svg = io::heat_map_svg(final_joint, title_for(cfg));
  return e;
}

inline Emitted run_ctqw(const RunConfig& cfg, std::ostream& err) {
  Eigen::Index vertices = 0;
  Eigen::Index origin = 0;
  ctqw::AmplitudeVector psi;
  std::optional<ctqw::GeneratorMatrix> h;

  if (cfg.topology.is_cycle()) {
    vertices = static_cast<Eigen::Index>(cfg.topology.cycle_size());
    h.emplace(ctqw::Graph::cycle(vertices), cfg.gamma);
    psi = ctqw::evolve_quantum(ctqw::basis_amplitudes(vertices, 0), *h, cfg.time);
  } else {
    // Truncated line centred on the start vertex, widened until the ends are quiet.
    constexpr Eigen::Index kMaxHalfWidth = 2048;
    Eigen::Index half = static_cast<Eigen::Index>(std::ceil(2.0 * cfg.gamma * cfg.time)) + 16;
    while (true) {
      half = std::min(half, kMaxHalfWidth);
      vertices = 2 * half + 1;
      origin = half;
      h.emplace(ctqw::Graph::line_segment(vertices), cfg.gamma);
      psi = ctqw::evolve_quantum(ctqw::basis_amplitudes(vertices, origin), *h, cfg.time);
      if (ctqw::boundary_probability(psi) < 1e-10) break;
      if (half == kMaxHalfWidth) {
        err << "warning: line segment of " << vertices << " vertices still has boundary probability "
            << ctqw::boundary_probability(psi) << "\n";
        break;
      }
      half *= 2;
    }
  }
  const ctqw::ProbabilityVector classical =
      ctqw::evolve_classical(ctqw::basis_probabilities(vertices, origin), *h, cfg.time);

  Distribution quantum_dist, classical_dist;
  for (Eigen::Index v = 0; v < vertices; ++v) {
    const Position pos = static_cast<Position>(v - origin);
    const double pq = std::norm(psi(v));
    if (pq >= kPruneThreshold) quantum_dist.entries.emplace(pos, pq);
    if (classical(v) >= kPruneThreshold) classical_dist.entries.emplace(pos, classical(v));
  }

  Emitted e;
  e.invariants_ok = std::abs(psi.squaredNorm() - 1.0) <= 1e-10 && std::abs(classical.sum() - 1.0) <= 1e-10;
  if (cfg.format == Format::Csv) {
    std::ostringstream csv;
    io::write_csv_header(csv, false, false);
    io::write_csv_rows(csv, quantum_dist);
    e.data = csv.str();
  } else {
    Json j;
    j["config"] = config_json(cfg);
    j["vertices"] = vertices;
    j["distribution"] = distribution_json(quantum_dist);
    j["classical"] = distribution_json(classical_dist);
    e.data = j.dump(1) + "\n";
  }
  if (cfg.plot) {
    io::Curve overlay;
    for (const auto& [pos, p] : classical_dist.entries) overlay.points.emplace_back(static_cast<double>(pos), p);
    e.svg = io::bar_chart_svg(quantum_dist, "ctqw " + cfg.topology.describe() + " t=" + io::format_real(cfg.time),
                              overlay);
  }
  return e;
}

inline Emitted run_classical(const RunConfig& cfg) {
  const Distribution d = classical_dtrw(cfg.steps);
  const MomentSummary m = moments(d);
  Emitted e;
  e.invariants_ok = closes(d.total(), 0.0);
  if (cfg.format == Format::Csv) {
    std::ostringstream csv;
    csv << "position,probability,variance\n";
    const std::string var = io::format_real(m.variance);
    for (const auto& [pos, p] : d.entries) csv << pos << ',' << io::format_real(p) << ',' << var << '\n';
    e.data = csv.str();
  } else {
    Json j;
    j["config"] = config_json(cfg);
    j["distribution"] = distribution_json(d);
    j["moments"] = moments_json(d);
    e.data = j.dump(1) + "\n";
  }
  if (cfg.plot) e.svg = io::bar_chart_svg(d, "classical N=" + std::to_string(cfg.steps));
  return e;
}

inline bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << content;
  f.flush();
  if (!f) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

/// base.ext -> base_T<n>.ext
inline std::string with_period_suffix(const std::string& path, Position n) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  const std::string tag = "_T" + std::to_string(n);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr);

namespace detail {

inline int run_sweep(const RunConfig& cfg, std::ostream& err) {
  std::vector<RunConfig> jobs;
  for (Position n : cfg.sweep_periods) {
    RunConfig sub = cfg;
    sub.mode = cfg.sweep_two_particle ? Mode::Two : Mode::Single;
    sub.topology = Topology::cycle(n);
    sub.topology_spec = sub.topology.describe();
    sub.out = with_period_suffix(*cfg.out, n);
    if (cfg.plot) sub.plot = with_period_suffix(*cfg.plot, n);
    jobs.push_back(std::move(sub));
  }
  std::vector<std::future<std::pair<int, std::string>>> results;
  for (const auto& job : jobs) {
    results.push_back(std::async(std::launch::async, [job] {
      std::ostringstream sink, diag;
      const int code = run(job, sink, diag);
      return std::pair{code, diag.str()};
    }));
  }
  int worst = kSuccess;
  for (auto& r : results) {
    auto [code, diag] = r.get();
    err << diag;
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace detail

/// Executes a validated config. Data goes to cfg.out (or `out`), the plot to
/// cfg.plot. Returns an ExitCode.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.mode == Mode::Sweep) return detail::run_sweep(cfg, err);
  detail::Emitted e;
  switch (cfg.mode) {
    case Mode::Single: e = detail::run_single(cfg); break;
    case Mode::Two: e = detail::run_two(cfg); break;
    case Mode::Ctqw: e = detail::run_ctqw(cfg, err); break;
    case Mode::Classical: e = detail::run_classical(cfg); break;
    case Mode::Sweep: break;
  }
  if (cfg.out) {
    if (!detail::write_file(*cfg.out, e.data, err)) return kIoError;
  } else {
    out << e.data;
  }
  if (cfg.plot && e.svg) {
    if (!detail::write_file(*cfg.plot, *e.svg, err)) return kIoError;
  }
  if (!e.invariants_ok) {
    err << "error: probability closure self-check failed\n";
    return kInvariantFailure;
  }
  return kSuccess;
}

/// Entry point shared by the `walk` binary: parse, run, map errors to exit codes.
inline int main_entry(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
  RunConfig cfg;
  try {
    cfg = parse_args(argv);
  } catch (const UsageError& e) {
    (e.exit_code() == kSuccess ? out : err) << e.what() << (e.exit_code() == kSuccess ? "" : "\n");
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return run(cfg, out, err);
}

}  // namespace qwalk::cli
