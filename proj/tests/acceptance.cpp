// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qwalk/analysis.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/qwalk.hpp"

#ifndef QWALK_WALK_EXE
#error "QWALK_WALK_EXE must name the walk binary"
#endif

using namespace qwalk;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

oracle::Coin2 as_oracle(const CoinOperator& c) {
  oracle::Coin2 m;
  for (int r = 0; r < 2; ++r)
    for (int q = 0; q < 2; ++q) m[r][q] = c(r, q);
  return m;
}

double max_diff(const TwoParticleState& a, const TwoParticleState& b) {
  const Position lo = std::min(a.window_start(), b.window_start());
  const Position hi = std::max(a.window_start() + static_cast<Position>(a.width()),
                               b.window_start() + static_cast<Position>(b.width()));
  double worst = 0.0;
  for (Position m = lo; m < hi; ++m)
    for (Position n = lo; n < hi; ++n)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          const auto cj = static_cast<CoinBasis>(j), ck = static_cast<CoinBasis>(k);
          worst = std::max(worst, std::abs(a.amplitude(cj, ck, m, n) - b.amplitude(cj, ck, m, n)));
        }
  return worst;
}

Outcome variance_exponent() {
  Outcome o;
  const double s = 1.0 / std::numbers::sqrt2;
  std::vector<std::pair<std::size_t, double>> quantum, classical;
  for (std::size_t n : {20, 40, 60, 80, 100}) {
    const auto st = evolve(point_state(Topology::line(), 0, s, Complex(0.0, s)), hadamard(), n);
    quantum.emplace_back(n, moments(position_distribution(st)).variance);
    classical.emplace_back(n, moments(classical_dtrw(n)).variance);
  }
  const double q = variance_growth_exponent(quantum);
  const double c = variance_growth_exponent(classical);
  o.require(std::abs(q - 2.0) <= 0.05, "quantum slope " + std::to_string(q));
  o.require(std::abs(c - 1.0) <= 0.01, "classical slope " + std::to_string(c));
  o.detail = o.pass ? "quantum slope " + std::to_string(q) + ", classical slope " + std::to_string(c) : o.detail;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const std::vector<std::pair<Complex, Complex>> inits{
      {1.0, 0.0}, {0.0, 1.0}, {1.0 / std::numbers::sqrt2, Complex(0.0, 1.0 / std::numbers::sqrt2)}};
  const std::vector<CoinOperator> coins{hadamard(), su2(0.3, 1.1, -0.4)};
  double worst = 0.0;
  for (const auto& coin : coins) {
    for (const auto& [up, down] : inits) {
      for (int n = 0; n <= 8; ++n) {
        const auto st = evolve(point_state(Topology::line(), 0, up, down), coin, static_cast<std::size_t>(n));
        const auto paths = oracle::path_sum(as_oracle(coin), up, down, n);
        for (Position p = -n - 1; p <= n + 1; ++p) {
          for (int c = 0; c < 2; ++c) {
            const auto it = paths.find({p, c});
            const Complex expect = it == paths.end() ? Complex{} : it->second;
            worst = std::max(worst, std::abs(st.amplitude(p, static_cast<CoinBasis>(c)) - expect));
          }
        }
      }
    }
  }
  o.require(worst <= 1e-12, "max amplitude error " + sci(worst));
  const auto d = position_distribution(evolve(point_state(Topology::line(), 0, 1.0, 0.0), hadamard(), 3));
  const std::vector<std::pair<Position, double>> expected{{3, 0.125}, {1, 0.625}, {-1, 0.125}, {-3, 0.125}};
  o.require(d.entries.size() == 4, "N=3 support size " + std::to_string(d.entries.size()));
  for (const auto& [pos, p] : expected) {
    o.require(std::abs(d.at(pos) - p) <= 1e-12, "N=3 P(" + std::to_string(pos) + ")");
  }
  if (o.pass) o.detail = "max amplitude error " + sci(worst) + ", N=3 {1/8,5/8,1/8,1/8}";
  return o;
}

Outcome factorization() {
  Outcome o;
  const auto st = evolve_two(initial_two_particle(InitialStateKind::Product, Topology::line()), hadamard(), 100);
  const auto joint = joint_distribution(st, 0.0);
  const auto m1 = marginal(joint, Particle::One);
  const auto m2 = marginal(joint, Particle::Two);
  double worst = 0.0;
  for (const auto& [i, p1] : m1.entries)
    for (const auto& [j, p2] : m2.entries) worst = std::max(worst, std::abs(joint.at(i, j) - p1 * p2));
  o.require(worst < 1e-12, "max |P12 - P1 P2| " + sci(worst));
  if (o.pass) o.detail = "max |P12 - P1 P2| " + sci(worst);
  return o;
}

Outcome bunching() {
  Outcome o;
  const auto sym = joint_distribution(
      evolve_two(initial_two_particle(InitialStateKind::Symmetric, Topology::line()), hadamard(), 1), 0.0);
  const auto anti = joint_distribution(
      evolve_two(initial_two_particle(InitialStateKind::Antisymmetric, Topology::line()), hadamard(), 1), 0.0);
  auto matches = [](const JointDistribution& d, const std::map<std::pair<Position, Position>, double>& want) {
    if (d.entries.size() != want.size()) return false;
    for (const auto& [ij, p] : want)
      if (std::abs(d.at(ij.first, ij.second) - p) > 1e-15) return false;
    return true;
  };
  o.require(matches(sym, {{{1, 1}, 0.5}, {{-1, -1}, 0.5}}), "symmetric N=1 joint");
  o.require(matches(anti, {{{1, -1}, 0.5}, {{-1, 1}, 0.5}}), "antisymmetric N=1 joint");
  const double ss = separation_moment(joint_distribution(
      evolve_two(initial_two_particle(InitialStateKind::Symmetric, Topology::line()), hadamard(), 20)));
  const double sa = separation_moment(joint_distribution(
      evolve_two(initial_two_particle(InitialStateKind::Antisymmetric, Topology::line()), hadamard(), 20)));
  o.require(sa > ss, "separation antisym " + std::to_string(sa) + " <= sym " + std::to_string(ss));
  if (o.pass) o.detail = "N=20 separation antisym " + std::to_string(sa) + " > sym " + std::to_string(ss);
  return o;
}

Outcome path_independence() {
  Outcome o;
  double worst = 0.0;
  for (const auto& topo : {Topology::line(), Topology::cycle(8)}) {
    for (auto kind : {InitialStateKind::Product, InitialStateKind::Symmetric, InitialStateKind::Antisymmetric}) {
      const auto a = evolve_two(initial_two_particle(kind, topo), hadamard(), 50);
      const auto b = evolve_as_superposition(kind, hadamard(), 50, topo);
      worst = std::max(worst, max_diff(a, b));
    }
  }
  o.require(worst <= 1e-12, "max amplitude difference " + sci(worst));
  if (o.pass) o.detail = "max amplitude difference " + sci(worst);
  return o;
}

Outcome cycle_folding() {
  Outcome o;
  const double s = 1.0 / std::numbers::sqrt2;
  const auto line = evolve(point_state(Topology::line(), 0, s, Complex(0.0, s)), hadamard(), 100);
  double worst = 0.0;
  for (Position n : {8, 16, 64, 100}) {
    const auto cyc = evolve(point_state(Topology::cycle(n), 0, s, Complex(0.0, s)), hadamard(), 100);
    for (Position j = 0; j < n; ++j) {
      for (int c = 0; c < 2; ++c) {
        const auto cb = static_cast<CoinBasis>(c);
        Complex folded{};
        for (Position p = line.window_start(); p <= line.window_end(); ++p)
          if (((p % n) + n) % n == j) folded += line.amplitude(p, cb);
        worst = std::max(worst, std::abs(cyc.amplitude(j, cb) - folded));
      }
    }
  }
  o.require(worst <= 1e-12, "max folding error " + sci(worst));
  if (o.pass) o.detail = "max folding error " + sci(worst);
  return o;
}

Outcome ctqw_checks() {
  Outcome o;
  const ctqw::GeneratorMatrix h(ctqw::Graph::cycle(3), 1.0);
  double worst_p = 0.0, worst_norm = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = 0.37 * k;
    const auto psi = ctqw::evolve_quantum(ctqw::basis_amplitudes(3, 0), h, t);
    const auto p = ctqw::evolve_classical(ctqw::basis_probabilities(3, 0), h, t);
    worst_p = std::max(worst_p, std::abs(std::norm(psi(0)) - oracle::triangle_return_probability(1.0, t)));
    worst_norm = std::max({worst_norm, std::abs(psi.squaredNorm() - 1.0), std::abs(p.sum() - 1.0)});
  }
  const auto p50 = ctqw::evolve_classical(ctqw::basis_probabilities(3, 0), h, 50.0);
  double tv = 0.0;
  for (int v = 0; v < 3; ++v) tv += 0.5 * std::abs(p50(v) - 1.0 / 3.0);
  worst_norm = std::max(worst_norm, std::abs(p50.sum() - 1.0));
  o.require(worst_p <= 1e-9, "return probability error " + sci(worst_p));
  o.require(tv < 1e-6, "classical TV at t=50 " + sci(tv));
  o.require(worst_norm <= 1e-10, "conservation error " + sci(worst_norm));
  if (o.pass) {
    o.detail = "return error " + sci(worst_p) + ", TV " + sci(tv) + ", conservation " + sci(worst_norm);
  }
  return o;
}

Outcome absorption_closure() {
  Outcome o;
  const auto reports = evolve_with_trace(point_state(Topology::absorbing(-10, 10), 0, 1.0, 0.0), hadamard(), 200);
  double worst = 0.0;
  for (const auto& r : reports) {
    worst = std::max(worst, std::abs(r.state.norm_squared() + r.state.absorbed() - 1.0));
  }
  const double absorbed = reports.back().state.absorbed();
  o.require(reports.size() == 201, "trace length " + std::to_string(reports.size()));
  o.require(worst <= 1e-12, "closure error " + sci(worst));
  o.require(absorbed > 0.0, "nothing absorbed");
  if (o.pass) o.detail = "closure error " + sci(worst) + ", absorbed " + std::to_string(absorbed);
  return o;
}

Outcome entropy_checks() {
  Outcome o;
  auto st = initial_two_particle(InitialStateKind::Product, Topology::line());
  double worst = von_neumann_entropy(reduced_density_particle1(st));
  for (int n = 1; n <= 50; ++n) {
    st = step_two(st, hadamard());
    worst = std::max(worst, von_neumann_entropy(reduced_density_particle1(st)));
  }
  const double anti =
      von_neumann_entropy(reduced_density_particle1(initial_two_particle(InitialStateKind::Antisymmetric, Topology::line())));
  o.require(worst < 1e-9, "product entropy " + sci(worst));
  o.require(std::abs(anti - 1.0) <= 1e-9, "antisymmetric entropy " + std::to_string(anti));
  if (o.pass) o.detail = "max product entropy " + sci(worst) + ", antisymmetric " + std::to_string(anti) + " bits";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "qwalk_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"single --topology line --init-coin plus-i --steps 100 --format csv", "csv"},
      {"two --state antisymmetric --topology cycle:16 --steps 40 --format json", "json"},
      {"ctqw --topology cycle:7 --gamma 0.8 --time 3.5 --format json", "json"},
      {"single --topology absorbing:-10,10 --steps 60 --trace --format json", "json"},
  };
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::string first_data, first_svg;
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path data = dir / ("run" + std::to_string(r) + "_" + std::to_string(rep) + "." + runs[r].second);
      const fs::path svg = dir / ("run" + std::to_string(r) + "_" + std::to_string(rep) + ".svg");
      const std::string cmd = std::string("\"") + QWALK_WALK_EXE + "\" " + runs[r].first + " --out \"" +
                              data.string() + "\" --plot \"" + svg.string() + "\"";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        o.require(false, "exit status " + std::to_string(rc) + " for: " + runs[r].first);
        continue;
      }
      const std::string d = slurp(data), s = slurp(svg);
      o.require(!d.empty() && !s.empty(), "empty output for: " + runs[r].first);
      if (rep == 0) {
        first_data = d;
        first_svg = s;
      } else {
        o.require(d == first_data, "data differs for: " + runs[r].first);
        o.require(s == first_svg, "svg differs for: " + runs[r].first);
      }
    }
  }
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(runs.size()) + " command lines, outputs byte-identical across runs";
  return o;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> check;
  double budget_seconds;  // 0: no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "variance exponent", variance_exponent, 1.0},
      {2, "path oracle equivalence", oracle_equivalence, 1.0},
      {3, "two-particle factorization", factorization, 10.0},
      {4, "bunching and anti-bunching", bunching, 0.0},
      {5, "path independence", path_independence, 0.0},
      {6, "cycle folding", cycle_folding, 0.0},
      {7, "continuous-time walk", ctqw_checks, 0.0},
      {8, "closure under absorption", absorption_closure, 0.0},
      {9, "entanglement entropy", entropy_checks, 0.0},
      {10, "determinism", determinism, 0.0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && secs >= c.budget_seconds) {
      o.require(false, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.budget_seconds) + " s");
    }
    if (!o.pass) ++failures;
    std::printf("%s [%2d] %-28s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
