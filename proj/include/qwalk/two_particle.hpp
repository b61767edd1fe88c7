#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

enum class InitialStateKind { Product, Symmetric, Antisymmetric };

enum class Particle { One = 1, Two = 2 };

/// P(i, j): particle 1 at i and particle 2 at j, ordered lexicographically.
struct JointDistribution {
  std::map<std::pair<Position, Position>, double> entries;

  double total() const {
    double s = 0.0;
    for (const auto& [ij, p] : entries) s += p;
    return s;
  }

  double at(Position i, Position j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0.0 : it->second;
  }

  bool empty() const noexcept { return entries.empty(); }
};

/// Two non-interacting walkers sharing one topology, amplitudes A_{j,k;m,n}.
///
/// j, k are the coins of particles 1 and 2; m, n their positions. Both
/// position axes share one window [start, start + width). Storage is
/// position-major with the four coin components contiguous.
class TwoParticleState {
 public:
  TwoParticleState(Topology topology, Position window_start, std::size_t width,
                   std::vector<Complex> amplitudes, double absorbed = 0.0)
      : topology_(topology), start_(window_start), width_(width), data_(std::move(amplitudes)),
        absorbed_(absorbed) {
    if (width_ == 0 || data_.size() != 4 * width_ * width_) {
      throw std::invalid_argument("two-particle amplitude tensor has wrong size");
    }
    for (const auto& a : data_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("state amplitudes must be finite");
      }
    }
    if (!std::isfinite(absorbed_) || absorbed_ < 0.0) {
      throw std::invalid_argument("absorbed probability must be finite and nonnegative");
    }
    canonicalize();
  }

  static std::size_t flat(std::size_t width, std::size_t a, std::size_t b, int j, int k) noexcept {
    return ((a * width + b) << 2) | static_cast<std::size_t>(2 * j + k);
  }

  const Topology& topology() const noexcept { return topology_; }
  Position window_start() const noexcept { return start_; }
  std::size_t width() const noexcept { return width_; }
  const std::vector<Complex>& data() const noexcept { return data_; }
  double absorbed() const noexcept { return absorbed_; }

  Complex amplitude(CoinBasis j, CoinBasis k, Position m, Position n) const {
    if (topology_.is_cycle()) {
      const Position size = topology_.cycle_size();
      m = ((m % size) + size) % size;
      n = ((n % size) + size) % size;
    }
    const Position a = m - start_;
    const Position b = n - start_;
    const auto w = static_cast<Position>(width_);
    if (a < 0 || b < 0 || a >= w || b >= w) return {};
    return data_[flat(width_, static_cast<std::size_t>(a), static_cast<std::size_t>(b), index(j), index(k))];
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : data_) s += std::norm(a);
    return s;
  }

 private:
  void canonicalize() {
    if (topology_.is_line()) return;
    const Position end = start_ + static_cast<Position>(width_) - 1;
    if (!topology_.contains(start_) || !topology_.contains(end)) {
      throw std::invalid_argument("state window is outside " + topology_.describe());
    }
    const Position full_start = topology_.is_cycle() ? 0 : topology_.left() + 1;
    const Position full_end = topology_.is_cycle() ? topology_.cycle_size() - 1 : topology_.right() - 1;
    if (start_ == full_start && end == full_end) return;
    const auto full_w = static_cast<std::size_t>(full_end - full_start + 1);
    const auto off = static_cast<std::size_t>(start_ - full_start);
    std::vector<Complex> full(4 * full_w * full_w);
    for (std::size_t a = 0; a < width_; ++a)
      for (std::size_t b = 0; b < width_; ++b)
        for (int c = 0; c < 4; ++c)
          full[flat(full_w, a + off, b + off, c >> 1, c & 1)] = data_[flat(width_, a, b, c >> 1, c & 1)];
    data_ = std::move(full);
    width_ = full_w;
    start_ = full_start;
  }

  Topology topology_;
  Position start_;
  std::size_t width_;
  std::vector<Complex> data_;
  double absorbed_;
};

/// Both walkers at the origin. Product: |Down>|Up>. Symmetric / Antisymmetric:
/// (|Down,Up> +- |Up,Down>)/sqrt(2).
inline TwoParticleState initial_two_particle(InitialStateKind kind, const Topology& topology) {
  if (!topology.contains(0)) {
    throw std::invalid_argument("origin is not a valid site of " + topology.describe());
  }
  const int up = index(CoinBasis::Up);
  const int down = index(CoinBasis::Down);
  std::vector<Complex> data(4);
  const double s = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case InitialStateKind::Product:
      data[TwoParticleState::flat(1, 0, 0, down, up)] = 1.0;
      break;
    case InitialStateKind::Symmetric:
      data[TwoParticleState::flat(1, 0, 0, down, up)] = s;
      data[TwoParticleState::flat(1, 0, 0, up, down)] = s;
      break;
    case InitialStateKind::Antisymmetric:
      data[TwoParticleState::flat(1, 0, 0, down, up)] = s;
      data[TwoParticleState::flat(1, 0, 0, up, down)] = -s;
      break;
  }
  return TwoParticleState(topology, 0, 1, std::move(data));
}

namespace detail {

// (C (x) C) applied to every (m, n) block, one particle at a time.
inline void apply_coin_pair_in_place(std::vector<Complex>& data, const CoinOperator& coin) {
  const auto& c = coin.entries();
  for (std::size_t base = 0; base < data.size(); base += 4) {
    Complex* v = &data[base];
    // particle 1: index pairs (0k, 1k)
    for (int k = 0; k < 2; ++k) {
      const Complex a0 = v[k];
      const Complex a1 = v[2 + k];
      v[k] = c[0][0] * a0 + c[0][1] * a1;
      v[2 + k] = c[1][0] * a0 + c[1][1] * a1;
    }
    // particle 2: index pairs (j0, j1)
    for (int j = 0; j < 2; ++j) {
      const Complex a0 = v[2 * j];
      const Complex a1 = v[2 * j + 1];
      v[2 * j] = c[0][0] * a0 + c[0][1] * a1;
      v[2 * j + 1] = c[1][0] * a0 + c[1][1] * a1;
    }
  }
}

// Joint conditional shift; returns probability removed by absorbing sites.
inline double shift_pair_into(const Topology& topo, Position& start, std::size_t width,
                              const std::vector<Complex>& src, std::vector<Complex>& dst,
                              std::size_t& new_width) {
  const bool line = topo.is_line();
  new_width = line ? width + 2 : width;
  dst.assign(4 * new_width * new_width, Complex{});
  const auto w = static_cast<std::ptrdiff_t>(width);
  const std::ptrdiff_t off = line ? 1 : 0;
  double lost = 0.0;
  for (std::ptrdiff_t a = 0; a < w; ++a) {
    for (std::ptrdiff_t b = 0; b < w; ++b) {
      for (int c = 0; c < 4; ++c) {
        const int j = c >> 1;
        const int k = c & 1;
        const Complex v = src[TwoParticleState::flat(width, static_cast<std::size_t>(a),
                                                     static_cast<std::size_t>(b), j, k)];
        std::ptrdiff_t na = a + off + (j == 0 ? 1 : -1);
        std::ptrdiff_t nb = b + off + (k == 0 ? 1 : -1);
        if (topo.is_cycle()) {
          na = (na + w) % w;
          nb = (nb + w) % w;
        } else if (topo.is_absorbing() && (na < 0 || na >= w || nb < 0 || nb >= w)) {
          lost += std::norm(v);
          continue;
        }
        dst[TwoParticleState::flat(new_width, static_cast<std::size_t>(na), static_cast<std::size_t>(nb), j,
                                   k)] = v;
      }
    }
  }
  if (line) start -= 1;
  return lost;
}

}  // namespace detail

/// One step of U (x) U: C (x) C on the coins, then each particle shifts by its
/// own coin (Up +1, Down -1). A joint amplitude in which either particle lands
/// on an absorbing site is removed.
inline TwoParticleState step_two(const TwoParticleState& state, const CoinOperator& coin) {
  std::vector<Complex> cur = state.data();
  detail::apply_coin_pair_in_place(cur, coin);
  Position start = state.window_start();
  std::size_t width = 0;
  std::vector<Complex> next;
  const double lost = detail::shift_pair_into(state.topology(), start, state.width(), cur, next, width);
  return TwoParticleState(state.topology(), start, width, std::move(next), state.absorbed() + lost);
}

inline TwoParticleState evolve_two(const TwoParticleState& state, const CoinOperator& coin,
                                   std::size_t steps) {
  std::vector<Complex> cur = state.data();
  std::vector<Complex> next;
  Position start = state.window_start();
  std::size_t width = state.width();
  double absorbed = state.absorbed();
  for (std::size_t s = 0; s < steps; ++s) {
    detail::apply_coin_pair_in_place(cur, coin);
    std::size_t new_width = 0;
    absorbed += detail::shift_pair_into(state.topology(), start, width, cur, next, new_width);
    width = new_width;
    std::swap(cur, next);
  }
  return TwoParticleState(state.topology(), start, width, std::move(cur), absorbed);
}

namespace detail {

inline void accumulate_tensor(std::vector<Complex>& out, const SingleParticleState& first,
                              const SingleParticleState& second, Complex weight) {
  const auto a = first.amplitudes();
  const auto b = second.amplitudes();
  const std::size_t w = a.size();
  for (std::size_t m = 0; m < w; ++m)
    for (std::size_t n = 0; n < w; ++n)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out[TwoParticleState::flat(w, m, n, j, k)] += weight * a[m][j] * b[n][k];
}

}  // namespace detail

/// Builds U^N (x) U^N |psi_0> from independent single-walker evolutions of
/// |0,Up> and |0,Down>. Independent of evolve_two; used to cross-check it.
inline TwoParticleState evolve_as_superposition(InitialStateKind kind, const CoinOperator& coin,
                                                std::size_t steps, const Topology& topology) {
  const SingleParticleState up = evolve(point_state(topology, 0, 1.0, 0.0), coin, steps);
  const SingleParticleState down = evolve(point_state(topology, 0, 0.0, 1.0), coin, steps);
  const std::size_t w = up.width();
  std::vector<Complex> data(4 * w * w);
  const double s = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case InitialStateKind::Product:
      detail::accumulate_tensor(data, down, up, 1.0);
      break;
    case InitialStateKind::Symmetric:
      detail::accumulate_tensor(data, down, up, s);
      detail::accumulate_tensor(data, up, down, s);
      break;
    case InitialStateKind::Antisymmetric:
      detail::accumulate_tensor(data, down, up, s);
      detail::accumulate_tensor(data, up, down, -s);
      break;
  }
  double absorbed = 0.0;
  if (topology.is_absorbing()) {
    double n2 = 0.0;
    for (const auto& v : data) n2 += std::norm(v);
    absorbed = std::max(0.0, 1.0 - n2);
  }
  return TwoParticleState(topology, up.window_start(), w, std::move(data), absorbed);
}

/// P_{m,n} = sum_{j,k} |A_{j,k;m,n}|^2, dropping entries below `prune`.
inline JointDistribution joint_distribution(const TwoParticleState& state, double prune = kPruneThreshold) {
  JointDistribution d;
  const std::size_t w = state.width();
  const auto& data = state.data();
  for (std::size_t a = 0; a < w; ++a) {
    for (std::size_t b = 0; b < w; ++b) {
      double p = 0.0;
      for (int c = 0; c < 4; ++c) p += std::norm(data[TwoParticleState::flat(w, a, b, c >> 1, c & 1)]);
      if (p > 0.0 && p >= prune) {
        d.entries.emplace(std::pair{state.window_start() + static_cast<Position>(a),
                                    state.window_start() + static_cast<Position>(b)},
                          p);
      }
    }
  }
  return d;
}

inline Distribution marginal(const JointDistribution& dist, Particle particle) {
  Distribution d;
  for (const auto& [ij, p] : dist.entries) {
    d.entries[particle == Particle::One ? ij.first : ij.second] += p;
  }
  return d;
}

/// E[(x1 - x2)^2], conditioned on the surviving probability.
inline double separation_moment(const JointDistribution& dist) {
  const double total = dist.total();
  if (dist.empty() || total <= 0.0) throw std::invalid_argument("empty joint distribution");
  double s = 0.0;
  for (const auto& [ij, p] : dist.entries) {
    const auto d = static_cast<double>(ij.first - ij.second);
    s += d * d * p;
  }
  return s / total;
}

/// Cov(x1, x2) = E[x1 x2] - E[x1] E[x2].
inline double correlation(const JointDistribution& dist) {
  const double total = dist.total();
  if (dist.empty() || total <= 0.0) throw std::invalid_argument("empty joint distribution");
  double e1 = 0.0, e2 = 0.0, e12 = 0.0;
  for (const auto& [ij, p] : dist.entries) {
    const auto x1 = static_cast<double>(ij.first);
    const auto x2 = static_cast<double>(ij.second);
    e1 += x1 * p;
    e2 += x2 * p;
    e12 += x1 * x2 * p;
  }
  e1 /= total;
  e2 /= total;
  e12 /= total;
  return e12 - e1 * e2;
}

}  // namespace qwalk
