#pragma once

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/types.hpp"

namespace qwalk {

/// Amplitude pair at one site, indexed by CoinBasis.
using CoinPair = std::array<Complex, 2>;

/// Default cutoff below which probabilities are left out of emitted distributions.
inline constexpr double kPruneThreshold = 1e-15;

/// Probability over positions. Entries are ordered by position.
struct Distribution {
  std::map<Position, double> entries;

  double total() const {
    double s = 0.0;
    for (const auto& [pos, p] : entries) s += p;
    return s;
  }

  double at(Position pos) const {
    auto it = entries.find(pos);
    return it == entries.end() ? 0.0 : it->second;
  }

  bool empty() const noexcept { return entries.empty(); }
};

/// Single walker over position x coin, stored densely over a contiguous window.
///
/// Cycle states always span {0, ..., n-1}; absorbing states span the open
/// interval between the two absorbing sites; line states span whatever window
/// the dynamics has reached. Reads outside the window return zero.
class SingleParticleState {
 public:
  SingleParticleState(Topology topology, Position window_start, std::vector<CoinPair> amplitudes,
                      double absorbed = 0.0)
      : topology_(topology), start_(window_start), amps_(std::move(amplitudes)), absorbed_(absorbed) {
    canonicalize();
    for (const auto& pair : amps_) {
      for (const auto& a : pair) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
          throw std::invalid_argument("state amplitudes must be finite");
        }
      }
    }
    if (!std::isfinite(absorbed_) || absorbed_ < 0.0) {
      throw std::invalid_argument("absorbed probability must be finite and nonnegative");
    }
  }

  const Topology& topology() const noexcept { return topology_; }
  Position window_start() const noexcept { return start_; }
  Position window_end() const noexcept { return start_ + static_cast<Position>(amps_.size()) - 1; }
  std::size_t width() const noexcept { return amps_.size(); }
  std::span<const CoinPair> amplitudes() const noexcept { return amps_; }
  double absorbed() const noexcept { return absorbed_; }

  Complex amplitude(Position pos, CoinBasis coin) const {
    if (topology_.is_cycle()) {
      const Position n = topology_.cycle_size();
      pos = ((pos % n) + n) % n;
    }
    const Position k = pos - start_;
    if (k < 0 || k >= static_cast<Position>(amps_.size())) return {};
    return amps_[static_cast<std::size_t>(k)][index(coin)];
  }

  /// Sum of squared amplitudes (excludes absorbed probability).
  double norm_squared() const {
    double s = 0.0;
    for (const auto& pair : amps_) s += std::norm(pair[0]) + std::norm(pair[1]);
    return s;
  }

 private:
  // Embed the supplied window into the canonical full window for bounded topologies.
  void canonicalize() {
    if (amps_.empty()) {
      if (topology_.is_line()) {
        amps_.assign(1, CoinPair{});
        start_ = 0;
        return;
      }
      start_ = topology_.is_cycle() ? 0 : topology_.left() + 1;
    }
    const Position end = start_ + static_cast<Position>(amps_.size()) - 1;
    if (topology_.is_line()) return;
    if (!topology_.contains(start_) || !topology_.contains(end)) {
      throw std::invalid_argument("state window [" + std::to_string(start_) + ", " +
                                  std::to_string(end) + "] is outside " + topology_.describe());
    }
    const Position full_start = topology_.is_cycle() ? 0 : topology_.left() + 1;
    const Position full_end = topology_.is_cycle() ? topology_.cycle_size() - 1 : topology_.right() - 1;
    if (start_ == full_start && end == full_end) return;
    std::vector<CoinPair> full(static_cast<std::size_t>(full_end - full_start + 1), CoinPair{});
    for (std::size_t k = 0; k < amps_.size(); ++k) {
      full[static_cast<std::size_t>(start_ - full_start) + k] = amps_[k];
    }
    amps_ = std::move(full);
    start_ = full_start;
  }

  Topology topology_;
  Position start_;
  std::vector<CoinPair> amps_;
  double absorbed_;
};

/// Walker localized at `position` with coin state up_amp|Up> + down_amp|Down>.
inline SingleParticleState point_state(const Topology& topology, Position position, Complex up_amp,
                                       Complex down_amp) {
  const double n2 = std::norm(up_amp) + std::norm(down_amp);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw std::invalid_argument("coin amplitudes are not normalized: |up|^2 + |down|^2 = " +
                                std::to_string(n2));
  }
  if (!topology.contains(position)) {
    throw std::invalid_argument("position " + std::to_string(position) + " is out of range for " +
                                topology.describe());
  }
  return SingleParticleState(topology, position, {CoinPair{up_amp, down_amp}});
}

inline double norm(const SingleParticleState& state) { return std::sqrt(state.norm_squared()); }

/// P(i) = sum over coins of |a_{i,c}|^2, dropping entries below `prune`.
inline Distribution position_distribution(const SingleParticleState& state,
                                          double prune = kPruneThreshold) {
  Distribution d;
  const auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    const double p = std::norm(amps[k][0]) + std::norm(amps[k][1]);
    if (p > 0.0 && p >= prune) d.entries.emplace(state.window_start() + static_cast<Position>(k), p);
  }
  return d;
}

}  // namespace qwalk
