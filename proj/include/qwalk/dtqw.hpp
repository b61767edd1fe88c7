#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

struct StepReport {
  SingleParticleState state;
  std::size_t step_index;
  double absorbed_this_step;
};

namespace detail {

// Conditional shift from `src` (window starting at `start`) into `dst`.
// Returns the probability that landed on absorbing sites. On a line the window
// grows by one site on each side and `start` is updated.
inline double shift_into(const Topology& topo, Position& start, std::span<const CoinPair> src,
                         std::vector<CoinPair>& dst) {
  const std::size_t w = src.size();
  const int up = index(CoinBasis::Up);
  const int down = index(CoinBasis::Down);
  switch (topo.kind()) {
    case Topology::Kind::Line: {
      // new index q holds position start-1+q: Up arrives from q-2, Down from q.
      dst.assign(w + 2, CoinPair{});
      for (std::size_t k = 0; k < w; ++k) {
        dst[k + 2][up] = src[k][up];
        dst[k][down] = src[k][down];
      }
      start -= 1;
      return 0.0;
    }
    case Topology::Kind::Cycle: {
      dst.assign(w, CoinPair{});
      for (std::size_t k = 0; k < w; ++k) {
        dst[(k + 1) % w][up] = src[k][up];
        dst[(k + w - 1) % w][down] = src[k][down];
      }
      return 0.0;
    }
    case Topology::Kind::Absorbing: {
      dst.assign(w, CoinPair{});
      for (std::size_t k = 0; k + 1 < w; ++k) dst[k + 1][up] = src[k][up];
      for (std::size_t k = 1; k < w; ++k) dst[k - 1][down] = src[k][down];
      return std::norm(src[w - 1][up]) + std::norm(src[0][down]);
    }
  }
  return 0.0;
}

// In-place walker used by evolve and evolve_with_trace; two buffers swap every step.
class Stepper {
 public:
  explicit Stepper(const SingleParticleState& s)
      : topo_(s.topology()),
        start_(s.window_start()),
        cur_(s.amplitudes().begin(), s.amplitudes().end()),
        absorbed_(s.absorbed()) {}

  double step(const CoinOperator& coin) {
    apply_coin_in_place(cur_, coin);
    const double lost = shift_into(topo_, start_, cur_, next_);
    std::swap(cur_, next_);
    absorbed_ += lost;
    return lost;
  }

  SingleParticleState snapshot() const { return SingleParticleState(topo_, start_, cur_, absorbed_); }
  SingleParticleState release() && {
    return SingleParticleState(topo_, start_, std::move(cur_), absorbed_);
  }

 private:
  Topology topo_;
  Position start_;
  std::vector<CoinPair> cur_;
  std::vector<CoinPair> next_;
  double absorbed_;
};

}  // namespace detail

/// Conditional shift: (i, Up) -> (i+1, Up), (i, Down) -> (i-1, Down).
/// Cycle arithmetic is mod n; amplitude landing on an absorbing site is removed
/// and its probability added to `absorbed`.
inline SingleParticleState shift(const SingleParticleState& state) {
  Position start = state.window_start();
  std::vector<CoinPair> out;
  const double lost = detail::shift_into(state.topology(), start, state.amplitudes(), out);
  return SingleParticleState(state.topology(), start, std::move(out), state.absorbed() + lost);
}

/// One walk step: coin first, then shift.
inline SingleParticleState step(const SingleParticleState& state, const CoinOperator& coin) {
  return shift(apply_coin(state, coin));
}

inline SingleParticleState evolve(const SingleParticleState& state, const CoinOperator& coin,
                                  std::size_t steps) {
  detail::Stepper walker(state);
  for (std::size_t n = 0; n < steps; ++n) walker.step(coin);
  return std::move(walker).release();
}

/// Reports for steps 0..steps inclusive; report 0 is the input state.
inline std::vector<StepReport> evolve_with_trace(const SingleParticleState& state,
                                                 const CoinOperator& coin, std::size_t steps) {
  std::vector<StepReport> reports;
  reports.reserve(steps + 1);
  reports.push_back({state, 0, 0.0});
  detail::Stepper walker(state);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double lost = walker.step(coin);
    reports.push_back({walker.snapshot(), n, lost});
  }
  return reports;
}

}  // namespace qwalk
