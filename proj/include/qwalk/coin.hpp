#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

/// 2x2 unitary acting on the coin space, indexed (row, col) by CoinBasis.
/// Unitarity is checked on construction.
class CoinOperator {
 public:
  using Matrix = std::array<std::array<Complex, 2>, 2>;

  static constexpr double kUnitarityTolerance = 1e-12;

  explicit CoinOperator(const Matrix& m) : m_(m) {
    if (unitarity_defect(m_) >= kUnitarityTolerance) {
      throw std::invalid_argument("coin operator is not unitary");
    }
  }

  const Matrix& entries() const noexcept { return m_; }
  Complex operator()(CoinBasis row, CoinBasis col) const noexcept { return m_[index(row)][index(col)]; }
  Complex operator()(int row, int col) const noexcept { return m_[row][col]; }

  CoinPair apply(const CoinPair& v) const noexcept {
    return {m_[0][0] * v[0] + m_[0][1] * v[1], m_[1][0] * v[0] + m_[1][1] * v[1]};
  }

  /// max_{ij} |(C^dagger C - I)_{ij}|
  static double unitarity_defect(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Complex s = std::conj(m[0][i]) * m[0][j] + std::conj(m[1][i]) * m[1][j];
        if (i == j) s -= 1.0;
        worst = std::max(worst, std::abs(s));
      }
    }
    return worst;
  }

  friend bool operator==(const CoinOperator&, const CoinOperator&) = default;

 private:
  Matrix m_;
};

inline bool is_unitary(const CoinOperator& c) {
  return CoinOperator::unitarity_defect(c.entries()) < CoinOperator::kUnitarityTolerance;
}

inline CoinOperator hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return CoinOperator({{{s, s}, {s, -s}}});
}

inline CoinOperator identity_coin() { return CoinOperator({{{1.0, 0.0}, {0.0, 1.0}}}); }

/// Euler-angle coin [[cos t, e^{il} sin t], [e^{ip} sin t, -e^{i(p+l)} cos t]].
/// su2(pi/4, 0, 0) is the Hadamard coin.
inline CoinOperator su2(double theta, double phi, double lambda) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex el = std::polar(1.0, lambda);
  const Complex ep = std::polar(1.0, phi);
  const Complex epl = std::polar(1.0, phi + lambda);
  return CoinOperator({{{c, el * s}, {ep * s, -epl * c}}});
}

namespace detail {

inline void apply_coin_in_place(std::span<CoinPair> amps, const CoinOperator& coin) noexcept {
  for (auto& pair : amps) pair = coin.apply(pair);
}

}  // namespace detail

/// (I_P (x) C): mixes the two coin amplitudes at every site independently.
inline SingleParticleState apply_coin(const SingleParticleState& state, const CoinOperator& coin) {
  std::vector<CoinPair> amps(state.amplitudes().begin(), state.amplitudes().end());
  detail::apply_coin_in_place(amps, coin);
  return SingleParticleState(state.topology(), state.window_start(), std::move(amps), state.absorbed());
}

}  // namespace qwalk
