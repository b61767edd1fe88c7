#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwalk {

using Complex = std::complex<double>;
using Position = std::int64_t;

/// Coin basis of a walker. Up is |0>, Down is |1>.
enum class CoinBasis : int { Up = 0, Down = 1 };

/// Displacement of one shift for a coin value: Up moves +1, Down moves -1.
constexpr Position direction(CoinBasis c) noexcept {
  return c == CoinBasis::Up ? Position{1} : Position{-1};
}

constexpr int index(CoinBasis c) noexcept { return static_cast<int>(c); }

/// Lattice the walker lives on.
///
/// Line is the unbounded integer line. Cycle(n) identifies positions mod n and
/// canonicalizes them to {0, ..., n-1}. Absorbing(left, right) is a segment whose
/// two end sites annihilate any amplitude that lands on them.
class Topology {
 public:
  enum class Kind { Line, Cycle, Absorbing };

  static Topology line() { return Topology(Kind::Line, 0, 0); }

  static Topology cycle(Position n) {
    // n == 2 makes both shift directions coincide.
    if (n < 3) {
      throw std::invalid_argument("cycle size must be >= 3, got " + std::to_string(n));
    }
    return Topology(Kind::Cycle, 0, n - 1);
  }

  static Topology absorbing(Position left, Position right) {
    if (!(left < 0 && 0 < right)) {
      throw std::invalid_argument("absorbing boundaries must satisfy left < 0 < right, got " +
                                  std::to_string(left) + "," + std::to_string(right));
    }
    return Topology(Kind::Absorbing, left, right);
  }

  Kind kind() const noexcept { return kind_; }
  bool is_line() const noexcept { return kind_ == Kind::Line; }
  bool is_cycle() const noexcept { return kind_ == Kind::Cycle; }
  bool is_absorbing() const noexcept { return kind_ == Kind::Absorbing; }

  Position cycle_size() const noexcept { return is_cycle() ? hi_ + 1 : 0; }
  Position left() const noexcept { return lo_; }
  Position right() const noexcept { return hi_; }

  /// Whether a walker may sit on this site. Absorbing end sites are never occupied.
  bool contains(Position p) const noexcept {
    switch (kind_) {
      case Kind::Line: return true;
      case Kind::Cycle: return p >= 0 && p <= hi_;
      case Kind::Absorbing: return p > lo_ && p < hi_;
    }
    return false;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Line: return "line";
      case Kind::Cycle: return "cycle:" + std::to_string(cycle_size());
      case Kind::Absorbing: return "absorbing:" + std::to_string(lo_) + "," + std::to_string(hi_);
    }
    return {};
  }

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  Topology(Kind k, Position lo, Position hi) : kind_(k), lo_(lo), hi_(hi) {}

  Kind kind_;
  // Cycle: [0, n-1]. Absorbing: the two absorbing sites.
  Position lo_;
  Position hi_;
};

}  // namespace qwalk
