#pragma once

#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/state.hpp"

namespace qwalk {

struct MomentSummary {
  double mean;
  double variance;
  double total;
};

/// Mean and variance of position, normalized by the distribution's total mass.
inline MomentSummary moments(const Distribution& dist) {
  const double total = dist.total();
  if (dist.empty() || total <= 0.0) throw std::invalid_argument("moments of an empty distribution");
  double m1 = 0.0, m2 = 0.0;
  for (const auto& [pos, p] : dist.entries) {
    const auto x = static_cast<double>(pos);
    m1 += x * p;
    m2 += x * x * p;
  }
  const double mean = m1 / total;
  return {mean, std::max(0.0, m2 / total - mean * mean), total};
}

/// Exact distribution of a fair +-1 random walk after `steps` steps.
/// Rows of Pascal's triangle are halved level by level so every entry stays a
/// dyadic rational and no large binomials are formed.
inline Distribution classical_dtrw(std::size_t steps) {
  std::vector<double> row{1.0};
  row.reserve(steps + 1);
  for (std::size_t n = 0; n < steps; ++n) {
    row.push_back(0.0);
    for (std::size_t k = row.size() - 1; k > 0; --k) row[k] = 0.5 * (row[k] + row[k - 1]);
    row[0] *= 0.5;
  }
  Distribution d;
  const auto n = static_cast<Position>(steps);
  for (std::size_t k = 0; k < row.size(); ++k) {
    // k right-moves out of n: position 2k - n
    d.entries.emplace(2 * static_cast<Position>(k) - n, row[k]);
  }
  return d;
}

/// Least-squares slope of log(variance) against log(steps).
inline double variance_growth_exponent(std::span<const std::pair<std::size_t, double>> points) {
  if (points.size() < 4) throw std::invalid_argument("need at least 4 (steps, variance) points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [steps, var] = points[i];
    if (steps == 0) throw std::invalid_argument("steps must be positive");
    if (i > 0 && steps <= points[i - 1].first) throw std::invalid_argument("steps must be strictly increasing");
    if (!(var > 0.0)) throw std::invalid_argument("variance must be positive");
    const double x = std::log(static_cast<double>(steps));
    const double y = std::log(var);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Half the L1 distance over the union of supports.
inline double total_variation(const Distribution& a, const Distribution& b) {
  std::set<Position> support;
  for (const auto& [pos, p] : a.entries) support.insert(pos);
  for (const auto& [pos, p] : b.entries) support.insert(pos);
  double s = 0.0;
  for (Position pos : support) s += std::abs(a.at(pos) - b.at(pos));
  return 0.5 * s;
}

}  // namespace qwalk
