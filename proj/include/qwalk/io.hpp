#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "qwalk/state.hpp"
#include "qwalk/two_particle.hpp"

namespace qwalk::io {

/// Locale-independent rendering with 17 significant digits.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int digits = 3) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// CSV

inline void write_csv_header(std::ostream& os, bool joint, bool trace) {
  if (trace) os << "step,";
  os << (joint ? "i,j,probability\n" : "position,probability\n");
}

inline void write_csv_rows(std::ostream& os, const Distribution& d, std::optional<std::size_t> step = {}) {
  for (const auto& [pos, p] : d.entries) {
    if (step) os << *step << ',';
    os << pos << ',' << format_real(p) << '\n';
  }
}

inline void write_csv_rows(std::ostream& os, const JointDistribution& d, std::optional<std::size_t> step = {}) {
  for (const auto& [ij, p] : d.entries) {
    if (step) os << *step << ',';
    os << ij.first << ',' << ij.second << ',' << format_real(p) << '\n';
  }
}

// ---------------------------------------------------------------------------
// SVG

struct Curve {
  std::vector<std::pair<double, double>> points;
  std::string color = "#d62728";
};

/// Bar chart of a 1D distribution with an optional overlaid curve.
inline std::string bar_chart_svg(const Distribution& d, const std::string& title,
                                 const std::optional<Curve>& overlay = {}) {
  constexpr double kW = 800.0, kH = 400.0, kMargin = 50.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" style=\"font-family:sans-serif;font-size:14px;text-anchor:middle\">"
     << title << "</text>\n";
  if (!d.empty()) {
    const double lo = static_cast<double>(d.entries.begin()->first);
    const double hi = static_cast<double>(d.entries.rbegin()->first);
    double pmax = 0.0;
    for (const auto& [pos, p] : d.entries) pmax = std::max(pmax, p);
    if (overlay) {
      for (const auto& [x, y] : overlay->points) pmax = std::max(pmax, y);
    }
    if (pmax <= 0.0) pmax = 1.0;
    const double span = std::max(hi - lo, 1.0);
    const double plot_w = kW - 2 * kMargin, plot_h = kH - 2 * kMargin;
    const double bar_w = std::max(plot_w / (span + 1.0), 1.0);
    auto sx = [&](double x) { return kMargin + (x - lo) / span * (plot_w - bar_w) + bar_w / 2; };
    auto sy = [&](double y) { return kH - kMargin - y / pmax * plot_h; };
    os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin << "\" y2=\""
       << kH - kMargin << "\" style=\"stroke:#000000\"/>\n";
    for (const auto& [pos, p] : d.entries) {
      const double x = sx(static_cast<double>(pos)) - bar_w / 2;
      const double y = sy(p);
      os << "<rect x=\"" << format_fixed(x) << "\" y=\"" << format_fixed(y) << "\" width=\"" << format_fixed(bar_w)
         << "\" height=\"" << format_fixed(kH - kMargin - y) << "\" style=\"fill:#1f77b4\"/>\n";
    }
    if (overlay && !overlay->points.empty()) {
      os << "<polyline style=\"fill:none;stroke:" << overlay->color << ";stroke-width:1.5\" points=\"";
      for (const auto& [x, y] : overlay->points) {
        if (x < lo || x > hi) continue;
        os << format_fixed(sx(x)) << ',' << format_fixed(sy(y)) << ' ';
      }
      os << "\"/>\n";
    }
    os << "<text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 18
       << "\" style=\"font-family:sans-serif;font-size:11px\">" << static_cast<long long>(lo) << "</text>\n";
    os << "<text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 18
       << "\" style=\"font-family:sans-serif;font-size:11px;text-anchor:end\">" << static_cast<long long>(hi)
       << "</text>\n";
    os << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin
       << "\" style=\"font-family:sans-serif;font-size:11px;text-anchor:end\">" << format_fixed(pmax, 4)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Grayscale heat map of P(i, j): black is the maximum, white is zero.
inline std::string heat_map_svg(const JointDistribution& d, const std::string& title) {
  constexpr double kSize = 600.0, kMargin = 50.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
     << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" style=\"fill:#ffffff\"/>\n";
  os << "<text x=\"" << kSize / 2
     << "\" y=\"24\" style=\"font-family:sans-serif;font-size:14px;text-anchor:middle\">" << title << "</text>\n";
  if (!d.empty()) {
    Position lo = d.entries.begin()->first.first, hi = lo;
    double pmax = 0.0;
    for (const auto& [ij, p] : d.entries) {
      lo = std::min({lo, ij.first, ij.second});
      hi = std::max({hi, ij.first, ij.second});
      pmax = std::max(pmax, p);
    }
    if (pmax <= 0.0) pmax = 1.0;
    const double cells = static_cast<double>(hi - lo + 1);
    const double cell = (kSize - 2 * kMargin) / cells;
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize - 2 * kMargin << "\" height=\""
       << kSize - 2 * kMargin << "\" style=\"fill:none;stroke:#000000\"/>\n";
    for (const auto& [ij, p] : d.entries) {
      const int level = static_cast<int>(std::lround(255.0 * (1.0 - p / pmax)));
      // particle 1 on the horizontal axis, particle 2 increasing upward
      const double x = kMargin + static_cast<double>(ij.first - lo) * cell;
      const double y = kSize - kMargin - static_cast<double>(ij.second - lo + 1) * cell;
      os << "<rect x=\"" << format_fixed(x) << "\" y=\"" << format_fixed(y) << "\" width=\"" << format_fixed(cell)
         << "\" height=\"" << format_fixed(cell) << "\" style=\"fill:rgb(" << level << ',' << level << ',' << level
         << ")\"/>\n";
    }
    os << "<text x=\"" << kSize / 2 << "\" y=\"" << kSize - kMargin + 20
       << "\" style=\"font-family:sans-serif;font-size:11px;text-anchor:middle\">particle 1 position [" << lo
       << ", " << hi << "]</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Gaussian with the given variance, doubled because a +-1 walk only
/// occupies every other site.
inline Curve parity_gaussian(double variance, double lo, double hi, int samples = 400) {
  Curve c;
  if (variance <= 0.0) return c;
  const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi * variance);
  for (int s = 0; s <= samples; ++s) {
    const double x = lo + (hi - lo) * s / samples;
    c.points.emplace_back(x, norm * std::exp(-x * x / (2.0 * variance)));
  }
  return c;
}

}  // namespace qwalk::io
