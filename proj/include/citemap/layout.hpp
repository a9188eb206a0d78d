#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemap/graph.hpp"

namespace citemap {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// "#rrggbb" or "rrggbb".
Rgb parse_hex_color(std::string_view hex);
std::string to_hex(Rgb color);

struct ColorScale {
  Rgb low{255, 0, 0};
  Rgb high{0, 0, 255};
};

/// Linear interpolation between the scale ends with t = (rate - min) /
/// (max - min), each channel rounded half up. A degenerate range gives t = 0.
/// Out-of-range rates are clamped and reported through `clamped`.
Rgb color_for_rate(double rate, double min_rate, double max_rate, const ColorScale& scale = {},
                   bool* clamped = nullptr);

struct LayoutOptions {
  std::uint64_t seed = 42;
  std::size_t iterations = 500;
  double width = 1000.0;
  double height = 1000.0;
  /// Minimum distance kept between nodes and the canvas border after the
  /// final fit.
  double margin = 20.0;
  /// Closing share of iterations in which a step is only taken if it does
  /// not raise the force sum (the step is halved until it does).
  double quench_fraction = 0.1;
};

struct LayoutResult {
  std::vector<Point> positions;
  std::vector<Rgb> colors;  ///< filled by assign_colors
  double width = 0.0;
  double height = 0.0;
  double ideal_length = 0.0;
  /// Sum of per-node net force magnitudes, one entry per iteration.
  std::vector<double> energy;
};

/// Fruchterman-Reingold style embedding: repulsion k^2/d between all pairs,
/// attraction d^2/k along edges, displacement capped by a linearly cooling
/// temperature, k = sqrt(area / n). The result is centred on the canvas and
/// shrunk (never enlarged) to fit inside the margins.
LayoutResult spring_layout(const WeightedGraph& graph, const LayoutOptions& options = {});

/// Colours each node from its rate; nodes without a rate get neutral grey.
/// Returns the number of rates that had to be clamped.
std::size_t assign_colors(LayoutResult& layout, std::span<const std::optional<double>> rates, const ColorScale& scale);

inline constexpr Rgb kUnratedColor{160, 160, 160};

}  // namespace citemap
