#include "citemap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "citemap/error.hpp"
#include "citemap/random.hpp"

namespace citemap {

namespace {

constexpr int kQuenchHalvings = 12;

// Half up; the slack absorbs representation error in t, so a rate that is
// exactly midway in decimal still rounds up.
std::uint8_t round_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5 + 1e-9), 0.0, 255.0));
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Rgb parse_hex_color(std::string_view hex) {
  if (!hex.empty() && hex.front() == '#') hex.remove_prefix(1);
  if (hex.size() != 6) throw DomainError("colour must be #rrggbb");
  std::uint8_t channels[3];
  for (int i = 0; i < 3; ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw DomainError("colour must be #rrggbb");
    channels[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {channels[0], channels[1], channels[2]};
}

std::string to_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

Rgb color_for_rate(double rate, double min_rate, double max_rate, const ColorScale& scale, bool* clamped) {
  bool was_clamped = false;
  if (rate < min_rate) {
    rate = min_rate;
    was_clamped = true;
  } else if (rate > max_rate) {
    rate = max_rate;
    was_clamped = true;
  }
  if (clamped) *clamped = was_clamped;
  const double span = max_rate - min_rate;
  const double t = span > 0.0 ? (rate - min_rate) / span : 0.0;
  const auto mix = [t](std::uint8_t lo, std::uint8_t hi) { return round_channel((1.0 - t) * lo + t * hi); };
  return {mix(scale.low.r, scale.high.r), mix(scale.low.g, scale.high.g), mix(scale.low.b, scale.high.b)};
}

LayoutResult spring_layout(const WeightedGraph& graph, const LayoutOptions& options) {
  if (options.iterations == 0) throw DomainError("layout needs at least one iteration");
  const std::size_t n = graph.node_count();
  LayoutResult out;
  out.width = options.width;
  out.height = options.height;
  out.positions.resize(n);
  out.colors.assign(n, kUnratedColor);
  if (n == 0) return out;
  const Point center{options.width / 2.0, options.height / 2.0};
  out.ideal_length = std::sqrt(options.width * options.height / static_cast<double>(n));
  if (n == 1) {
    out.positions[0] = center;
    return out;
  }

  Rng rng(options.seed);
  auto& pos = out.positions;
  for (auto& p : pos) {
    p.x = rng.uniform() * options.width;
    p.y = rng.uniform() * options.height;
  }

  const double k = out.ideal_length;
  const double k2 = k * k;
  const auto edges = graph.edges();
  const double t0 = options.width / 10.0;

  // Net force on every node; returns the sum of force magnitudes.
  const auto net_forces = [&](const std::vector<Point>& at, std::vector<Point>& disp) {
    std::fill(disp.begin(), disp.end(), Point{});
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        double dx = at[u].x - at[v].x;
        double dy = at[u].y - at[v].y;
        double d = std::hypot(dx, dy);
        if (d < 1e-9) {
          // Coincident nodes: push apart along a fixed direction.
          dx = 1e-3 * static_cast<double>(v - u);
          dy = 0.0;
          d = std::abs(dx);
        }
        const double f = k2 / d;
        disp[u].x += dx / d * f;
        disp[u].y += dy / d * f;
        disp[v].x -= dx / d * f;
        disp[v].y -= dy / d * f;
      }
    }
    for (const auto& e : edges) {
      if (e.u == e.v) continue;
      const double dx = at[e.u].x - at[e.v].x;
      const double dy = at[e.u].y - at[e.v].y;
      const double d = std::hypot(dx, dy);
      if (d < 1e-9) continue;
      const double f = d * d / k;
      disp[e.u].x -= dx / d * f;
      disp[e.u].y -= dy / d * f;
      disp[e.v].x += dx / d * f;
      disp[e.v].y += dy / d * f;
    }
    double energy = 0.0;
    for (const auto& f : disp) energy += std::hypot(f.x, f.y);
    return energy;
  };
  const auto step_to = [&](const std::vector<Point>& disp, double cap, std::vector<Point>& into) {
    for (std::size_t u = 0; u < n; ++u) {
      into[u] = pos[u];
      const double len = std::hypot(disp[u].x, disp[u].y);
      if (len > 0.0) {
        const double step = std::min(len, cap);
        into[u].x += disp[u].x / len * step;
        into[u].y += disp[u].y / len * step;
      }
    }
  };

  const auto quench_iterations = static_cast<std::size_t>(
      std::ceil(options.quench_fraction * static_cast<double>(options.iterations)));
  const std::size_t quench_start = options.iterations - std::min(quench_iterations, options.iterations);
  std::vector<Point> disp(n);
  std::vector<Point> trial(n);
  std::vector<Point> trial_disp(n);
  out.energy.reserve(options.iterations);
  double energy = net_forces(pos, disp);

  for (std::size_t it = 0; it < options.iterations; ++it) {
    out.energy.push_back(energy);
    double cap = t0 * (1.0 - static_cast<double>(it) / static_cast<double>(options.iterations));
    if (it < quench_start) {
      step_to(disp, cap, trial);
      pos.swap(trial);
      energy = net_forces(pos, disp);
      continue;
    }
    // Quench: only take steps that do not raise the force sum.
    for (int attempt = 0; attempt < kQuenchHalvings; ++attempt, cap /= 2.0) {
      step_to(disp, cap, trial);
      const double trial_energy = net_forces(trial, trial_disp);
      if (trial_energy <= energy) {
        pos.swap(trial);
        disp.swap(trial_disp);
        energy = trial_energy;
        break;
      }
    }
  }

  // Centre the bounding box and shrink it into the margins if needed.
  double min_x = pos[0].x, max_x = pos[0].x, min_y = pos[0].y, max_y = pos[0].y;
  for (const auto& p : pos) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double avail_w = std::max(0.0, options.width - 2.0 * options.margin);
  const double avail_h = std::max(0.0, options.height - 2.0 * options.margin);
  double scale = 1.0;
  if (max_x - min_x > avail_w) scale = std::min(scale, avail_w / (max_x - min_x));
  if (max_y - min_y > avail_h) scale = std::min(scale, avail_h / (max_y - min_y));
  const Point box_center{(min_x + max_x) / 2.0, (min_y + max_y) / 2.0};
  for (auto& p : pos) {
    p.x = center.x + (p.x - box_center.x) * scale;
    p.y = center.y + (p.y - box_center.y) * scale;
  }
  return out;
}

std::size_t assign_colors(LayoutResult& layout, std::span<const std::optional<double>> rates, const ColorScale& scale) {
  if (rates.size() != layout.positions.size()) throw DomainError("rates do not cover the layout");
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& r : rates) {
    if (!r) continue;
    lo = first ? *r : std::min(lo, *r);
    hi = first ? *r : std::max(hi, *r);
    first = false;
  }
  std::size_t clamped_count = 0;
  layout.colors.assign(rates.size(), kUnratedColor);
  for (std::size_t u = 0; u < rates.size(); ++u) {
    if (!rates[u]) continue;
    bool clamped = false;
    layout.colors[u] = color_for_rate(*rates[u], lo, hi, scale, &clamped);
    if (clamped) ++clamped_count;
  }
  return clamped_count;
}

}  // namespace citemap
