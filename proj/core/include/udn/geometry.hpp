#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "udn/rng.hpp"

namespace udn {

struct NetworkConfig;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Metric {
  Toroidal,           ///< wrap-around distances; stationary environment everywhere
  EuclideanWithGuard  ///< plain distances; points near the edge see fewer neighbours
};

/// Rectangular observation window [0, width) x [0, height), lengths in metres.
class Window {
 public:
  Window(double width, double height, Metric metric = Metric::Toroidal);

  [[nodiscard]] double width() const noexcept { return width_; }
  [[nodiscard]] double height() const noexcept { return height_; }
  [[nodiscard]] Metric metric() const noexcept { return metric_; }
  [[nodiscard]] double area() const noexcept { return width_ * height_; }
  [[nodiscard]] Point center() const noexcept { return {width_ / 2.0, height_ / 2.0}; }
  [[nodiscard]] bool contains(Point p) const noexcept {
    return p.x >= 0.0 && p.x < width_ && p.y >= 0.0 && p.y < height_;
  }

  [[nodiscard]] double distance_squared(Point a, Point b) const noexcept {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    if (metric_ == Metric::Toroidal) {
      dx = std::min(dx, width_ - dx);
      dy = std::min(dy, height_ - dy);
    }
    return dx * dx + dy * dy;
  }
  [[nodiscard]] double distance(Point a, Point b) const noexcept {
    return std::sqrt(distance_squared(a, b));
  }

 private:
  double width_;
  double height_;
  Metric metric_;
};

struct PointSet {
  std::vector<Point> points;
  Window window;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
  [[nodiscard]] bool empty() const noexcept { return points.empty(); }
};

/// Points with pairwise separation of at least `min_separation`.
struct HardCoreSet {
  PointSet retained;
  double min_separation = 0.0;
};

/// One user and the RAPs within `radius` of it. `member_index` refers to the
/// parent RAP set; `distances` are user-to-member distances.
struct VirtualCellGeometry {
  Point user;
  std::vector<Point> members;
  std::vector<std::size_t> member_index;
  std::vector<double> distances;
  double radius = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
  [[nodiscard]] bool empty() const noexcept { return members.empty(); }
};

/// Bucket grid for fixed-radius neighbour queries under the window metric.
class GridIndex {
 public:
  GridIndex(const PointSet& set, double cell_size);

  /// Calls fn(index, distance) for every point within `radius` of `p`.
  template <class Fn>
  void for_each_within(Point p, double radius, Fn&& fn) const;

 private:
  const PointSet* set_;
  int nx_ = 1;
  int ny_ = 1;
  double cell_w_ = 1.0;
  double cell_h_ = 1.0;
  std::vector<std::size_t> bucket_start_;
  std::vector<std::size_t> items_;

  [[nodiscard]] int bucket_x(double x) const noexcept;
  [[nodiscard]] int bucket_y(double y) const noexcept;
};

PointSet sample_ppp(double intensity, const Window& window, RandomStream& rng);

/// Matérn type-II thinning: every candidate draws a uniform mark and survives
/// iff no other candidate closer than `min_separation` holds a smaller mark.
HardCoreSet matern_hardcore_thinning(const PointSet& candidates, double min_separation,
                                     RandomStream& rng);

struct TypicalUserScenario {
  Point typical_user;
  HardCoreSet cochannel_users;
  PointSet raps;
};

/// Typical user at the window centre, co-channel users from a stationary
/// Matérn-II set restricted to the complement of the exclusion disc of radius D
/// around it, and an independent RAP field.
TypicalUserScenario typical_user_scenario(const NetworkConfig& cfg, RandomStream& rng);

VirtualCellGeometry form_virtual_cell(Point user, const PointSet& raps, double radius);
VirtualCellGeometry form_virtual_cell(Point user, const PointSet& raps, const GridIndex& index,
                                      double radius);

/// Probability that a contending user wins the channel under the exclusion
/// rule, (1 - exp(-x)) / x with x = lambda_u * pi * D^2.
double scheduling_probability(double user_density, double min_separation);

template <class Fn>
void GridIndex::for_each_within(Point p, double radius, Fn&& fn) const {
  const Window& w = set_->window;
  const double r2 = radius * radius;
  const bool wrap = w.metric() == Metric::Toroidal;

  auto range = [wrap](double lo, double hi, double cell, int n, int& first, int& count) {
    int a = static_cast<int>(std::floor(lo / cell));
    int b = static_cast<int>(std::floor(hi / cell));
    if (wrap) {
      if (b - a + 1 >= n) {
        first = 0;
        count = n;
      } else {
        first = a;
        count = b - a + 1;
      }
    } else {
      a = std::clamp(a, 0, n - 1);
      b = std::clamp(b, 0, n - 1);
      first = a;
      count = b - a + 1;
    }
  };

  int x0 = 0, nxq = 0, y0 = 0, nyq = 0;
  range(p.x - radius, p.x + radius, cell_w_, nx_, x0, nxq);
  range(p.y - radius, p.y + radius, cell_h_, ny_, y0, nyq);

  for (int j = 0; j < nyq; ++j) {
    const int by = ((y0 + j) % ny_ + ny_) % ny_;
    for (int i = 0; i < nxq; ++i) {
      const int bx = ((x0 + i) % nx_ + nx_) % nx_;
      const std::size_t b = static_cast<std::size_t>(by) * nx_ + bx;
      for (std::size_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
        const std::size_t idx = items_[k];
        const double d2 = w.distance_squared(p, set_->points[idx]);
        if (d2 <= r2) fn(idx, std::sqrt(d2));
      }
    }
  }
}

}  // namespace udn
