#include "udn/geometry.hpp"

#include <cmath>
#include <numbers>

#include "udn/config.hpp"
#include "udn/error.hpp"

namespace udn {

Window::Window(double width, double height, Metric metric)
    : width_(width), height_(height), metric_(metric) {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height)) {
    throw InvalidParameter("window dimensions must be positive and finite");
  }
}

GridIndex::GridIndex(const PointSet& set, double cell_size) : set_(&set) {
  const Window& w = set.window;
  constexpr int kMaxBuckets = 1024;
  const double cell = cell_size > 0.0 ? cell_size : std::max(w.width(), w.height());
  nx_ = std::clamp(static_cast<int>(w.width() / cell), 1, kMaxBuckets);
  ny_ = std::clamp(static_cast<int>(w.height() / cell), 1, kMaxBuckets);
  cell_w_ = w.width() / nx_;
  cell_h_ = w.height() / ny_;

  const std::size_t n_buckets = static_cast<std::size_t>(nx_) * ny_;
  std::vector<std::size_t> bucket_of(set.size());
  bucket_start_.assign(n_buckets + 1, 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Point p = set.points[i];
    bucket_of[i] = static_cast<std::size_t>(bucket_y(p.y)) * nx_ + bucket_x(p.x);
    ++bucket_start_[bucket_of[i] + 1];
  }
  for (std::size_t b = 0; b < n_buckets; ++b) bucket_start_[b + 1] += bucket_start_[b];
  items_.resize(set.size());
  std::vector<std::size_t> fill(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < set.size(); ++i) items_[fill[bucket_of[i]]++] = i;
}

int GridIndex::bucket_x(double x) const noexcept {
  return std::clamp(static_cast<int>(x / cell_w_), 0, nx_ - 1);
}

int GridIndex::bucket_y(double y) const noexcept {
  return std::clamp(static_cast<int>(y / cell_h_), 0, ny_ - 1);
}

PointSet sample_ppp(double intensity, const Window& window, RandomStream& rng) {
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw InvalidParameter("point process intensity must be non-negative");
  }
  PointSet out{{}, window};
  const std::uint64_t n = rng.poisson(intensity * window.area());
  out.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.points.push_back({rng.uniform(0.0, window.width()), rng.uniform(0.0, window.height())});
  }
  return out;
}

HardCoreSet matern_hardcore_thinning(const PointSet& candidates, double min_separation,
                                     RandomStream& rng) {
  if (!(min_separation >= 0.0) || !std::isfinite(min_separation)) {
    throw InvalidParameter("hard-core distance must be non-negative");
  }
  HardCoreSet out{PointSet{{}, candidates.window}, min_separation};
  const std::size_t n = candidates.size();
  std::vector<double> mark(n);
  for (auto& m : mark) m = rng.uniform();

  if (min_separation == 0.0) {
    out.retained.points = candidates.points;
    return out;
  }

  const GridIndex index(candidates, min_separation);
  for (std::size_t i = 0; i < n; ++i) {
    bool keep = true;
    index.for_each_within(candidates.points[i], min_separation, [&](std::size_t j, double d) {
      if (j == i || d >= min_separation) return;
      if (mark[j] < mark[i] || (mark[j] == mark[i] && j < i)) keep = false;
    });
    if (keep) out.retained.points.push_back(candidates.points[i]);
  }
  return out;
}

TypicalUserScenario typical_user_scenario(const NetworkConfig& cfg, RandomStream& rng) {
  cfg.validate();
  RandomStream user_rng = rng.split(0);
  RandomStream rap_rng = rng.split(1);

  const Window& window = cfg.window;
  const Point center = window.center();
  const double d = cfg.min_separation;

  const PointSet candidates = sample_ppp(cfg.user_density, window, user_rng);
  HardCoreSet thinned = matern_hardcore_thinning(candidates, d, user_rng);
  std::erase_if(thinned.retained.points,
                [&](Point p) { return window.distance_squared(p, center) < d * d; });

  return {center, std::move(thinned), sample_ppp(cfg.rap_density, window, rap_rng)};
}

VirtualCellGeometry form_virtual_cell(Point user, const PointSet& raps, double radius) {
  if (!(radius >= 0.0)) throw InvalidParameter("virtual cell radius must be non-negative");
  VirtualCellGeometry cell{user, {}, {}, {}, radius};
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < raps.size(); ++i) {
    const double d2 = raps.window.distance_squared(user, raps.points[i]);
    if (d2 <= r2) {
      cell.members.push_back(raps.points[i]);
      cell.member_index.push_back(i);
      cell.distances.push_back(std::sqrt(d2));
    }
  }
  return cell;
}

VirtualCellGeometry form_virtual_cell(Point user, const PointSet& raps, const GridIndex& index,
                                      double radius) {
  if (!(radius >= 0.0)) throw InvalidParameter("virtual cell radius must be non-negative");
  VirtualCellGeometry cell{user, {}, {}, {}, radius};
  std::vector<std::pair<std::size_t, double>> hits;
  index.for_each_within(user, radius, [&](std::size_t i, double d) { hits.emplace_back(i, d); });
  // Bucket order is an artefact of the index; keep parent order.
  std::sort(hits.begin(), hits.end());
  for (const auto& [i, d] : hits) {
    cell.members.push_back(raps.points[i]);
    cell.member_index.push_back(i);
    cell.distances.push_back(d);
  }
  return cell;
}

double scheduling_probability(double user_density, double min_separation) {
  if (!(user_density >= 0.0) || !(min_separation >= 0.0)) {
    throw InvalidParameter("scheduling probability needs non-negative density and distance");
  }
  const double x = user_density * std::numbers::pi * min_separation * min_separation;
  if (x < 1e-8) return 1.0 - x / 2.0 + x * x / 6.0;
  return -std::expm1(-x) / x;
}

}  // namespace udn
