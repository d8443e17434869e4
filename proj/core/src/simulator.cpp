#include "udn/simulator.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "udn/error.hpp"
#include "udn/geometry.hpp"

namespace udn {
namespace {

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct ForeignCell {
  std::vector<double> own_distance;
  std::vector<double> own_gain;
  std::vector<std::size_t> slot;  // into the per-drop typical-user link table
};

Window cell_window(double radius) {
  return Window(2.0 * radius, 2.0 * radius, Metric::EuclideanWithGuard);
}

}  // namespace

double throughput_bits(const SinrSample& sample, double bandwidth) {
  return bandwidth * std::log2(1.0 + sample.sinr());
}

std::vector<SinrSample> run_drop(const NetworkConfig& cfg, Scheme scheme, RandomStream& rng,
                                 std::size_t fadings_per_drop) {
  if (fadings_per_drop < 1) throw InvalidParameter("fadings_per_drop must be at least 1");
  const TypicalUserScenario scenario = typical_user_scenario(cfg, rng);
  RandomStream fading_rng = rng.split(2);

  const PointSet& raps = scenario.raps;
  const Window& window = raps.window;
  const Point u0 = scenario.typical_user;
  const double c = cfg.cell_radius;
  const PathLossModel& pl = cfg.path_loss;
  const double noise = cfg.noise_over_power();
  const GridIndex index(raps, std::max(c, 1.0));

  // Every RAP that transmits anything gets one slot holding its link to u0.
  std::vector<std::size_t> slot_of(raps.size(), SIZE_MAX);
  std::vector<double> gain_to_typical;
  auto slot_for = [&](std::size_t rap) {
    if (slot_of[rap] == SIZE_MAX) {
      slot_of[rap] = gain_to_typical.size();
      gain_to_typical.push_back(pl.gain(window.distance(u0, raps.points[rap])));
    }
    return slot_of[rap];
  };

  const VirtualCellGeometry own = form_virtual_cell(u0, raps, index, c);
  std::vector<std::size_t> own_slots;
  for (std::size_t rap : own.member_index) own_slots.push_back(slot_for(rap));

  std::vector<ForeignCell> foreign;
  for (const Point& u : scenario.cochannel_users.retained.points) {
    const VirtualCellGeometry cell = form_virtual_cell(u, raps, index, c);
    if (cell.empty()) continue;
    ForeignCell fc;
    fc.own_distance = cell.distances;
    for (std::size_t m = 0; m < cell.size(); ++m) {
      fc.own_gain.push_back(pl.gain(cell.distances[m]));
      fc.slot.push_back(slot_for(cell.member_index[m]));
    }
    foreign.push_back(std::move(fc));
  }

  std::vector<LinkFading> to_typical(gain_to_typical.size());
  CellChannelState state;
  std::vector<SinrSample> samples;
  samples.reserve(fadings_per_drop);
  for (std::size_t f = 0; f < fadings_per_drop; ++f) {
    for (auto& lf : to_typical) lf = sample_link_fading(fading_rng);

    state.links.clear();
    for (std::size_t m = 0; m < own.size(); ++m) {
      const LinkFading& lf = to_typical[own_slots[m]];
      state.links.push_back({own.distances[m], gain_to_typical[own_slots[m]], lf.gain, lf.phase});
    }
    const double signal = signal_power(state, assign(scheme, state));

    double interference = 0.0;
    for (const ForeignCell& fc : foreign) {
      state.links.clear();
      for (std::size_t m = 0; m < fc.slot.size(); ++m) {
        const LinkFading lf = sample_link_fading(fading_rng);
        state.links.push_back({fc.own_distance[m], fc.own_gain[m], lf.gain, lf.phase});
      }
      const EncoderAssignment a = assign(scheme, state);
      for (std::size_t m = 0; m < fc.slot.size(); ++m) {
        const std::size_t s = fc.slot[m];
        interference += gain_to_typical[s] * to_typical[s].gain * a.weights[m];
      }
    }
    samples.push_back({signal, interference, noise});
  }
  return samples;
}

ThroughputEstimate summarize_throughput(std::span<const std::vector<SinrSample>> drops,
                                        double bandwidth) {
  ThroughputEstimate est;
  est.bandwidth = bandwidth;
  est.n_drops = drops.size();
  std::vector<double> sums(drops.size(), 0.0);
  std::vector<std::size_t> sizes(drops.size(), 0);
  double total = 0.0;
  for (std::size_t d = 0; d < drops.size(); ++d) {
    for (const auto& s : drops[d]) sums[d] += throughput_bits(s, bandwidth);
    sizes[d] = drops[d].size();
    total += sums[d];
    est.n_samples += sizes[d];
  }
  if (est.n_samples == 0) return est;
  const double n = static_cast<double>(est.n_samples);
  est.mean = total / n;

  double within_ss = 0.0;
  std::size_t within_df = 0;
  double between_ss = 0.0;
  double cluster_ss = 0.0;
  for (std::size_t d = 0; d < drops.size(); ++d) {
    if (sizes[d] == 0) continue;
    const double drop_mean = sums[d] / static_cast<double>(sizes[d]);
    for (const auto& s : drops[d]) {
      const double e = throughput_bits(s, bandwidth) - drop_mean;
      within_ss += e * e;
    }
    within_df += sizes[d] - 1;
    between_ss += (drop_mean - est.mean) * (drop_mean - est.mean);
    const double resid = sums[d] - static_cast<double>(sizes[d]) * est.mean;
    cluster_ss += resid * resid;
  }
  est.within_drop_variance = within_df ? within_ss / static_cast<double>(within_df) : 0.0;
  const double k = static_cast<double>(drops.size());
  double variance_of_mean = 0.0;
  if (drops.size() >= 2) {
    est.between_drop_variance = between_ss / (k - 1.0);
    variance_of_mean = k / (k - 1.0) * cluster_ss / (n * n);
  } else {
    variance_of_mean = est.within_drop_variance / n;
  }
  est.ci95_halfwidth = 1.959963984540054 * std::sqrt(variance_of_mean);
  return est;
}

ThroughputEstimate estimate_tau(const NetworkConfig& cfg, Scheme scheme,
                                const MonteCarloSpec& spec) {
  cfg.validate();
  if (spec.n_drops < 1) throw InvalidParameter("n_drops must be at least 1");
  const RandomStream root(spec.seed);
  std::vector<std::vector<SinrSample>> drops(spec.n_drops);
  parallel_for(spec.n_drops, spec.threads, [&](std::size_t i) {
    RandomStream rng = root.split(i);
    drops[i] = run_drop(cfg, scheme, rng, spec.fadings_per_drop);
  });
  return summarize_throughput(drops, cfg.bandwidth);
}

std::vector<EtaEstimate> estimate_eta(const NetworkConfig& cfg, Scheme scheme,
                                      std::span<const double> d_grid,
                                      std::optional<double> cell_to_separation,
                                      const MonteCarloSpec& spec) {
  if (d_grid.empty()) throw InvalidParameter("separation grid must not be empty");
  std::vector<EtaEstimate> out;
  for (double d : d_grid) {
    NetworkConfig point = cfg;
    point.min_separation = d;
    if (cell_to_separation) point.cell_radius = *cell_to_separation * d;
    EtaEstimate e;
    e.min_separation = d;
    e.cell_radius = point.cell_radius;
    e.tau = estimate_tau(point, scheme, spec);
    const double density = cfg.user_density * scheduling_probability(cfg.user_density, d);
    e.spatial_throughput = density * e.tau.mean;
    e.spatial_ci95_halfwidth = density * e.tau.ci95_halfwidth;
    out.push_back(e);
  }
  return out;
}

MeanEstimate empirical_weight_moment(const NetworkConfig& cfg, double r,
                                     std::size_t n_realizations, std::uint64_t seed) {
  cfg.validate();
  const double c = cfg.cell_radius;
  if (!(r >= 0.0) || r > c) {
    throw InvalidParameter("conditioned RAP distance must satisfy 0 <= r <= C");
  }
  if (n_realizations < 2) throw InvalidParameter("need at least two realisations");
  RandomStream rng(seed);
  const double pinned_gain = cfg.path_loss.gain(r);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n_realizations; ++i) {
    double others = 0.0;
    const double own = pinned_gain * rng.exponential();
    if (c > 0.0) {
      const PointSet field = sample_ppp(cfg.rap_density, cell_window(c), rng);
      const VirtualCellGeometry cell = form_virtual_cell(field.window.center(), field, c);
      for (double dist : cell.distances) others += cfg.path_loss.gain(dist) * rng.exponential();
    }
    const double w = own + others > 0.0 ? own / (own + others) : 1.0;
    sum += w;
    sum_sq += w * w;
  }
  const double n = static_cast<double>(n_realizations);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), n_realizations};
}

double empirical_laplace(std::span<const double> samples, double t) {
  if (!(t >= 0.0)) throw InvalidParameter("Laplace argument must be non-negative");
  if (samples.empty()) throw InvalidParameter("empirical Laplace transform needs samples");
  double sum = 0.0;
  for (double x : samples) sum += std::exp(-t * x);
  return sum / static_cast<double>(samples.size());
}

MeanEstimate empirical_laplace_estimate(std::span<const double> samples, double t) {
  if (!(t >= 0.0)) throw InvalidParameter("Laplace argument must be non-negative");
  if (samples.empty()) throw InvalidParameter("empirical Laplace transform needs samples");
  if (t == 0.0) return {1.0, 0.0, samples.size()};
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : samples) {
    const double v = std::exp(-t * x);
    ++k;
    const double delta = v - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(samples.size());
  const double var = n > 1 ? m2 / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n), samples.size()};
}

CellChannelState sample_isolated_cell(const NetworkConfig& cfg, RandomStream& rng) {
  CellChannelState state;
  const double c = cfg.cell_radius;
  if (c == 0.0) return state;
  const PointSet field = sample_ppp(cfg.rap_density, cell_window(c), rng);
  const VirtualCellGeometry cell = form_virtual_cell(field.window.center(), field, c);
  for (double dist : cell.distances) {
    const LinkFading lf = sample_link_fading(rng);
    state.links.push_back({dist, cfg.path_loss.gain(dist), lf.gain, lf.phase});
  }
  return state;
}

std::vector<double> sample_cell_signal(const NetworkConfig& cfg, Scheme scheme, std::size_t n,
                                       RandomStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CellChannelState state = sample_isolated_cell(cfg, rng);
    out.push_back(signal_power(state, assign(scheme, state)));
  }
  return out;
}

}  // namespace udn
