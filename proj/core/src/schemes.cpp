#include "udn/schemes.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "udn/error.hpp"

namespace udn {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Mrt:
      return "mrt";
    case Scheme::NonCoherentJt:
      return "ncjt";
    case Scheme::MaxSnr:
      return "maxsnr";
    case Scheme::NearestRap:
      return "nearest";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (to_string(s) == name) return s;
  }
  throw InvalidParameter("unknown scheme '" + std::string(name) +
                         "' (expected mrt, ncjt, maxsnr or nearest)");
}

namespace {

EncoderAssignment single_transmitter(Scheme scheme, const CellChannelState& state,
                                     std::size_t chosen) {
  EncoderAssignment a{scheme, std::vector<double>(state.size(), 0.0),
                      std::vector<double>(state.size(), 0.0), true};
  a.weights[chosen] = 1.0;
  a.phase_rotation[chosen] = -state.links[chosen].phase;
  return a;
}

}  // namespace

EncoderAssignment mrt_assignment(const CellChannelState& state) {
  EncoderAssignment a{Scheme::Mrt, {}, {}, true};
  if (state.empty()) return a;
  double total = 0.0;
  for (const auto& l : state.links) total += l.channel_gain();
  a.weights.reserve(state.size());
  a.phase_rotation.reserve(state.size());
  for (const auto& l : state.links) {
    // All-zero gains only arise from degenerate inputs; split evenly.
    a.weights.push_back(total > 0.0 ? l.channel_gain() / total
                                    : 1.0 / static_cast<double>(state.size()));
    a.phase_rotation.push_back(-l.phase);
  }
  return a;
}

EncoderAssignment noncoherent_assignment(const CellChannelState& state) {
  const auto n = state.size();
  return {Scheme::NonCoherentJt, std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0),
          std::vector<double>(n, 0.0), false};
}

EncoderAssignment max_snr_assignment(const CellChannelState& state) {
  if (state.empty()) return {Scheme::MaxSnr, {}, {}, true};
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.size(); ++i) {
    if (state.links[i].channel_gain() > state.links[best].channel_gain()) best = i;
  }
  return single_transmitter(Scheme::MaxSnr, state, best);
}

EncoderAssignment nearest_rap_assignment(const CellChannelState& state) {
  if (state.empty()) return {Scheme::NearestRap, {}, {}, true};
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.size(); ++i) {
    if (state.links[i].distance < state.links[best].distance) best = i;
  }
  return single_transmitter(Scheme::NearestRap, state, best);
}

EncoderAssignment assign(Scheme scheme, const CellChannelState& state) {
  switch (scheme) {
    case Scheme::Mrt:
      return mrt_assignment(state);
    case Scheme::NonCoherentJt:
      return noncoherent_assignment(state);
    case Scheme::MaxSnr:
      return max_snr_assignment(state);
    case Scheme::NearestRap:
      return nearest_rap_assignment(state);
  }
  throw InvalidParameter("unknown scheme");
}

double signal_power(const CellChannelState& state, const EncoderAssignment& assignment) {
  if (state.empty()) return 0.0;
  if (assignment.weights.size() != state.size()) {
    throw InvalidParameter("encoder assignment does not match the cell");
  }
  switch (assignment.scheme) {
    case Scheme::Mrt: {
      // Co-phased and power-proportional: the amplitudes add to sum_i l_i g_i.
      double s = 0.0;
      for (const auto& l : state.links) s += l.channel_gain();
      return s;
    }
    case Scheme::MaxSnr:
    case Scheme::NearestRap:
      for (std::size_t i = 0; i < state.size(); ++i) {
        if (assignment.weights[i] == 1.0) return state.links[i].channel_gain();
      }
      return 0.0;
    case Scheme::NonCoherentJt:
      break;
  }
  std::complex<double> field{0.0, 0.0};
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto& l = state.links[i];
    field += std::polar(std::sqrt(l.channel_gain() * assignment.weights[i]),
                        l.phase + assignment.phase_rotation[i]);
  }
  return std::norm(field);
}

}  // namespace udn
