#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace udn {

enum class Scheme { Mrt, NonCoherentJt, MaxSnr, NearestRap };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::Mrt, Scheme::MaxSnr,
                                                      Scheme::NearestRap, Scheme::NonCoherentJt};

/// CLI spelling: mrt, ncjt, maxsnr, nearest.
std::string_view to_string(Scheme scheme);
/// Throws InvalidParameter on an unknown name.
Scheme parse_scheme(std::string_view name);

/// Link from one cell member to the user it serves.
struct MemberLink {
  double distance = 0.0;
  double path_gain = 0.0;  ///< path loss gain at `distance`
  double fading = 0.0;     ///< Rayleigh power gain
  double phase = 0.0;

  [[nodiscard]] double channel_gain() const noexcept { return path_gain * fading; }
};

struct CellChannelState {
  std::vector<MemberLink> links;

  [[nodiscard]] bool empty() const noexcept { return links.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return links.size(); }
};

/// Per-member transmit power fraction and phase rotation for one user's stream.
/// Weights sum to one on a non-empty cell.
struct EncoderAssignment {
  Scheme scheme = Scheme::Mrt;
  std::vector<double> weights;
  std::vector<double> phase_rotation;
  bool coherent = true;
};

EncoderAssignment mrt_assignment(const CellChannelState& state);
EncoderAssignment noncoherent_assignment(const CellChannelState& state);
EncoderAssignment max_snr_assignment(const CellChannelState& state);
EncoderAssignment nearest_rap_assignment(const CellChannelState& state);
EncoderAssignment assign(Scheme scheme, const CellChannelState& state);

/// Desired-signal power |sum_i sqrt(l_i g_i w_i) e^{j(theta_i + phi_i)}|^2
/// normalised by the per-user power. Zero for an empty cell.
double signal_power(const CellChannelState& state, const EncoderAssignment& assignment);

}  // namespace udn
