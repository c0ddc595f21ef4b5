#pragma once

// Combined trellis decoding: decode with two coprime parameters T1 and T2 and
// fall back to T1·T2 only when the two estimates disagree. The output is the
// same as decoding directly at T1·T2.

#include <cstddef>
#include <cstdint>
#include <string>

#include "vlcsync/channel.hpp"
#include "vlcsync/trellis.hpp"

namespace vlcsync {

struct CombinedConfig {
  std::size_t T1 = 1;
  std::size_t T2 = 1;

  /// Throws NotCoprime unless gcd(T1, T2) == 1, InvalidArgument for zero.
  static CombinedConfig make(std::size_t T1, std::size_t T2);
  std::size_t T3() const noexcept { return T1 * T2; }
};

struct CombinedResult {
  DecodeResult result;
  bool agreed = false;
  std::uint64_t ops_total = 0;
};

CombinedResult combined_decode(const TrellisDecoder& decoder, const CombinedConfig& config, std::size_t L_S,
                               std::span<const std::array<double, 2>> llh);
CombinedResult combined_decode(const VlcCode& code, const SourceModel& source, const CombinedConfig& config,
                               std::size_t L_S, const Received& received, const ChannelSpec& channel);

/// Break-even disagreement rate 1 - (T1 + T2) / (T1·T2).
double rho_star(std::size_t T1, std::size_t T2);
/// (T1 + T2 + rho·T1·T2)·d_bal.
double cost_projection(std::size_t T1, std::size_t T2, double rho, double d_bal);

struct ParameterChoice {
  std::size_t T1 = 1;
  std::size_t T2 = 1;
  /// No coprime factorization into two factors > 1 exists.
  bool no_benefit = false;
  std::string note;
};

/// Coprime pair with T1·T2 = T_c and the smallest |T2 - T1|, T1 < T2.
/// Throws InvalidArgument for T_c < 2.
ParameterChoice choose_parameters(std::size_t T_c);

struct RhoEstimate {
  double rho = 0.0;
  double half_width = 0.0;  ///< 95 % binomial half-width
  std::size_t trials = 0;
  std::size_t disagreements = 0;
  double mean_ops_combined = 0.0;
  double mean_ops_bal = 0.0;  ///< T = 1 decode of the same frames
};

/// Fraction of random frames on which the T1 and T2 decoders disagree.
/// Throws InvalidArgument if trials == 0.
RhoEstimate rho_estimate(const VlcCode& code, const SourceModel& source, const CombinedConfig& config,
                         const ChannelSpec& channel, std::size_t L_S, std::size_t trials, std::uint64_t seed,
                         unsigned threads = 1);

}  // namespace vlcsync
