#include "vlcsync/combined.hpp"

#include <numeric>
#include <vector>

#include "vlcsync/errors.hpp"
#include "vlcsync/montecarlo.hpp"

namespace vlcsync {

CombinedConfig CombinedConfig::make(std::size_t T1, std::size_t T2) {
  if (T1 == 0 || T2 == 0) throw Error(ErrorCode::InvalidArgument, "T1 and T2 must be >= 1");
  if (std::gcd(T1, T2) != 1) {
    throw Error(ErrorCode::NotCoprime, std::to_string(T1) + " and " + std::to_string(T2) + " are not coprime");
  }
  return CombinedConfig{T1, T2};
}

CombinedResult combined_decode(const TrellisDecoder& decoder, const CombinedConfig& config, std::size_t L_S,
                               std::span<const std::array<double, 2>> llh) {
  CombinedResult out;
  DecodeResult first = decoder.decode(TrellisConfig::aggregated(config.T1, L_S), llh);
  DecodeResult second = decoder.decode(TrellisConfig::aggregated(config.T2, L_S), llh);
  out.ops_total = first.branch_ops + second.branch_ops;
  out.agreed = first.symbols == second.symbols;
  if (out.agreed) {
    out.result = std::move(first);
  } else {
    out.result = decoder.decode(TrellisConfig::aggregated(config.T3(), L_S), llh);
    out.ops_total += out.result.branch_ops;
  }
  return out;
}

CombinedResult combined_decode(const VlcCode& code, const SourceModel& source, const CombinedConfig& config,
                               std::size_t L_S, const Received& received, const ChannelSpec& channel) {
  const BitLogLikelihoods llh = bit_log_likelihoods(received, channel);
  return combined_decode(TrellisDecoder(code, source), config, L_S, llh);
}

double rho_star(std::size_t T1, std::size_t T2) {
  const double t1 = static_cast<double>(T1);
  const double t2 = static_cast<double>(T2);
  return 1.0 - (t1 + t2) / (t1 * t2);
}

double cost_projection(std::size_t T1, std::size_t T2, double rho, double d_bal) {
  const double t1 = static_cast<double>(T1);
  const double t2 = static_cast<double>(T2);
  return (t1 + t2 + rho * t1 * t2) * d_bal;
}

ParameterChoice choose_parameters(std::size_t T_c) {
  if (T_c < 2) throw Error(ErrorCode::InvalidArgument, "T_c must be >= 2");
  ParameterChoice best;
  bool found = false;
  for (std::size_t a = 2; a * a < T_c; ++a) {
    if (T_c % a != 0 || std::gcd(a, T_c / a) != 1) continue;
    best.T1 = a;
    best.T2 = T_c / a;
    found = true;
  }
  if (!found) {
    best.T1 = 1;
    best.T2 = T_c;
    best.no_benefit = true;
    best.note = "no coprime factorization with both factors > 1";
  } else {
    best.note = "assumes disagreement grows with T2 - T1; codes whose symbol-count parity is fixed by "
                "the bit count (all codeword lengths odd) make even parameters useless";
  }
  return best;
}

RhoEstimate rho_estimate(const VlcCode& code, const SourceModel& source, const CombinedConfig& config,
                         const ChannelSpec& channel, std::size_t L_S, std::size_t trials, std::uint64_t seed,
                         unsigned threads) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const TrellisDecoder decoder(code, source);
  struct Frame {
    bool disagree = false;
    std::uint64_t ops_combined = 0;
    std::uint64_t ops_bal = 0;
  };
  std::vector<Frame> frames(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    Rng rng = trial_rng(seed, i);
    const Bits bits = encode(code, sample_symbols(source, L_S, rng));
    const BitLogLikelihoods llh = bit_log_likelihoods(transmit(bits, channel, rng), channel);
    const CombinedResult r = combined_decode(decoder, config, L_S, llh);
    frames[i].disagree = !r.agreed;
    frames[i].ops_combined = r.ops_total;
    frames[i].ops_bal = decoder.decode(TrellisConfig::aggregated(1, L_S), llh).branch_ops;
  });
  RhoEstimate out;
  out.trials = trials;
  double ops_c = 0.0;
  double ops_b = 0.0;
  for (const Frame& f : frames) {
    out.disagreements += f.disagree ? 1 : 0;
    ops_c += static_cast<double>(f.ops_combined);
    ops_b += static_cast<double>(f.ops_bal);
  }
  out.rho = static_cast<double>(out.disagreements) / static_cast<double>(trials);
  out.half_width = binomial_half_width(out.rho, trials);
  out.mean_ops_combined = ops_c / static_cast<double>(trials);
  out.mean_ops_bal = ops_b / static_cast<double>(trials);
  return out;
}

}  // namespace vlcsync
