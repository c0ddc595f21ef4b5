#pragma once

// Memoryless binary channels and the end-to-end statistics of the symbol
// count discrepancy ΔS over a whole frame: bitstream length, number of bit
// errors, and the multi-error gain polynomial G̃(y).

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vlcsync/codes.hpp"
#include "vlcsync/laurent.hpp"
#include "vlcsync/montecarlo.hpp"

namespace vlcsync {

/// p = 0.5·erfc(sqrt(10^(dB/10))), the hard-decision crossover of BPSK.
double crossover_from_ebn0(double ebn0_db);
/// Per-dimension noise variance for unit-energy BPSK, 1 / (2·10^(dB/10)).
double awgn_noise_variance(double ebn0_db);

class ChannelSpec {
 public:
  enum class Kind { Bsc, Awgn };

  /// Throws InvalidArgument unless 0 <= p <= 0.5.
  static ChannelSpec bsc(double p);
  /// Throws InvalidArgument for NaN or -inf; +inf is the noiseless limit.
  static ChannelSpec awgn(double ebn0_db);

  Kind kind() const noexcept { return kind_; }
  bool is_awgn() const noexcept { return kind_ == Kind::Awgn; }
  /// Bit flip probability (for AWGN, after hard thresholding).
  double crossover() const noexcept { return p_; }
  /// AWGN only; throws InvalidArgument on a BSC.
  double ebn0_db() const;
  double noise_sigma() const;
  std::string describe() const;

 private:
  ChannelSpec(Kind kind, double p, double ebn0_db) : kind_(kind), p_(p), ebn0_db_(ebn0_db) {}

  Kind kind_;
  double p_;
  double ebn0_db_;
};

/// Length distribution of a single codeword: exponent = length in bits.
LaurentPoly codeword_length_pmf(const VlcCode& code, const SourceModel& source);
/// Distribution of L(X) for L_S i.i.d. symbols. Throws InvalidArgument if L_S == 0.
LaurentPoly bitstream_length_pmf(const VlcCode& code, const SourceModel& source, std::size_t L_S);

inline constexpr double kErrorTailTolerance = 1e-12;

/// Distribution of the number of bit errors in a frame whose length follows
/// `length_pmf`, each bit flipped with probability p. Terms are added until the
/// remaining mass is below tail_tol.
LaurentPoly error_count_pmf(const LaurentPoly& length_pmf, double p,
                            double tail_tol = kErrorTailTolerance);

/// G̃ = sum_e P(E=e)·G^e. Products are confined to [-window, window] when
/// window > 0. Throws InvalidArgument unless mass(G) is one within 1e-9.
LaurentPoly multi_error_gain(const LaurentPoly& gain, const LaurentPoly& error_pmf, int window = 0);

struct DeltaSAnalysis {
  LaurentPoly g_tilde;  ///< emitted - decoded exponents, like G
  double p_sync = 0.0;
  double h_delta_s = 0.0;
  int d_eta = 0;
  double eta = 0.0;
  LaurentPoly length_pmf;
  LaurentPoly error_pmf;

  /// P(ΔS = i) with ΔS = decoded - emitted.
  double prob_delta_s(int i) const { return g_tilde.coeff(-i); }
};

struct CodeCriteria {
  DeltaSAnalysis delta_s;
  LaurentPoly gain;
  double mepl = 0.0;
  double vepl = 0.0;
  double mdl = 0.0;
  double excess_rate = 0.0;
  std::size_t L_S = 0;
  std::size_t L_X_max = 0;  ///< L_S · l_M

  /// Square root of the error-span variance.
  double epl_stddev() const;
};

/// Full analytic pipeline. Throws InvalidArgument unless 0 < eta < 1/e.
CodeCriteria criteria(const VlcCode& code, const SourceModel& source, std::size_t L_S,
                      const ChannelSpec& channel, double eta);

/// H(ΔS mod T). Throws InvalidArgument for T < 1.
double constraint_entropy_mod(const LaurentPoly& g_tilde, int T);

struct EntropyBounds {
  int d_eta = 0;
  int modulus = 0;  ///< 2·d_eta + 1
  double h = 0.0;
  double h_mod = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// H(ΔS) + (L_X_max - 2d - 1)·eta·log2(eta) <= H(ΔS mod 2d+1) <= H(ΔS).
EntropyBounds entropy_bounds(const LaurentPoly& g_tilde, double eta, std::size_t L_X_max);

/// Channel output: thresholded bits on a BSC, real samples on AWGN.
using Received = std::variant<Bits, std::vector<double>>;

Received transmit(std::span<const Bit> bits, const ChannelSpec& channel, Rng& rng);
/// Thresholds samples at zero (negative means 1); bits pass through.
Bits hard_decisions(const Received& received);

/// Per-bit log-likelihoods {log p(y|0), log p(y|1)} up to a common per-bit
/// constant. Throws InvalidArgument when soft samples meet a BSC.
std::vector<std::array<double, 2>> bit_log_likelihoods(const Received& received,
                                                       const ChannelSpec& channel);

std::size_t received_length(const Received& received);

}  // namespace vlcsync
