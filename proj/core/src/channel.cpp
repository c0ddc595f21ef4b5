#include "vlcsync/channel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "vlcsync/errors.hpp"
#include "vlcsync/sync_analysis.hpp"

namespace vlcsync {

double crossover_from_ebn0(double ebn0_db) {
  if (std::isnan(ebn0_db)) throw Error(ErrorCode::InvalidArgument, "Eb/N0 is NaN");
  return 0.5 * std::erfc(std::sqrt(std::pow(10.0, ebn0_db / 10.0)));
}

double awgn_noise_variance(double ebn0_db) {
  return 1.0 / (2.0 * std::pow(10.0, ebn0_db / 10.0));
}

ChannelSpec ChannelSpec::bsc(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw Error(ErrorCode::InvalidArgument, "crossover must lie in [0, 0.5]");
  return ChannelSpec(Kind::Bsc, p, std::numeric_limits<double>::quiet_NaN());
}

ChannelSpec ChannelSpec::awgn(double ebn0_db) {
  if (std::isnan(ebn0_db) || ebn0_db == -std::numeric_limits<double>::infinity()) {
    throw Error(ErrorCode::InvalidArgument, "Eb/N0 must be finite or +inf");
  }
  return ChannelSpec(Kind::Awgn, crossover_from_ebn0(ebn0_db), ebn0_db);
}

double ChannelSpec::ebn0_db() const {
  if (!is_awgn()) throw Error(ErrorCode::InvalidArgument, "BSC has no Eb/N0");
  return ebn0_db_;
}

double ChannelSpec::noise_sigma() const { return std::sqrt(awgn_noise_variance(ebn0_db())); }

std::string ChannelSpec::describe() const {
  char buf[64];
  if (is_awgn()) {
    std::snprintf(buf, sizeof buf, "AWGN %.6g dB", ebn0_db_);
  } else {
    std::snprintf(buf, sizeof buf, "BSC p=%.6g", p_);
  }
  return buf;
}

LaurentPoly codeword_length_pmf(const VlcCode& code, const SourceModel& source) {
  LaurentPoly out;
  for (Symbol s = 0; s < code.size(); ++s) out.add_term(static_cast<int>(code.length(s)), source.prob(s));
  return out;
}

LaurentPoly bitstream_length_pmf(const VlcCode& code, const SourceModel& source, std::size_t L_S) {
  if (L_S == 0) throw Error(ErrorCode::InvalidArgument, "L_S must be >= 1");
  LaurentPoly base = codeword_length_pmf(code, source);
  LaurentPoly acc = LaurentPoly::unit();
  for (std::size_t n = L_S;;) {
    if (n & 1U) acc = mul(acc, base);
    n >>= 1U;
    if (n == 0) break;
    base = mul(base, base);
  }
  return acc;
}

LaurentPoly error_count_pmf(const LaurentPoly& length_pmf, double p, double tail_tol) {
  if (!(p >= 0.0 && p <= 0.5)) throw Error(ErrorCode::InvalidArgument, "crossover must lie in [0, 0.5]");
  if (length_pmf.min_exponent() < 0) throw Error(ErrorCode::InvalidArgument, "negative lengths");
  const double total = mass(length_pmf);
  if (p == 0.0) return LaurentPoly::monomial(0, total);

  const auto lengths = length_pmf.terms();
  const int k_max = length_pmf.max_exponent();
  std::vector<double> lfact(static_cast<std::size_t>(k_max) + 2);
  for (std::size_t i = 0; i < lfact.size(); ++i) lfact[i] = std::lgamma(static_cast<double>(i) + 1.0);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);

  LaurentPoly out;
  double cumulative = 0.0;
  for (int e = 0; e <= k_max; ++e) {
    double pe = 0.0;
    for (const auto& [k, pk] : lengths) {
      if (k < e) continue;
      const double log_term = lfact[k] - lfact[e] - lfact[k - e] + e * lp + (k - e) * lq;
      pe += pk * std::exp(log_term);
    }
    out.add_term(e, pe);
    cumulative += pe;
    if (total - cumulative < tail_tol) break;
  }
  return out;
}

LaurentPoly multi_error_gain(const LaurentPoly& gain, const LaurentPoly& error_pmf, int window) {
  if (std::abs(mass(gain) - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "gain polynomial mass is not one");
  LaurentPoly power_e = LaurentPoly::unit();
  LaurentPoly g = gain;
  LaurentPoly out;
  if (window > 0) {
    power_e.set_window(window);
    g.set_window(window);
    out.set_window(window);
  }
  const int e_max = error_pmf.max_exponent();
  for (int e = 0; e <= e_max; ++e) {
    const double pe = error_pmf.coeff(e);
    if (pe != 0.0) out += scale(power_e, pe);
    if (e < e_max) power_e = mul(power_e, g);
  }
  return out;
}

double CodeCriteria::epl_stddev() const { return std::sqrt(vepl); }

CodeCriteria criteria(const VlcCode& code, const SourceModel& source, std::size_t L_S,
                      const ChannelSpec& channel, double eta) {
  if (!(eta > 0.0 && eta < std::exp(-1.0))) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1/e)");
  CodeCriteria out;
  const GainSeries series = gain_series(build_esd(code, source));
  out.gain = series.gain;
  out.mepl = mean(series.error_span);
  out.vepl = variance(series.error_span);
  out.mdl = mean_description_length(code, source);
  out.excess_rate = excess_rate(code, source);
  out.L_S = L_S;
  out.L_X_max = L_S * code.max_length();

  DeltaSAnalysis& ds = out.delta_s;
  ds.eta = eta;
  ds.length_pmf = bitstream_length_pmf(code, source, L_S);
  ds.error_pmf = error_count_pmf(ds.length_pmf, channel.crossover());
  ds.g_tilde = multi_error_gain(out.gain, ds.error_pmf, static_cast<int>(out.L_X_max));
  ds.p_sync = ds.g_tilde.coeff(0);
  ds.h_delta_s = entropy_bits(ds.g_tilde);
  ds.d_eta = pseudo_degree(ds.g_tilde, eta);
  return out;
}

double constraint_entropy_mod(const LaurentPoly& g_tilde, int T) {
  if (T < 1) throw Error(ErrorCode::InvalidArgument, "T must be >= 1");
  return entropy_bits(fold_mod(g_tilde, T));
}

EntropyBounds entropy_bounds(const LaurentPoly& g_tilde, double eta, std::size_t L_X_max) {
  EntropyBounds b;
  b.d_eta = pseudo_degree(g_tilde, eta);
  b.modulus = 2 * b.d_eta + 1;
  b.h = entropy_bits(g_tilde);
  b.h_mod = constraint_entropy_mod(g_tilde, b.modulus);
  b.upper = b.h;
  b.lower = b.h + (static_cast<double>(L_X_max) - b.modulus) * eta * std::log2(eta);
  return b;
}

Received transmit(std::span<const Bit> bits, const ChannelSpec& channel, Rng& rng) {
  if (!channel.is_awgn()) {
    Bits out(bits.begin(), bits.end());
    if (channel.crossover() > 0.0) {
      std::bernoulli_distribution flip(channel.crossover());
      for (auto& b : out) b ^= static_cast<Bit>(flip(rng));
    }
    return out;
  }
  const double sigma = channel.noise_sigma();
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const double n = noise(rng);
    out[i] = (bits[i] ? -1.0 : 1.0) + (sigma > 0.0 ? sigma * n : 0.0);
  }
  return out;
}

Bits hard_decisions(const Received& received) {
  if (const auto* bits = std::get_if<Bits>(&received)) return *bits;
  const auto& y = std::get<std::vector<double>>(received);
  Bits out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] < 0.0 ? 1 : 0;
  return out;
}

std::size_t received_length(const Received& received) {
  return std::visit([](const auto& v) { return v.size(); }, received);
}

std::vector<std::array<double, 2>> bit_log_likelihoods(const Received& received, const ChannelSpec& channel) {
  std::vector<std::array<double, 2>> out(received_length(received));
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (const auto* bits = std::get_if<Bits>(&received)) {
    const double p = channel.crossover();
    const double match = std::log1p(-p);
    const double miss = p > 0.0 ? std::log(p) : kNegInf;
    for (std::size_t i = 0; i < bits->size(); ++i) {
      const Bit b = (*bits)[i] & 1U;
      out[i][b] = match;
      out[i][b ^ 1U] = miss;
    }
    return out;
  }
  if (!channel.is_awgn()) throw Error(ErrorCode::InvalidArgument, "soft samples need an AWGN channel");
  const auto& y = std::get<std::vector<double>>(received);
  const double var = awgn_noise_variance(channel.ebn0_db());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (var > 0.0) {
      out[i][0] = y[i] / var;
      out[i][1] = -y[i] / var;
    } else {
      out[i][0] = y[i] >= 0.0 ? 0.0 : kNegInf;
      out[i][1] = y[i] < 0.0 ? 0.0 : kNegInf;
    }
  }
  return out;
}

}  // namespace vlcsync
