#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "vlcsync/channel.hpp"
#include "vlcsync/errors.hpp"
#include "vlcsync/sync_analysis.hpp"

using namespace vlcsync;

namespace {

const CodeEntry& code(const char* id) { return CodeLibrary::bundled().at(id); }

double binom_pmf(int k, int e, double p) {
  return std::exp(std::lgamma(k + 1.0) - std::lgamma(e + 1.0) - std::lgamma(k - e + 1.0)) * std::pow(p, e) *
         std::pow(1 - p, k - e);
}

// Positions of flipped bits in a stream of `len` bits, drawn by geometric gaps.
template <typename F>
void for_each_flip(std::size_t len, double p, std::mt19937_64& rng, F&& f) {
  std::geometric_distribution<std::size_t> gap(p);
  for (std::size_t pos = gap(rng); pos < len; pos += 1 + gap(rng)) f(pos);
}

}  // namespace

TEST(Crossover, ClosedForm) {
  EXPECT_NEAR(crossover_from_ebn0(6.0), 2.388290780932807e-3, 1e-15);
  EXPECT_NEAR(crossover_from_ebn0(0.0), 0.5 * std::erfc(1.0), 1e-15);
  EXPECT_NEAR(crossover_from_ebn0(0.0), 0.0786, 1e-4);
  EXPECT_DOUBLE_EQ(crossover_from_ebn0(-std::numeric_limits<double>::infinity()), 0.5);
  EXPECT_DOUBLE_EQ(crossover_from_ebn0(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_NEAR(awgn_noise_variance(0.0), 0.5, 1e-15);
}

TEST(ChannelSpec, Validation) {
  EXPECT_THROW(ChannelSpec::bsc(-0.1), Error);
  EXPECT_THROW(ChannelSpec::bsc(0.6), Error);
  EXPECT_THROW(ChannelSpec::awgn(std::nan("")), Error);
  EXPECT_THROW(ChannelSpec::bsc(0.1).ebn0_db(), Error);
  const ChannelSpec a = ChannelSpec::awgn(6.0);
  EXPECT_TRUE(a.is_awgn());
  EXPECT_DOUBLE_EQ(a.crossover(), crossover_from_ebn0(6.0));
  EXPECT_EQ(a.describe(), "AWGN 6 dB");
  EXPECT_EQ(ChannelSpec::bsc(0.25).describe(), "BSC p=0.25");
}

TEST(LengthPmf, SmallCases) {
  const auto& c5 = code("C5");
  const LaurentPoly one = bitstream_length_pmf(c5.code, c5.source, 1);
  EXPECT_NEAR(one.coeff(2), 0.8, 1e-15);
  EXPECT_NEAR(one.coeff(3), 0.2, 1e-15);
  const LaurentPoly two = bitstream_length_pmf(c5.code, c5.source, 2);
  EXPECT_NEAR(two.coeff(4), 0.64, 1e-15);
  EXPECT_NEAR(two.coeff(5), 0.32, 1e-15);
  EXPECT_NEAR(two.coeff(6), 0.04, 1e-15);
  EXPECT_THROW(bitstream_length_pmf(c5.code, c5.source, 0), Error);
}

TEST(LengthPmf, MeanSupportAndRepeatedProduct) {
  for (const auto& e : CodeLibrary::bundled().entries()) {
    const std::size_t L_S = 37;
    const LaurentPoly pmf = bitstream_length_pmf(e.code, e.source, L_S);
    EXPECT_NEAR(mass(pmf), 1.0, 1e-12) << e.id;
    EXPECT_NEAR(mean(pmf), L_S * mean_description_length(e.code, e.source), 1e-9) << e.id;
    EXPECT_GE(pmf.min_exponent(), static_cast<int>(L_S * e.code.min_length()));
    EXPECT_LE(pmf.max_exponent(), static_cast<int>(L_S * e.code.max_length()));
  }
  const auto& c7 = code("C7");
  LaurentPoly naive = LaurentPoly::unit();
  for (int i = 0; i < 13; ++i) naive = naive * codeword_length_pmf(c7.code, c7.source);
  const LaurentPoly fast = bitstream_length_pmf(c7.code, c7.source, 13);
  for (int k = 13; k <= 13 * 4; ++k) EXPECT_NEAR(fast.coeff(k), naive.coeff(k), 1e-15);
}

TEST(ErrorPmf, DegenerateCases) {
  EXPECT_EQ(error_count_pmf(LaurentPoly{{10, 1.0}}, 0.0), LaurentPoly::unit());
  const LaurentPoly b = error_count_pmf(LaurentPoly{{50, 1.0}}, 0.1);
  double sum = 0.0;
  for (int e = 0; e <= 50; ++e) {
    // Terms past the tail tolerance are dropped.
    EXPECT_NEAR(b.coeff(e), binom_pmf(50, e, 0.1), kErrorTailTolerance) << e;
    if (b.coeff(e) != 0.0) EXPECT_NEAR(b.coeff(e), binom_pmf(50, e, 0.1), 1e-14) << e;
    sum += b.coeff(e);
  }
  EXPECT_GT(sum, 1.0 - 1e-12);
  // Large frames do not overflow.
  const LaurentPoly big = error_count_pmf(LaurentPoly{{10000, 1.0}}, 0.5);
  EXPECT_NEAR(mass(big), 1.0, 1e-11);
  EXPECT_NEAR(mean(big), 5000.0, 1e-6);
  EXPECT_THROW(error_count_pmf(LaurentPoly{{5, 1.0}}, 0.7), Error);
}

TEST(ErrorPmf, MatchesBitFlipSimulation) {
  const auto& c5 = code("C5");
  const double p = crossover_from_ebn0(6.0);
  const LaurentPoly pmf = error_count_pmf(bitstream_length_pmf(c5.code, c5.source, 100), p);
  std::mt19937_64 rng(5);
  std::discrete_distribution<int> pick(c5.source.probs().begin(), c5.source.probs().end());
  const int n = 1000000;
  std::map<int, int> hist;
  for (int t = 0; t < n; ++t) {
    std::size_t len = 0;
    for (int i = 0; i < 100; ++i) len += c5.code.length(static_cast<Symbol>(pick(rng)));
    int flips = 0;
    for_each_flip(len, p, rng, [&](std::size_t) { ++flips; });
    ++hist[flips];
  }
  for (int e = 0; e <= 4; ++e) {
    const double q = pmf.coeff(e);
    EXPECT_NEAR(hist[e] / static_cast<double>(n), q, 3 * std::sqrt(q * (1 - q) / n) + 1e-6) << "E=" << e;
  }
}

TEST(MultiErrorGain, TrivialPmfs) {
  const auto& c5 = code("C5");
  const LaurentPoly g = gain_polynomial(build_esd(c5.code, c5.source));
  EXPECT_EQ(multi_error_gain(g, LaurentPoly::unit()), LaurentPoly::unit());
  const LaurentPoly once = multi_error_gain(g, LaurentPoly::monomial(1, 1.0));
  for (int e = -3; e <= 3; ++e) EXPECT_NEAR(once.coeff(e), g.coeff(e), 1e-15);
  EXPECT_THROW(multi_error_gain(LaurentPoly{{0, 0.5}}, LaurentPoly::unit()), Error);
}

TEST(MultiErrorGain, C5AtSixDecibels) {
  const auto& c5 = code("C5");
  const CodeCriteria c = criteria(c5.code, c5.source, 100, ChannelSpec::awgn(6.0), 1e-6);
  const std::map<int, double> want{{0, 0.9186664},  {-1, 0.0493389}, {1, 0.0301524}, {-2, 0.0013201},
                                   {2, 0.0004930},  {-3, 0.0000235}, {3, 0.0000053}};
  for (const auto& [i, p] : want) EXPECT_NEAR(c.delta_s.prob_delta_s(i), p, 1e-4) << "dS=" << i;
  EXPECT_EQ(c.delta_s.d_eta, 3);
  EXPECT_NEAR(mass(c.delta_s.g_tilde) + c.delta_s.g_tilde.lost_mass(), 1.0, 1e-9);
  EXPECT_NEAR(c.delta_s.p_sync, c.delta_s.g_tilde.coeff(0), 0.0);
}

// Whole-frame hard decoding over a BSC, compared with the simulated values
// listed alongside the analytic ones.
TEST(MultiErrorGain, FrameSimulationMatchesReferenceSimulation) {
  const auto& c5 = code("C5");
  const CodeTree tree(c5.code);
  const double p = crossover_from_ebn0(6.0);
  std::mt19937_64 rng(99);
  std::discrete_distribution<Symbol> pick(c5.source.probs().begin(), c5.source.probs().end());
  const int n = 1000000;
  std::map<int, int> hist;
  Bits bits;
  for (int t = 0; t < n; ++t) {
    bits.clear();
    for (int i = 0; i < 100; ++i) {
      const Bits& w = c5.code.codeword(pick(rng));
      bits.insert(bits.end(), w.begin(), w.end());
    }
    for_each_flip(bits.size(), p, rng, [&](std::size_t pos) { bits[pos] ^= 1U; });
    ++hist[static_cast<int>(hard_decode(tree, bits).symbols.size()) - 100];
  }
  const std::map<int, double> reference{{-3, 0.0000207}, {-2, 0.0012587}, {-1, 0.0500770}, {0, 0.9185508},
                                        {1, 0.0296306},  {2, 0.0004578},  {3, 0.0000041}};
  for (const auto& [i, q] : reference) {
    EXPECT_NEAR(hist[i] / static_cast<double>(n), q, 3 * std::sqrt(q * (1 - q) / n) + 1e-6) << "dS=" << i;
  }
}

TEST(Criteria, Validation) {
  const auto& c5 = code("C5");
  EXPECT_THROW(criteria(c5.code, c5.source, 100, ChannelSpec::awgn(6), 0.0), Error);
  EXPECT_THROW(criteria(c5.code, c5.source, 100, ChannelSpec::awgn(6), 0.5), Error);
}

TEST(Criteria, C10Row) {
  const auto& c10 = code("C10");
  const CodeCriteria c = criteria(c10.code, c10.source, 100, ChannelSpec::awgn(6.0), 1e-6);
  EXPECT_NEAR(c.delta_s.p_sync, 0.6401, 1e-3);
  EXPECT_NEAR(c.delta_s.h_delta_s, 2.267, 5e-3);
  EXPECT_EQ(c.delta_s.d_eta, 36);
  EXPECT_EQ(c.L_X_max, 100 * c10.code.max_length());
}

TEST(ConstraintEntropy, Basics) {
  const auto& c5 = code("C5");
  const CodeCriteria c = criteria(c5.code, c5.source, 100, ChannelSpec::awgn(6.0), 1e-6);
  EXPECT_DOUBLE_EQ(constraint_entropy_mod(c.delta_s.g_tilde, 1), 0.0);
  EXPECT_THROW(constraint_entropy_mod(c.delta_s.g_tilde, 0), Error);
  for (int T = 1; T <= 40; ++T) EXPECT_LE(constraint_entropy_mod(c.delta_s.g_tilde, T), c.delta_s.h_delta_s + 1e-12);

  const auto& c13 = code("C13");
  const CodeCriteria d = criteria(c13.code, c13.source, 100, ChannelSpec::awgn(6.0), 1e-6);
  EXPECT_NEAR(constraint_entropy_mod(d.delta_s.g_tilde, 2), 0.0, 1e-12);
}

TEST(ConstraintEntropy, C5ModularEntropyBound) {
  const auto& c5 = code("C5");
  const CodeCriteria c = criteria(c5.code, c5.source, 100, ChannelSpec::awgn(6.0), 1e-6);
  const EntropyBounds b = entropy_bounds(c.delta_s.g_tilde, 1e-6, c.L_X_max);
  EXPECT_EQ(b.modulus, 7);
  EXPECT_LE(b.lower, b.h_mod);
  EXPECT_LE(b.h_mod, b.upper);
  EXPECT_LE(b.h - b.h_mod, 0.049);
  EXPECT_LE(b.h - b.h_mod, b.h - b.lower);
  // The printed 0.04900 is the bound term evaluated at eta = 1e-5.
  const double eta = 1e-5;
  EXPECT_NEAR(-(100.0 * 3 - 5) * eta * std::log2(eta), 0.04900, 5e-6);
}

TEST(Transmit, NoiselessAndBsc) {
  const Bits bits{0, 1, 1, 0, 1};
  Rng rng(1);
  EXPECT_EQ(std::get<Bits>(transmit(bits, ChannelSpec::bsc(0.0), rng)), bits);
  const auto y = std::get<std::vector<double>>(
      transmit(bits, ChannelSpec::awgn(std::numeric_limits<double>::infinity()), rng));
  EXPECT_EQ(y, (std::vector<double>{1, -1, -1, 1, -1}));
  EXPECT_EQ(hard_decisions(Received{y}), bits);
  EXPECT_EQ(received_length(Received{y}), 5u);
}

TEST(Transmit, AwgnHardFlipRate) {
  const double p = crossover_from_ebn0(6.0);
  const Bits zeros(10000000, 0);
  Rng rng(17);
  const Bits hard = hard_decisions(transmit(zeros, ChannelSpec::awgn(6.0), rng));
  std::size_t flips = 0;
  for (Bit b : hard) flips += b;
  const double n = static_cast<double>(zeros.size());
  EXPECT_NEAR(flips / n, p, 3 * std::sqrt(p * (1 - p) / n));
}

TEST(LogLikelihoods, BscAndAwgn) {
  const auto l = bit_log_likelihoods(Received{Bits{0, 1}}, ChannelSpec::bsc(0.1));
  EXPECT_DOUBLE_EQ(l[0][0], std::log(0.9));
  EXPECT_DOUBLE_EQ(l[0][1], std::log(0.1));
  EXPECT_DOUBLE_EQ(l[1][1], std::log(0.9));

  const ChannelSpec ch = ChannelSpec::awgn(3.0);
  const double var = awgn_noise_variance(3.0);
  const std::vector<double> y{0.7, -1.3, 0.05};
  const auto a = bit_log_likelihoods(Received{y}, ch);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double ratio = (-(y[i] - 1) * (y[i] - 1) + (y[i] + 1) * (y[i] + 1)) / (2 * var);
    EXPECT_NEAR(a[i][0] - a[i][1], ratio, 1e-12);
  }
  EXPECT_THROW(bit_log_likelihoods(Received{y}, ChannelSpec::bsc(0.1)), Error);
}
