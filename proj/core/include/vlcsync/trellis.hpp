#pragma once

// Length-constrained MAP sequence decoding of a VLC bitstream. The trellis
// state at bit k is (code-tree node, symbol count), where the count is kept
// modulo T (aggregated model) or exactly (bit/symbol model). T = 1 is the
// plain bit-level trellis.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vlcsync/channel.hpp"
#include "vlcsync/codes.hpp"

namespace vlcsync {

struct TrellisConfig {
  enum class Mode { Aggregated, Exact };

  Mode mode = Mode::Aggregated;
  std::size_t T = 1;
  std::size_t L_S = 0;

  /// Throws InvalidArgument for T == 0.
  static TrellisConfig aggregated(std::size_t T, std::size_t L_S);
  static TrellisConfig exact(std::size_t L_S);

  bool is_exact() const noexcept { return mode == Mode::Exact; }
  /// Number of count values per node: T, or L_S + 1 in exact mode.
  std::size_t count_slots() const noexcept { return is_exact() ? L_S + 1 : T; }
  /// Required final count: L_S mod T, or L_S in exact mode.
  std::size_t terminal_count() const noexcept { return is_exact() ? L_S : L_S % T; }
  /// "T=5" or "bit/symbol".
  std::string label() const;
};

struct DecodeResult {
  SymbolSeq symbols;
  Bits path_bits;
  double log_metric = 0.0;
  std::uint64_t branch_ops = 0;
  /// False when no path ends in (root, terminal count); the result then holds
  /// the best path over all final states.
  bool feasible = true;
};

using BitLogLikelihoods = std::vector<std::array<double, 2>>;

class TrellisDecoder {
 public:
  TrellisDecoder(const VlcCode& code, const SourceModel& source);

  const CodeTree& tree() const noexcept { return tree_; }
  /// log P(next bit = b | node); -inf for a missing branch.
  double log_prior(NodeId node, Bit bit) const { return log_prior_.at(node)[bit & 1U]; }

  /// Maximizes sum_k [llh[k][x_k] + log_prior(n_k, x_k)]. Exact metric ties
  /// go to the lexicographically smaller bit sequence.
  DecodeResult decode(const TrellisConfig& config, std::span<const std::array<double, 2>> llh) const;
  DecodeResult decode(const TrellisConfig& config, const Received& received, const ChannelSpec& channel) const;

  /// reachable[k][node * count_slots + count] for k = 0..L_X.
  std::vector<std::vector<std::uint8_t>> reachable_states(const TrellisConfig& config, std::size_t L_X) const;

 private:
  CodeTree tree_;
  std::vector<std::array<double, 2>> log_prior_;
};

DecodeResult viterbi_decode(const VlcCode& code, const SourceModel& source, const TrellisConfig& config,
                            const Received& received, const ChannelSpec& channel);
DecodeResult exact_bit_symbol_decode(const VlcCode& code, const SourceModel& source, std::size_t L_S,
                                     const Received& received, const ChannelSpec& channel);

/// Mean branch_ops at parameter T divided by mean branch_ops at T = 1, over
/// `trials` random frames of L_S symbols. Throws InvalidArgument if trials == 0.
double complexity_ratio(const VlcCode& code, const SourceModel& source, std::size_t L_S, std::size_t T,
                        std::size_t trials, std::uint64_t seed = 1);

}  // namespace vlcsync
