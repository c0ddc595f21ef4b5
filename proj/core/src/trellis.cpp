#include "vlcsync/trellis.hpp"

#include <cmath>
#include <limits>

#include "vlcsync/errors.hpp"
#include "vlcsync/montecarlo.hpp"

namespace vlcsync {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Back pointers of one decode: for the state `slot` at bit k + 1, the slot at
// bit k it came from and the bit on the branch.
struct Survivors {
  std::size_t slots = 0;
  std::vector<std::int32_t> prev;
  std::vector<Bit> bit;

  std::size_t at(std::size_t k, std::size_t slot) const { return k * slots + slot; }

  // Orders the survivor paths ending in slots x and y at bit t by their bit
  // labels: -1, 0 or 1.
  int compare(std::size_t t, std::size_t x, std::size_t y) const {
    int order = 0;
    while (x != y) {
      --t;
      const Bit bx = bit[at(t, x)];
      const Bit by = bit[at(t, y)];
      if (bx != by) order = bx < by ? -1 : 1;
      x = static_cast<std::size_t>(prev[at(t, x)]);
      y = static_cast<std::size_t>(prev[at(t, y)]);
    }
    return order;
  }
};

}  // namespace

TrellisConfig TrellisConfig::aggregated(std::size_t T, std::size_t L_S) {
  if (T == 0) throw Error(ErrorCode::InvalidArgument, "T must be >= 1");
  return TrellisConfig{Mode::Aggregated, T, L_S};
}

TrellisConfig TrellisConfig::exact(std::size_t L_S) { return TrellisConfig{Mode::Exact, L_S + 1, L_S}; }

std::string TrellisConfig::label() const { return is_exact() ? "bit/symbol" : "T=" + std::to_string(T); }

TrellisDecoder::TrellisDecoder(const VlcCode& code, const SourceModel& source) : tree_(code) {
  if (source.size() != code.size()) throw Error(ErrorCode::InvalidArgument, "source and code sizes differ");
  const std::vector<double> masses = tree_.node_masses(source);
  log_prior_.resize(tree_.internal_count());
  for (NodeId n = 0; n < tree_.internal_count(); ++n) {
    for (Bit b = 0; b < 2; ++b) {
      log_prior_[n][b] = tree_.child(n, b).is_none() ? kNegInf
                                                     : std::log(branch_prior(tree_, masses, source, n, b));
    }
  }
}

namespace {

// Target slot of the branch (node, count) --bit-->, or -1 when it does not exist.
std::int64_t next_slot(const CodeTree& tree, const TrellisConfig& cfg, std::size_t C, NodeId node,
                       std::size_t count, Bit bit) {
  const CodeTree::Child& ch = tree.child(node, bit);
  if (ch.is_none()) return -1;
  if (ch.is_internal()) return static_cast<std::int64_t>(ch.index * C + count);
  std::size_t next = count + 1;
  if (cfg.is_exact()) {
    if (next > cfg.L_S) return -1;
  } else {
    next %= cfg.T;
  }
  return static_cast<std::int64_t>(next);  // root is node 0
}

}  // namespace

DecodeResult TrellisDecoder::decode(const TrellisConfig& config, std::span<const std::array<double, 2>> llh) const {
  const std::size_t L_X = llh.size();
  const std::size_t C = config.count_slots();
  const std::size_t S = tree_.internal_count() * C;

  Survivors surv;
  surv.slots = S;
  surv.prev.assign(L_X * S, -1);
  surv.bit.assign(L_X * S, 0);

  std::vector<double> cur(S, kNegInf), nxt(S);
  std::vector<std::uint8_t> reach(S, 0), nreach(S);
  cur[0] = 0.0;
  reach[0] = 1;

  DecodeResult out;
  for (std::size_t k = 0; k < L_X; ++k) {
    std::fill(nxt.begin(), nxt.end(), kNegInf);
    std::fill(nreach.begin(), nreach.end(), 0);
    for (std::size_t s = 0; s < S; ++s) {
      if (!reach[s]) continue;
      const auto node = static_cast<NodeId>(s / C);
      const std::size_t count = s % C;
      for (Bit b = 0; b < 2; ++b) {
        const std::int64_t t64 = next_slot(tree_, config, C, node, count, b);
        if (t64 < 0) continue;
        ++out.branch_ops;
        const auto t = static_cast<std::size_t>(t64);
        const double m = cur[s] + llh[k][b] + log_prior_[node][b];
        const std::size_t idx = surv.at(k, t);
        bool take = !nreach[t] || m > nxt[t];
        if (!take && m == nxt[t]) {
          const auto old = static_cast<std::size_t>(surv.prev[idx]);
          const int order = s == old ? 0 : surv.compare(k, s, old);
          take = order < 0 || (order == 0 && b < surv.bit[idx]);
        }
        if (take) {
          nxt[t] = m;
          nreach[t] = 1;
          surv.prev[idx] = static_cast<std::int32_t>(s);
          surv.bit[idx] = b;
        }
      }
    }
    cur.swap(nxt);
    reach.swap(nreach);
  }

  std::size_t best = config.terminal_count();
  out.feasible = reach[best] != 0;
  if (!out.feasible) {
    bool found = false;
    for (std::size_t s = 0; s < S; ++s) {
      if (!reach[s]) continue;
      if (!found || cur[s] > cur[best] || (cur[s] == cur[best] && surv.compare(L_X, s, best) < 0)) {
        best = s;
        found = true;
      }
    }
    if (!found) {
      out.log_metric = kNegInf;
      return out;
    }
  }
  out.log_metric = cur[best];
  out.path_bits.resize(L_X);
  for (std::size_t t = L_X; t > 0; --t) {
    const std::size_t idx = surv.at(t - 1, best);
    out.path_bits[t - 1] = surv.bit[idx];
    best = static_cast<std::size_t>(surv.prev[idx]);
  }
  out.symbols = hard_decode(tree_, out.path_bits).symbols;
  return out;
}

DecodeResult TrellisDecoder::decode(const TrellisConfig& config, const Received& received,
                                    const ChannelSpec& channel) const {
  const BitLogLikelihoods llh = bit_log_likelihoods(received, channel);
  return decode(config, llh);
}

std::vector<std::vector<std::uint8_t>> TrellisDecoder::reachable_states(const TrellisConfig& config,
                                                                         std::size_t L_X) const {
  const std::size_t C = config.count_slots();
  const std::size_t S = tree_.internal_count() * C;
  std::vector<std::vector<std::uint8_t>> out(L_X + 1, std::vector<std::uint8_t>(S, 0));
  out[0][0] = 1;
  for (std::size_t k = 0; k < L_X; ++k) {
    for (std::size_t s = 0; s < S; ++s) {
      if (!out[k][s]) continue;
      for (Bit b = 0; b < 2; ++b) {
        const std::int64_t t = next_slot(tree_, config, C, static_cast<NodeId>(s / C), s % C, b);
        if (t >= 0) out[k + 1][static_cast<std::size_t>(t)] = 1;
      }
    }
  }
  return out;
}

DecodeResult viterbi_decode(const VlcCode& code, const SourceModel& source, const TrellisConfig& config,
                            const Received& received, const ChannelSpec& channel) {
  return TrellisDecoder(code, source).decode(config, received, channel);
}

DecodeResult exact_bit_symbol_decode(const VlcCode& code, const SourceModel& source, std::size_t L_S,
                                     const Received& received, const ChannelSpec& channel) {
  return viterbi_decode(code, source, TrellisConfig::exact(L_S), received, channel);
}

double complexity_ratio(const VlcCode& code, const SourceModel& source, std::size_t L_S, std::size_t T,
                        std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const TrellisDecoder decoder(code, source);
  double ops_T = 0.0;
  double ops_1 = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    const Bits bits = encode(code, sample_symbols(source, L_S, rng));
    BitLogLikelihoods llh(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) llh[k] = {bits[k] ? -1.0 : 0.0, bits[k] ? 0.0 : -1.0};
    ops_T += static_cast<double>(decoder.decode(TrellisConfig::aggregated(T, L_S), llh).branch_ops);
    ops_1 += static_cast<double>(decoder.decode(TrellisConfig::aggregated(1, L_S), llh).branch_ops);
  }
  return ops_T / ops_1;
}

}  // namespace vlcsync
