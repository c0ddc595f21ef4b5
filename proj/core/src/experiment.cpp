#include "vlcsync/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "vlcsync/channel.hpp"
#include "vlcsync/combined.hpp"
#include "vlcsync/errors.hpp"
#include "vlcsync/montecarlo.hpp"

namespace vlcsync {

std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double normalized_levenshtein(std::span<const Symbol> decoded, std::span<const Symbol> emitted) {
  if (emitted.empty()) throw Error(ErrorCode::InvalidArgument, "empty emitted sequence");
  return static_cast<double>(levenshtein(decoded, emitted)) / static_cast<double>(emitted.size());
}

TrellisChoice TrellisChoice::parse(std::string_view text) {
  if (text == "bs" || text == "bit/symbol" || text == "exact") return TrellisChoice{};
  std::size_t T = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), T);
  if (ec != std::errc{} || end != text.data() + text.size() || T == 0) {
    throw Error(ErrorCode::InvalidArgument, "invalid trellis parameter '" + std::string(text) + "'");
  }
  return TrellisChoice{T};
}

TrellisConfig TrellisChoice::config(std::size_t L_S) const {
  return T ? TrellisConfig::aggregated(*T, L_S) : TrellisConfig::exact(L_S);
}

std::string TrellisChoice::label() const { return T ? std::to_string(*T) : "bit/symbol"; }

void ExperimentConfig::validate() const {
  if (code_ids.empty()) throw Error(ErrorCode::InvalidArgument, "no code selected");
  if (ebn0_db.empty()) throw Error(ErrorCode::InvalidArgument, "no Eb/N0 value");
  if (trellises.empty()) throw Error(ErrorCode::InvalidArgument, "no trellis parameter");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (L_S == 0) throw Error(ErrorCode::InvalidArgument, "L_S must be >= 1");
  if (!(eta > 0.0 && eta < std::exp(-1.0))) throw Error(ErrorCode::InvalidArgument, "eta must lie in (0, 1/e)");
}

namespace {

constexpr const char* kBerDefinition = "Hamming distance between sent bits and decoded path bits / L(X), averaged over frames";

std::vector<Cell> criteria_cells(const CodeCriteria& c) {
  return {c.delta_s.p_sync, c.delta_s.h_delta_s, static_cast<std::int64_t>(c.delta_s.d_eta),
          c.mepl,           c.vepl,              c.mdl,
          c.excess_rate};
}

const std::vector<std::string> kCriteriaColumns{"p_sync", "h_delta_s", "d_eta", "mepl",
                                                "vepl",   "mdl",       "excess_rate"};

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi out;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) out.mean += x;
  out.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.half_width = 1.96 * std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace

Report run_criteria_table(const CodeLibrary& library, const ExperimentConfig& config) {
  config.validate();
  std::vector<std::string> columns{"code", "source", "L_S", "ebn0"};
  columns.insert(columns.end(), kCriteriaColumns.begin(), kCriteriaColumns.end());
  columns.push_back("epl_stddev");
  Report report(columns);
  report.set_meta("eta", config.eta);
  report.set_meta("delta_s_sign", "decoded minus emitted symbol count");
  const double ebn0 = config.ebn0_db.front();
  for (const auto& id : config.code_ids) {
    const CodeEntry& e = library.at(id);
    const CodeCriteria c = criteria(e.code, e.source, config.L_S, ChannelSpec::awgn(ebn0), config.eta);
    std::vector<Cell> row{e.id, e.source_name, static_cast<std::int64_t>(config.L_S), ebn0};
    for (auto& cell : criteria_cells(c)) row.push_back(std::move(cell));
    row.emplace_back(c.epl_stddev());
    report.add_row(std::move(row));
  }
  return report;
}

Report run_fer_sweep(const CodeLibrary& library, const ExperimentConfig& config) {
  config.validate();
  std::vector<std::string> columns{"code", "L_S", "ebn0",   "trellis", "trials",   "fer",      "fer_ci",
                                   "ber",  "ber_ci", "nld", "nld_ci",  "branch_ops", "infeasible"};
  columns.insert(columns.end(), kCriteriaColumns.begin(), kCriteriaColumns.end());
  Report report(columns);
  report.set_meta("seed", std::to_string(config.seed));
  report.set_meta("trials", std::to_string(config.trials));
  report.set_meta("eta", config.eta);
  report.set_meta("ber_definition", kBerDefinition);
  report.set_meta("nld_definition", "Levenshtein(decoded, emitted) / L(S), averaged over frames");
  report.set_meta("ci", "95% normal-approximation half-widths");
  report.set_meta("side_information", "the residue L(S) mod T costs at least log2(T) bits and is not simulated");

  const std::size_t n_snr = config.ebn0_db.size();
  const std::size_t n_tr = config.trellises.size();
  const std::size_t cells = n_snr * n_tr;

  struct FrameStat {
    bool frame_error = false;
    bool infeasible = false;
    double ber = 0.0;
    double nld = 0.0;
    std::uint64_t ops = 0;
  };

  for (const auto& id : config.code_ids) {
    const CodeEntry& e = library.at(id);
    const TrellisDecoder decoder(e.code, e.source);
    std::vector<ChannelSpec> channels;
    for (double db : config.ebn0_db) channels.push_back(ChannelSpec::awgn(db));
    std::vector<TrellisConfig> trellis_cfg;
    for (const auto& t : config.trellises) trellis_cfg.push_back(t.config(config.L_S));

    std::vector<FrameStat> stats(cells * config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t i) {
      Rng rng = trial_rng(config.seed, i);
      const SymbolSeq sent = sample_symbols(e.source, config.L_S, rng);
      const Bits bits = encode(e.code, sent);
      for (std::size_t si = 0; si < n_snr; ++si) {
        Rng noise_rng = rng;
        const BitLogLikelihoods llh = bit_log_likelihoods(transmit(bits, channels[si], noise_rng), channels[si]);
        for (std::size_t ti = 0; ti < n_tr; ++ti) {
          const DecodeResult r = decoder.decode(trellis_cfg[ti], llh);
          FrameStat& st = stats[(si * n_tr + ti) * config.trials + i];
          st.frame_error = r.symbols != sent;
          st.infeasible = !r.feasible;
          st.ops = r.branch_ops;
          std::size_t diff = 0;
          for (std::size_t k = 0; k < bits.size(); ++k) diff += (k < r.path_bits.size() && r.path_bits[k] == bits[k]) ? 0 : 1;
          st.ber = bits.empty() ? 0.0 : static_cast<double>(diff) / static_cast<double>(bits.size());
          st.nld = st.frame_error ? normalized_levenshtein(r.symbols, sent) : 0.0;
        }
      }
    });

    for (std::size_t si = 0; si < n_snr; ++si) {
      const CodeCriteria crit = criteria(e.code, e.source, config.L_S, channels[si], config.eta);
      for (std::size_t ti = 0; ti < n_tr; ++ti) {
        const auto begin = stats.begin() + static_cast<std::ptrdiff_t>((si * n_tr + ti) * config.trials);
        std::vector<double> fer, ber, nld;
        double ops = 0.0;
        std::int64_t infeasible = 0;
        for (auto it = begin; it != begin + static_cast<std::ptrdiff_t>(config.trials); ++it) {
          fer.push_back(it->frame_error ? 1.0 : 0.0);
          ber.push_back(it->ber);
          nld.push_back(it->nld);
          ops += static_cast<double>(it->ops);
          infeasible += it->infeasible ? 1 : 0;
        }
        const MeanCi f = mean_ci(fer);
        const MeanCi b = mean_ci(ber);
        const MeanCi l = mean_ci(nld);
        std::vector<Cell> row{e.id,
                              static_cast<std::int64_t>(config.L_S),
                              config.ebn0_db[si],
                              config.trellises[ti].label(),
                              static_cast<std::int64_t>(config.trials),
                              f.mean,
                              binomial_half_width(f.mean, config.trials),
                              b.mean,
                              b.half_width,
                              l.mean,
                              l.half_width,
                              ops / static_cast<double>(config.trials),
                              infeasible};
        for (auto& cell : criteria_cells(crit)) row.push_back(std::move(cell));
        report.add_row(std::move(row));
      }
    }
  }
  return report;
}

Report run_entropy_convergence(const CodeEntry& code, std::size_t L_S, double ebn0_db, std::size_t T_max,
                               double eta) {
  if (T_max == 0) throw Error(ErrorCode::InvalidArgument, "T_max must be >= 1");
  const CodeCriteria c = criteria(code.code, code.source, L_S, ChannelSpec::awgn(ebn0_db), eta);
  Report report({"T", "h_mod"});
  report.set_meta("code", code.id);
  report.set_meta("L_S", std::to_string(L_S));
  report.set_meta("ebn0", ebn0_db);
  report.set_meta("h_delta_s", c.delta_s.h_delta_s);
  report.set_meta("d_eta", std::to_string(c.delta_s.d_eta));
  for (std::size_t T = 1; T <= T_max; ++T) {
    report.add_row({std::to_string(T), constraint_entropy_mod(c.delta_s.g_tilde, static_cast<int>(T))});
  }
  report.add_row({std::string("inf"), c.delta_s.h_delta_s});
  return report;
}

namespace {

// Linear interpolation of the first sign change of f over xs.
std::optional<double> first_crossing(std::span<const double> xs, const std::vector<double>& f) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (f[i] == 0.0) return xs[i];
    if ((f[i] < 0.0) != (f[i + 1] < 0.0)) return xs[i] + (xs[i + 1] - xs[i]) * f[i] / (f[i] - f[i + 1]);
  }
  if (!f.empty() && f.back() == 0.0) return xs.back();
  return std::nullopt;
}

}  // namespace

Report run_cost_comparison(const CodeEntry& code, std::size_t L_S, std::size_t T1, std::size_t T2,
                           std::span<const double> ebn0_db, std::size_t trials, std::uint64_t seed,
                           unsigned threads) {
  const CombinedConfig cfg = CombinedConfig::make(T1, T2);
  const double T3 = static_cast<double>(cfg.T3());
  Report report({"ebn0", "rho", "rho_ci", "rho_star", "ratio_measured", "ratio_vs_T3", "ratio_projected", "T3"});
  report.set_meta("code", code.id);
  report.set_meta("L_S", std::to_string(L_S));
  report.set_meta("T1", std::to_string(T1));
  report.set_meta("T2", std::to_string(T2));
  report.set_meta("trials", std::to_string(trials));
  report.set_meta("seed", std::to_string(seed));
  report.set_meta("rho_star", rho_star(T1, T2));

  std::vector<double> gap, gap_lo, gap_hi;
  for (double db : ebn0_db) {
    const RhoEstimate r = rho_estimate(code.code, code.source, cfg, ChannelSpec::awgn(db), L_S, trials, seed, threads);
    const double measured = r.mean_ops_combined / r.mean_ops_bal;
    report.add_row(
        {db, r.rho, r.half_width, rho_star(T1, T2), measured, measured / T3, cost_projection(T1, T2, r.rho, 1.0), T3});
    gap.push_back(measured - T3);
    gap_lo.push_back(measured - r.half_width * T3 - T3);
    gap_hi.push_back(measured + r.half_width * T3 - T3);
  }
  auto put = [&](const std::string& key, const std::vector<double>& f) {
    const auto x = first_crossing(ebn0_db, f);
    report.set_meta(key, x ? format_number(*x) : std::string("none"));
  };
  put("crossing_ebn0", gap);
  put("crossing_ebn0_rho_low", gap_lo);
  put("crossing_ebn0_rho_high", gap_hi);
  return report;
}

}  // namespace vlcsync
