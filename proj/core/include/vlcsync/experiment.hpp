#pragma once

// Experiment drivers behind the command line tool: analytic criteria tables,
// Monte-Carlo FER/BER/NLD sweeps, entropy-versus-T curves and the cost of
// combined decoding.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vlcsync/codes.hpp"
#include "vlcsync/report.hpp"
#include "vlcsync/trellis.hpp"

namespace vlcsync {

/// Unit-cost edit distance between symbol sequences.
std::size_t levenshtein(std::span<const Symbol> a, std::span<const Symbol> b);
/// levenshtein(decoded, emitted) / |emitted|.
double normalized_levenshtein(std::span<const Symbol> decoded, std::span<const Symbol> emitted);

/// A trellis parameter: a positive T or the exact bit/symbol trellis.
struct TrellisChoice {
  std::optional<std::size_t> T;  ///< empty for bit/symbol

  /// "bs", "bit/symbol", "exact" or a positive integer.
  static TrellisChoice parse(std::string_view text);
  TrellisConfig config(std::size_t L_S) const;
  std::string label() const;
};

struct ExperimentConfig {
  std::vector<std::string> code_ids{"C5"};
  std::size_t L_S = 100;
  std::vector<double> ebn0_db{6.0};
  std::vector<TrellisChoice> trellises{TrellisChoice{}};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double eta = 1e-6;
  unsigned threads = 0;

  /// Throws InvalidArgument on empty lists, trials == 0, L_S == 0 or eta outside (0, 1/e).
  void validate() const;
};

/// Analytic columns per code: P(ΔS=0), H(ΔS), d_eta, MEPL, VEPL, mdl, excess rate.
/// Uses the first entry of ebn0_db.
Report run_criteria_table(const CodeLibrary& library, const ExperimentConfig& config);

/// Per (code, Eb/N0, trellis) frame, bit and Levenshtein error rates over
/// `trials` frames. Frame i uses the same symbols and noise draw for every cell.
Report run_fer_sweep(const CodeLibrary& library, const ExperimentConfig& config);

/// H(ΔS mod T) for T = 1..T_max followed by an "inf" row holding H(ΔS).
Report run_entropy_convergence(const CodeEntry& code, std::size_t L_S, double ebn0_db, std::size_t T_max,
                               double eta = 1e-6);

/// Measured combined-decoding cost D_mtd / D_bal (and the same divided by
/// T1·T2) against Eb/N0. The Eb/N0 at which D_mtd crosses T1·T2·D_bal is
/// interpolated into the metadata.
Report run_cost_comparison(const CodeEntry& code, std::size_t L_S, std::size_t T1, std::size_t T2,
                           std::span<const double> ebn0_db, std::size_t trials, std::uint64_t seed = 1,
                           unsigned threads = 0);

}  // namespace vlcsync
