#pragma once

// Error state diagram of a prefix code after a single bit error, and the
// series it generates: the gain polynomial G(y) over the symbol-count
// discrepancy and the error span distribution over symbols to resynchronize.
//
// Exponent convention: a branch that emits one source symbol while the
// decoder outputs d symbols carries y^(1-d), so exponents count
// emitted - decoded. The discrepancy ΔS used everywhere else is
// decoded - emitted, i.e. P(ΔS = i) is the coefficient of y^(-i).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vlcsync/codes.hpp"
#include "vlcsync/laurent.hpp"

namespace vlcsync {

class ErrorStateDiagram {
 public:
  /// States are [n_l, internal non-root nodes in tree order..., n_s].
  ErrorStateDiagram(std::vector<std::string> labels, std::vector<std::optional<NodeId>> nodes,
                    std::vector<LaurentPoly> entries);

  std::size_t state_count() const noexcept { return labels_.size(); }
  static constexpr std::size_t loss_state() noexcept { return 0; }
  std::size_t sync_state() const noexcept { return labels_.size() - 1; }

  const std::string& label(std::size_t state) const { return labels_.at(state); }
  /// Code-tree node of an internal state; empty for n_l and n_s.
  std::optional<NodeId> tree_node(std::size_t state) const { return nodes_.at(state); }
  const LaurentPoly& entry(std::size_t from, std::size_t to) const;

  /// Adjacency list "from<TAB>to<TAB>polynomial", one nonzero entry per line.
  std::string dump() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::optional<NodeId>> nodes_;
  std::vector<LaurentPoly> entries_;  // row-major
};

/// Builds the diagram. The n_l row spreads the single error uniformly over
/// bit positions (weight p_i/mdl for each bit of codeword i); internal-node
/// rows feed one whole codeword into a decoder sitting at that node.
/// Throws DeadEnd for incomplete codes.
ErrorStateDiagram build_esd(const VlcCode& code, const SourceModel& source);

struct SeriesOptions {
  double tol = 1e-12;
  std::size_t max_steps = 100000;
};

struct GainSeries {
  LaurentPoly gain;         ///< G(y)
  LaurentPoly error_span;   ///< exponent k: probability of first reaching n_s after k symbols
  std::size_t steps = 0;
  double residual_mass = 0.0;  ///< mass not yet absorbed when the iteration stopped
};

/// Accumulates the flow into n_s step by step starting from the n_l row.
/// Throws NotAbsorbed if residual mass is still >= tol after max_steps.
GainSeries gain_series(const ErrorStateDiagram& esd, SeriesOptions options = {});

LaurentPoly gain_polynomial(const ErrorStateDiagram& esd, SeriesOptions options = {});
LaurentPoly error_span_poly(const ErrorStateDiagram& esd, SeriesOptions options = {});
/// Mean and variance of the error span (symbols until resynchronization).
double mepl(const ErrorStateDiagram& esd, SeriesOptions options = {});
double vepl(const ErrorStateDiagram& esd, SeriesOptions options = {});

/// h^k(y) for k = 1..k_max: the n_l -> n_s flow at exactly k steps.
std::vector<LaurentPoly> first_passage_terms(const ErrorStateDiagram& esd, std::size_t k_max);

}  // namespace vlcsync
