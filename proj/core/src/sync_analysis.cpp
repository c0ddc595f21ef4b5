#include "vlcsync/sync_analysis.hpp"

#include <cstdio>

#include "vlcsync/errors.hpp"

namespace vlcsync {

ErrorStateDiagram::ErrorStateDiagram(std::vector<std::string> labels,
                                     std::vector<std::optional<NodeId>> nodes,
                                     std::vector<LaurentPoly> entries)
    : labels_(std::move(labels)), nodes_(std::move(nodes)), entries_(std::move(entries)) {
  const std::size_t n = labels_.size();
  if (n < 2 || nodes_.size() != n || entries_.size() != n * n) {
    throw Error(ErrorCode::InvalidArgument, "inconsistent error state diagram dimensions");
  }
}

const LaurentPoly& ErrorStateDiagram::entry(std::size_t from, std::size_t to) const {
  return entries_.at(from * labels_.size() + to);
}

std::string ErrorStateDiagram::dump() const {
  std::string out;
  const std::size_t n = labels_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LaurentPoly& e = entry(i, j);
      if (e.is_zero()) continue;
      out += labels_[i] + "\t" + labels_[j] + "\t" + to_string(e, 10) + "\n";
    }
  }
  return out;
}

ErrorStateDiagram build_esd(const VlcCode& code, const SourceModel& source) {
  const CodeTree tree(code);
  const double mdl = mean_description_length(code, source);
  const std::size_t internal = tree.internal_count();
  // Tree node k >= 1 becomes state k; n_l is 0 and n_s is `internal`.
  const std::size_t n = internal + 1;
  const std::size_t sync = internal;

  std::vector<std::string> labels(n);
  std::vector<std::optional<NodeId>> nodes(n);
  labels[0] = "n_l";
  labels[sync] = "n_s";
  for (NodeId k = 1; k < internal; ++k) {
    labels[k] = tree.label(k);
    nodes[k] = k;
  }

  std::vector<LaurentPoly> entries(n * n);
  auto target = [&](NodeId end) { return end == kRootNode ? sync : static_cast<std::size_t>(end); };
  auto add = [&](std::size_t from, const Walk& w, double weight) {
    const int exponent = 1 - static_cast<int>(w.symbols.size());
    entries[from * n + target(w.end_node)].add_term(exponent, weight);
  };

  for (Symbol s = 0; s < code.size(); ++s) {
    const Bits& c = code.codeword(s);
    const double weight = source.prob(s) / mdl;
    for (std::size_t j = 0; j < c.size(); ++j) {
      Bits flipped = c;
      flipped[j] ^= 1U;
      add(0, walk(tree, kRootNode, flipped), weight);
    }
  }
  for (NodeId k = 1; k < internal; ++k) {
    for (Symbol s = 0; s < code.size(); ++s) add(k, walk(tree, k, code.codeword(s)), source.prob(s));
  }
  return ErrorStateDiagram(std::move(labels), std::move(nodes), std::move(entries));
}

namespace {

// One step of the n_l-started flow: returns what reaches n_s and advances `flow`.
LaurentPoly advance(const ErrorStateDiagram& esd, std::vector<LaurentPoly>& flow) {
  const std::size_t sync = esd.sync_state();
  std::vector<LaurentPoly> next(sync);
  LaurentPoly absorbed;
  for (std::size_t from = 0; from < sync; ++from) {
    if (flow[from].is_zero()) continue;
    for (std::size_t to = 0; to <= sync; ++to) {
      const LaurentPoly& h = esd.entry(from, to);
      if (h.is_zero()) continue;
      LaurentPoly moved = mul(flow[from], h);
      if (to == sync) {
        absorbed += moved;
      } else {
        next[to] += moved;
      }
    }
  }
  flow = std::move(next);
  return absorbed;
}

}  // namespace

GainSeries gain_series(const ErrorStateDiagram& esd, SeriesOptions options) {
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  std::vector<LaurentPoly> flow(esd.sync_state());
  flow[ErrorStateDiagram::loss_state()] = LaurentPoly::unit();

  GainSeries out;
  double residual = 1.0;
  while (out.steps < options.max_steps) {
    LaurentPoly absorbed = advance(esd, flow);
    ++out.steps;
    out.error_span.add_term(static_cast<int>(out.steps), mass(absorbed));
    out.gain += absorbed;
    residual = 0.0;
    for (const auto& f : flow) residual += mass(f);
    if (residual < options.tol) break;
  }
  out.residual_mass = residual;
  if (residual >= options.tol) {
    throw Error(ErrorCode::NotAbsorbed, "unabsorbed mass " + std::to_string(residual) + " after " +
                                            std::to_string(out.steps) + " steps");
  }
  return out;
}

LaurentPoly gain_polynomial(const ErrorStateDiagram& esd, SeriesOptions options) {
  return gain_series(esd, options).gain;
}

LaurentPoly error_span_poly(const ErrorStateDiagram& esd, SeriesOptions options) {
  return gain_series(esd, options).error_span;
}

double mepl(const ErrorStateDiagram& esd, SeriesOptions options) {
  return mean(error_span_poly(esd, options));
}

double vepl(const ErrorStateDiagram& esd, SeriesOptions options) {
  return variance(error_span_poly(esd, options));
}

std::vector<LaurentPoly> first_passage_terms(const ErrorStateDiagram& esd, std::size_t k_max) {
  std::vector<LaurentPoly> flow(esd.sync_state());
  flow[ErrorStateDiagram::loss_state()] = LaurentPoly::unit();
  std::vector<LaurentPoly> terms;
  terms.reserve(k_max);
  for (std::size_t k = 0; k < k_max; ++k) terms.push_back(advance(esd, flow));
  return terms;
}

}  // namespace vlcsync
