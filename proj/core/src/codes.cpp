#include "vlcsync/codes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "vlcsync/errors.hpp"

namespace vlcsync {

Bits parse_bits(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::ParseError, "not a bit string: '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<Bit>(c - '0'));
  }
  return bits;
}

std::string bits_to_string(std::span<const Bit> bits) {
  std::string out;
  out.reserve(bits.size());
  for (Bit b : bits) out.push_back(b ? '1' : '0');
  return out;
}

// ---------------------------------------------------------------------------
// SourceModel

SourceModel::SourceModel(std::vector<std::string> symbols, std::vector<double> probs,
                         std::vector<std::string> prob_text)
    : symbols_(std::move(symbols)), probs_(std::move(probs)), prob_text_(std::move(prob_text)) {
  if (symbols_.empty()) throw Error(ErrorCode::InvalidArgument, "empty source alphabet");
  if (symbols_.size() != probs_.size()) {
    throw Error(ErrorCode::InvalidArgument, "symbol and probability counts differ");
  }
  if (!prob_text_.empty() && prob_text_.size() != probs_.size()) {
    throw Error(ErrorCode::InvalidArgument, "probability text count differs from symbol count");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidArgument, "source probabilities must be > 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "source probabilities sum to " + std::to_string(sum));
  }
  std::vector<std::string> sorted = symbols_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate source symbol");
  }
}

std::string SourceModel::prob_text(Symbol s) const {
  if (!prob_text_.empty()) return prob_text_.at(s);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", probs_.at(s));
  return buf;
}

std::optional<Symbol> SourceModel::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] == name) return static_cast<Symbol>(i);
  }
  return std::nullopt;
}

double SourceModel::entropy_bits() const {
  double h = 0.0;
  for (double p : probs_) h -= p * std::log2(p);
  return h;
}

// ---------------------------------------------------------------------------
// VlcCode

VlcCode::VlcCode(std::vector<Bits> codewords) : codewords_(std::move(codewords)) {
  if (codewords_.empty()) throw Error(ErrorCode::InvalidArgument, "empty codebook");
  std::vector<std::string> sorted;
  sorted.reserve(codewords_.size());
  for (const Bits& c : codewords_) {
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "empty codeword");
    sorted.push_back(bits_to_string(c));
  }
  // In lexicographic order any prefix of a word sorts immediately before some
  // word it prefixes, so adjacent pairs suffice.
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const std::string& a = sorted[i - 1];
    const std::string& b = sorted[i];
    if (a == b) throw Error(ErrorCode::DuplicateCodeword, "codeword " + a + " appears twice");
    if (b.compare(0, a.size(), a) == 0) {
      throw Error(ErrorCode::PrefixViolation, a + " is a prefix of " + b);
    }
  }
  auto [lo, hi] = std::minmax_element(codewords_.begin(), codewords_.end(),
                                      [](const Bits& x, const Bits& y) { return x.size() < y.size(); });
  min_length_ = lo->size();
  max_length_ = hi->size();
}

VlcCode VlcCode::from_strings(const std::vector<std::string>& codewords) {
  std::vector<Bits> bits;
  bits.reserve(codewords.size());
  for (const auto& c : codewords) bits.push_back(parse_bits(c));
  return VlcCode(std::move(bits));
}

double VlcCode::kraft_sum() const {
  double sum = 0.0;
  for (const Bits& c : codewords_) sum += std::ldexp(1.0, -static_cast<int>(c.size()));
  return sum;
}

// ---------------------------------------------------------------------------
// CodeTree

CodeTree::CodeTree(const VlcCode& code) : symbol_count_(code.size()) {
  auto by_depth = [](const Bits& a, const Bits& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::map<Bits, NodeId, decltype(by_depth)> internal(by_depth);
  internal.emplace(Bits{}, 0);
  for (Symbol s = 0; s < code.size(); ++s) {
    const Bits& c = code.codeword(s);
    for (std::size_t k = 1; k < c.size(); ++k) internal.emplace(Bits(c.begin(), c.begin() + k), 0);
  }
  std::map<Bits, Symbol> leaves;
  for (Symbol s = 0; s < code.size(); ++s) leaves.emplace(code.codeword(s), s);

  NodeId next = 0;
  for (auto& [prefix, id] : internal) {
    id = next++;
    prefixes_.push_back(prefix);
  }
  children_.resize(prefixes_.size());
  for (NodeId n = 0; n < prefixes_.size(); ++n) {
    for (Bit b = 0; b < 2; ++b) {
      Bits extended = prefixes_[n];
      extended.push_back(b);
      Child& child = children_[n][b];
      if (auto leaf = leaves.find(extended); leaf != leaves.end()) {
        child = {Child::Kind::Leaf, leaf->second};
      } else if (auto node = internal.find(extended); node != internal.end()) {
        child = {Child::Kind::Internal, node->second};
      }
    }
  }
}

std::string CodeTree::label(NodeId node) const {
  const Bits& p = prefixes_.at(node);
  return p.empty() ? "n_eps" : "n_" + bits_to_string(p);
}

std::optional<NodeId> CodeTree::find(std::span<const Bit> prefix) const {
  NodeId node = kRootNode;
  for (Bit b : prefix) {
    const Child& c = child(node, b);
    if (!c.is_internal()) return std::nullopt;
    node = c.index;
  }
  return node;
}

bool CodeTree::is_complete() const noexcept {
  return std::all_of(children_.begin(), children_.end(), [](const auto& pair) {
    return !pair[0].is_none() && !pair[1].is_none();
  });
}

std::vector<double> CodeTree::node_masses(const SourceModel& source) const {
  if (source.size() != symbol_count_) {
    throw Error(ErrorCode::InvalidArgument, "source and code alphabet sizes differ");
  }
  std::vector<double> mass(children_.size(), 0.0);
  // Breadth-first numbering puts children after parents; sweep backwards.
  for (std::size_t i = children_.size(); i-- > 0;) {
    double m = 0.0;
    for (const Child& c : children_[i]) {
      if (c.is_leaf()) m += source.prob(c.index);
      if (c.is_internal()) m += mass[c.index];
    }
    mass[i] = m;
  }
  return mass;
}

// ---------------------------------------------------------------------------
// Parsing and encoding

Walk walk(const CodeTree& tree, NodeId start, std::span<const Bit> bits) {
  Walk out;
  NodeId node = start;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const auto& c = tree.child(node, bits[k]);
    if (c.is_leaf()) {
      out.symbols.push_back(c.index);
      node = kRootNode;
    } else if (c.is_internal()) {
      node = c.index;
    } else {
      throw Error(ErrorCode::DeadEnd, "no branch from " + tree.label(node) + " at bit position " +
                                          std::to_string(k));
    }
  }
  out.end_node = node;
  return out;
}

Walk hard_decode(const CodeTree& tree, std::span<const Bit> bits) {
  return walk(tree, kRootNode, bits);
}

Bits encode(const VlcCode& code, std::span<const Symbol> symbols) {
  Bits out;
  for (Symbol s : symbols) {
    if (s >= code.size()) throw Error(ErrorCode::UnknownSymbol, "symbol index " + std::to_string(s));
    const Bits& c = code.codeword(s);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

double mean_description_length(const VlcCode& code, const SourceModel& source) {
  if (code.size() != source.size()) {
    throw Error(ErrorCode::InvalidArgument, "source and code alphabet sizes differ");
  }
  double mdl = 0.0;
  for (Symbol s = 0; s < code.size(); ++s) mdl += source.prob(s) * static_cast<double>(code.length(s));
  return mdl;
}

double excess_rate(const VlcCode& code, const SourceModel& source) {
  return mean_description_length(code, source) - source.entropy_bits();
}

double branch_prior(const CodeTree& tree, std::span<const double> node_masses,
                    const SourceModel& source, NodeId node, Bit bit) {
  const auto& c = tree.child(node, bit);
  if (c.is_none()) {
    throw Error(ErrorCode::MissingChild, tree.label(node) + " has no child " + std::to_string(bit));
  }
  const double child_mass = c.is_leaf() ? source.prob(c.index) : node_masses[c.index];
  return child_mass / node_masses[node];
}

double branch_prior(const CodeTree& tree, const SourceModel& source, NodeId node, Bit bit) {
  const auto masses = tree.node_masses(source);
  return branch_prior(tree, masses, source, node, bit);
}

}  // namespace vlcsync
