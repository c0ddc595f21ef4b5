#pragma once

// Memoryless sources, prefix-free variable length codes and their code trees.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vlcsync {

using Bit = std::uint8_t;
using Bits = std::vector<Bit>;

/// Index into a source alphabet.
using Symbol = std::uint32_t;
using SymbolSeq = std::vector<Symbol>;

/// Parses a string of '0'/'1' characters. Throws ParseError on anything else.
Bits parse_bits(std::string_view text);
std::string bits_to_string(std::span<const Bit> bits);

/// Memoryless source: ordered symbol names with their probabilities.
class SourceModel {
 public:
  /// `prob_text` optionally keeps the decimal strings the probabilities were
  /// read from. Probabilities must be positive and sum to one within 1e-12.
  SourceModel(std::vector<std::string> symbols, std::vector<double> probs,
              std::vector<std::string> prob_text = {});

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(Symbol s) const { return symbols_.at(s); }
  double prob(Symbol s) const { return probs_.at(s); }
  std::span<const double> probs() const noexcept { return probs_; }
  /// Decimal text of the probability, or a formatted value when none was given.
  std::string prob_text(Symbol s) const;
  std::optional<Symbol> find(std::string_view name) const;

  /// Shannon entropy in bits per symbol.
  double entropy_bits() const;

 private:
  std::vector<std::string> symbols_;
  std::vector<double> probs_;
  std::vector<std::string> prob_text_;
};

/// Prefix-free binary code, one codeword per source symbol.
class VlcCode {
 public:
  /// Throws InvalidArgument (empty codebook or codeword), DuplicateCodeword or
  /// PrefixViolation.
  explicit VlcCode(std::vector<Bits> codewords);
  static VlcCode from_strings(const std::vector<std::string>& codewords);

  std::size_t size() const noexcept { return codewords_.size(); }
  const Bits& codeword(Symbol s) const { return codewords_.at(s); }
  std::size_t length(Symbol s) const { return codewords_.at(s).size(); }
  std::size_t min_length() const noexcept { return min_length_; }
  std::size_t max_length() const noexcept { return max_length_; }

  /// Sum of 2^-len over codewords; at most one, equal to one for complete codes.
  double kraft_sum() const;

 private:
  std::vector<Bits> codewords_;
  std::size_t min_length_ = 0;
  std::size_t max_length_ = 0;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kRootNode = 0;

/// Internal-node automaton of a prefix code. Internal nodes are the proper
/// prefixes of the codewords, numbered breadth first with `0` before `1`, so
/// the root is node 0.
class CodeTree {
 public:
  struct Child {
    enum class Kind : std::uint8_t { None, Internal, Leaf };
    Kind kind = Kind::None;
    std::uint32_t index = 0;  // NodeId for Internal, Symbol for Leaf

    bool is_leaf() const noexcept { return kind == Kind::Leaf; }
    bool is_internal() const noexcept { return kind == Kind::Internal; }
    bool is_none() const noexcept { return kind == Kind::None; }
  };

  explicit CodeTree(const VlcCode& code);

  /// Number of internal nodes, root included.
  std::size_t internal_count() const noexcept { return children_.size(); }
  std::size_t symbol_count() const noexcept { return symbol_count_; }
  const Child& child(NodeId node, Bit bit) const { return children_.at(node)[bit & 1U]; }
  const Bits& prefix(NodeId node) const { return prefixes_.at(node); }
  /// "n_eps" for the root, "n_<prefix>" otherwise.
  std::string label(NodeId node) const;
  std::optional<NodeId> find(std::span<const Bit> prefix) const;

  /// True when every internal node has both children.
  bool is_complete() const noexcept;

  /// Total source probability of the leaves below each internal node.
  std::vector<double> node_masses(const SourceModel& source) const;

 private:
  std::vector<std::array<Child, 2>> children_;
  std::vector<Bits> prefixes_;
  std::size_t symbol_count_ = 0;
};

/// Outcome of feeding bits into the code-tree automaton.
struct Walk {
  SymbolSeq symbols;
  NodeId end_node = kRootNode;
};

/// Feeds `bits` starting at `start`. Throws DeadEnd when a missing branch of
/// an incomplete code is taken.
Walk walk(const CodeTree& tree, NodeId start, std::span<const Bit> bits);

/// Greedy prefix parse from the root; `end_node` holds any trailing partial codeword.
Walk hard_decode(const CodeTree& tree, std::span<const Bit> bits);

/// Concatenated codewords. Throws UnknownSymbol for out-of-alphabet input.
Bits encode(const VlcCode& code, std::span<const Symbol> symbols);

double mean_description_length(const VlcCode& code, const SourceModel& source);
/// mdl minus source entropy, bits per symbol.
double excess_rate(const VlcCode& code, const SourceModel& source);

/// P(next bit = b | decoder at `node`). Throws MissingChild when the branch
/// does not exist.
double branch_prior(const CodeTree& tree, std::span<const double> node_masses,
                    const SourceModel& source, NodeId node, Bit bit);
double branch_prior(const CodeTree& tree, const SourceModel& source, NodeId node, Bit bit);

/// A named code together with its source, as bundled with the library.
struct CodeEntry {
  std::string id;
  std::string source_name;
  SourceModel source;
  VlcCode code;
};

/// Set of codes read from the bundled text format.
class CodeLibrary {
 public:
  static CodeLibrary parse(std::string_view text);
  static CodeLibrary load(const std::string& path);
  /// Codes compiled into the library (tables of 16 five-symbol and 3 English-alphabet codes).
  static const CodeLibrary& bundled();

  const std::vector<CodeEntry>& entries() const noexcept { return entries_; }
  /// Throws InvalidArgument for an unknown id.
  const CodeEntry& at(std::string_view id) const;
  const CodeEntry* find(std::string_view id) const;

 private:
  std::vector<CodeEntry> entries_;
};

}  // namespace vlcsync
