#include <cmath>
#include <fstream>
#include <sstream>

#include "vlcsync/codes.hpp"
#include "vlcsync/errors.hpp"

namespace vlcsync {

namespace detail {
extern const std::string_view kBundledCodes;
}

namespace {

// Tabulated probabilities are rounded (the English-alphabet source sums
// to 0.99999986); sums within this slack are renormalized on load.
constexpr double kRenormalizeSlack = 1e-6;

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct PendingRecord {
  std::string id;
  std::string source_name;
  std::vector<std::string> symbols;
  std::vector<std::string> prob_text;
  std::vector<double> probs;
  std::vector<std::string> codewords;
};

CodeEntry finish(PendingRecord&& rec, std::size_t line) {
  if (rec.symbols.empty()) parse_fail(line, "code " + rec.id + " has no symbols");
  double sum = 0.0;
  for (double p : rec.probs) sum += p;
  if (std::abs(sum - 1.0) > kRenormalizeSlack) {
    parse_fail(line, "probabilities of " + rec.id + " sum to " + std::to_string(sum));
  }
  for (double& p : rec.probs) p /= sum;
  try {
    SourceModel source(std::move(rec.symbols), std::move(rec.probs), std::move(rec.prob_text));
    VlcCode code = VlcCode::from_strings(rec.codewords);
    if (code.size() != source.size()) parse_fail(line, "alphabet mismatch in " + rec.id);
    return CodeEntry{std::move(rec.id), std::move(rec.source_name), std::move(source), std::move(code)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(e.code(), "line " + std::to_string(line) + ": code " + rec.id + ": " + e.what());
  }
}

}  // namespace

CodeLibrary CodeLibrary::parse(std::string_view text) {
  CodeLibrary lib;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<PendingRecord> rec;

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::string head;
    if (!(fields >> head)) continue;

    if (head == "code") {
      if (rec) parse_fail(line_no, "missing 'end' before new code");
      rec.emplace();
      if (!(fields >> rec->id)) parse_fail(line_no, "code without id");
      fields >> rec->source_name;
      if (lib.find(rec->id)) parse_fail(line_no, "duplicate code id " + rec->id);
    } else if (head == "end") {
      if (!rec) parse_fail(line_no, "'end' outside a code record");
      lib.entries_.push_back(finish(std::move(*rec), line_no));
      rec.reset();
    } else {
      if (!rec) parse_fail(line_no, "symbol line outside a code record");
      std::string prob, codeword, extra;
      if (!(fields >> prob >> codeword) || (fields >> extra)) {
        parse_fail(line_no, "expected '<symbol> <probability> <codeword>'");
      }
      double p = 0.0;
      try {
        std::size_t used = 0;
        p = std::stod(prob, &used);
        if (used != prob.size()) throw std::invalid_argument(prob);
      } catch (const std::exception&) {
        parse_fail(line_no, "bad probability '" + prob + "'");
      }
      rec->symbols.push_back(head);
      rec->prob_text.push_back(prob);
      rec->probs.push_back(p);
      rec->codewords.push_back(codeword);
    }
  }
  if (rec) parse_fail(line_no, "unterminated code record " + rec->id);
  return lib;
}

CodeLibrary CodeLibrary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open code file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const CodeLibrary& CodeLibrary::bundled() {
  static const CodeLibrary lib = parse(detail::kBundledCodes);
  return lib;
}

const CodeEntry* CodeLibrary::find(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

const CodeEntry& CodeLibrary::at(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  throw Error(ErrorCode::InvalidArgument, "unknown code '" + std::string(id) + "'");
}

}  // namespace vlcsync
