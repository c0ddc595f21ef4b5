// vlcsync: command line front end for the resynchronization analysis and
// the trellis decoding experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlcsync/channel.hpp"
#include "vlcsync/codes.hpp"
#include "vlcsync/combined.hpp"
#include "vlcsync/errors.hpp"
#include "vlcsync/experiment.hpp"
#include "vlcsync/report.hpp"
#include "vlcsync/sync_analysis.hpp"

namespace {

using namespace vlcsync;

struct Options {
  std::string data;
  std::vector<std::string> codes;
  std::size_t ls = 100;
  std::vector<double> ebn0;
  std::vector<std::string> T;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  double eta = 1e-6;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
  std::size_t tmax = 40;
  std::size_t T1 = 3;
  std::size_t T2 = 4;
};

const CodeLibrary& library(const Options& o) {
  static std::unique_ptr<CodeLibrary> loaded;
  if (o.data.empty()) return CodeLibrary::bundled();
  if (!loaded) loaded = std::make_unique<CodeLibrary>(CodeLibrary::load(o.data));
  return *loaded;
}

std::vector<std::string> resolve_codes(const Options& o) {
  std::vector<std::string> ids;
  for (const auto& c : o.codes) {
    if (c == "all") {
      for (const auto& e : library(o).entries()) ids.push_back(e.id);
    } else {
      ids.push_back(library(o).at(c).id);
    }
  }
  if (ids.empty()) throw Error(ErrorCode::InvalidArgument, "--code is required");
  return ids;
}

ExperimentConfig make_config(const Options& o, double default_ebn0) {
  ExperimentConfig cfg;
  cfg.code_ids = resolve_codes(o);
  cfg.L_S = o.ls;
  cfg.ebn0_db = o.ebn0.empty() ? std::vector<double>{default_ebn0} : o.ebn0;
  cfg.trellises.clear();
  for (const auto& t : o.T) cfg.trellises.push_back(TrellisChoice::parse(t));
  if (cfg.trellises.empty()) cfg.trellises.push_back(TrellisChoice{});
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.eta = o.eta;
  cfg.threads = o.threads;
  cfg.validate();
  return cfg;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.out + "'");
  f << text;
}

void emit(const Options& o, const Report& r) { emit(o, r.render(parse_report_format(o.format))); }

Report list_codes(const Options& o) {
  Report r({"code", "source", "symbols", "codewords", "min_length", "max_length", "mdl", "excess_rate"});
  for (const auto& e : library(o).entries()) {
    std::string words;
    for (Symbol s = 0; s < e.code.size(); ++s) words += (s ? " " : "") + bits_to_string(e.code.codeword(s));
    r.add_row({e.id, e.source_name, static_cast<std::int64_t>(e.code.size()), words,
               static_cast<std::int64_t>(e.code.min_length()), static_cast<std::int64_t>(e.code.max_length()),
               mean_description_length(e.code, e.source), excess_rate(e.code, e.source)});
  }
  return r;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.out, "Write the report to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resynchronization analysis and length-constrained soft decoding of variable length codes"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--data", o.data, "Code library file (defaults to the bundled codes)");

  auto* list = app.add_subcommand("list-codes", "List the available codes");
  add_common(list, o);

  auto* analyze = app.add_subcommand("analyze", "Analytic resynchronization criteria");
  analyze->add_option("--code", o.codes, "Code id, repeatable; 'all' selects every code")->required();
  analyze->add_option("--ls", o.ls, "Symbols per frame")->check(CLI::PositiveNumber);
  analyze->add_option("--ebn0", o.ebn0, "Eb/N0 in dB (first value used)");
  analyze->add_option("--eta", o.eta, "Pseudo-degree threshold");
  add_common(analyze, o);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo FER/BER/NLD of trellis decoding");
  simulate->add_option("--code", o.codes, "Code id, repeatable")->required();
  simulate->add_option("--ls", o.ls, "Symbols per frame")->check(CLI::PositiveNumber);
  simulate->add_option("--ebn0", o.ebn0, "Eb/N0 in dB, repeatable");
  simulate->add_option("--T", o.T, "Trellis parameter, repeatable; 'bs' for bit/symbol");
  simulate->add_option("--trials", o.trials, "Frames per cell")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", o.seed, "Master seed");
  simulate->add_option("--eta", o.eta, "Pseudo-degree threshold for the analysis columns");
  simulate->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  add_common(simulate, o);

  auto* entropy = app.add_subcommand("entropy-curve", "H(dS mod T) for T = 1..tmax");
  entropy->add_option("--code", o.codes, "Code id")->required();
  entropy->add_option("--ls", o.ls, "Symbols per frame")->check(CLI::PositiveNumber);
  entropy->add_option("--ebn0", o.ebn0, "Eb/N0 in dB");
  entropy->add_option("--tmax", o.tmax, "Largest T")->check(CLI::PositiveNumber);
  entropy->add_option("--eta", o.eta, "Pseudo-degree threshold");
  add_common(entropy, o);

  auto* cost = app.add_subcommand("cost-curve", "Measured cost of combined decoding versus Eb/N0");
  cost->add_option("--code", o.codes, "Code id")->required();
  cost->add_option("--ls", o.ls, "Symbols per frame")->check(CLI::PositiveNumber);
  cost->add_option("--T1", o.T1, "First trellis parameter")->check(CLI::PositiveNumber);
  cost->add_option("--T2", o.T2, "Second trellis parameter")->check(CLI::PositiveNumber);
  cost->add_option("--ebn0", o.ebn0, "Eb/N0 in dB, repeatable");
  cost->add_option("--trials", o.trials, "Frames per point")->check(CLI::PositiveNumber);
  cost->add_option("--seed", o.seed, "Master seed");
  cost->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  add_common(cost, o);

  auto* esd = app.add_subcommand("esd", "Dump the error state diagram and gain polynomial of a code");
  esd->add_option("--code", o.codes, "Code id")->required();
  esd->add_option("--out", o.out, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      emit(o, list_codes(o));
    } else if (analyze->parsed()) {
      emit(o, run_criteria_table(library(o), make_config(o, 6.0)));
    } else if (simulate->parsed()) {
      emit(o, run_fer_sweep(library(o), make_config(o, 6.0)));
    } else if (entropy->parsed()) {
      const auto ids = resolve_codes(o);
      emit(o, run_entropy_convergence(library(o).at(ids.front()), o.ls, o.ebn0.empty() ? 6.0 : o.ebn0.front(),
                                      o.tmax, o.eta));
    } else if (cost->parsed()) {
      const auto ids = resolve_codes(o);
      const std::vector<double> snr = o.ebn0.empty() ? std::vector<double>{1, 2, 3, 4, 5, 6, 7} : o.ebn0;
      emit(o, run_cost_comparison(library(o).at(ids.front()), o.ls, o.T1, o.T2, snr, o.trials, o.seed, o.threads));
    } else if (esd->parsed()) {
      const CodeEntry& e = library(o).at(resolve_codes(o).front());
      const ErrorStateDiagram d = build_esd(e.code, e.source);
      emit(o, d.dump() + "G\t" + to_string(gain_polynomial(d), 10) + "\n");
    }
  } catch (const Error& e) {
    std::cerr << "vlcsync: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
