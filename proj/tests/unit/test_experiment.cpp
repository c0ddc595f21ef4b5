#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "vlcsync/errors.hpp"
#include "vlcsync/experiment.hpp"

using namespace vlcsync;

TEST(Levenshtein, Basics) {
  const SymbolSeq s{0, 1, 2};
  EXPECT_EQ(levenshtein(s, s), 0u);
  EXPECT_EQ(levenshtein(s, SymbolSeq{0, 2}), 1u);
  EXPECT_EQ(levenshtein(SymbolSeq{}, s), 3u);
  EXPECT_EQ(levenshtein(SymbolSeq{1, 2, 3, 4}, SymbolSeq{2, 3, 4, 1}), 2u);
  EXPECT_DOUBLE_EQ(normalized_levenshtein(SymbolSeq{0, 2}, s), 1.0 / 3.0);
  EXPECT_THROW(normalized_levenshtein(s, SymbolSeq{}), Error);
}

TEST(Levenshtein, MatchesRecursiveOracle) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> len(0, 8);
  std::uniform_int_distribution<Symbol> sym(0, 3);
  for (int t = 0; t < 300; ++t) {
    SymbolSeq a(static_cast<std::size_t>(len(rng)));
    SymbolSeq b(static_cast<std::size_t>(len(rng)));
    for (auto& x : a) x = sym(rng);
    for (auto& x : b) x = sym(rng);
    EXPECT_EQ(levenshtein(a, b), oracle::levenshtein_recursive(a, 0, b, 0));
  }
}

TEST(TrellisChoice, Parse) {
  EXPECT_FALSE(TrellisChoice::parse("bs").T);
  EXPECT_FALSE(TrellisChoice::parse("bit/symbol").T);
  EXPECT_EQ(TrellisChoice::parse("12").T, std::size_t{12});
  EXPECT_EQ(TrellisChoice::parse("12").label(), "12");
  EXPECT_EQ(TrellisChoice::parse("bs").label(), "bit/symbol");
  EXPECT_TRUE(TrellisChoice::parse("bs").config(50).is_exact());
  EXPECT_THROW(TrellisChoice::parse("0"), Error);
  EXPECT_THROW(TrellisChoice::parse("3x"), Error);
}

TEST(Report, CsvAndJson) {
  Report r({"name", "n", "x"});
  r.set_meta("seed", "1");
  r.add_row({std::string("a,b"), std::int64_t{3}, 0.123456789});
  r.add_row({std::string("c"), std::int64_t{-1}, 1e-7});
  EXPECT_THROW(r.add_row({std::string("short")}), Error);
  EXPECT_EQ(r.to_csv(), "# seed: 1\nname,n,x\n\"a,b\",3,0.123457\nc,-1,1e-07\n");
  EXPECT_DOUBLE_EQ(r.number(0, "x"), 0.123456789);
  EXPECT_THROW(r.number(0, "name"), Error);
  EXPECT_THROW(r.column_index("nope"), Error);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["meta"]["seed"], "1");
  EXPECT_EQ(j["columns"].size(), 3u);
  EXPECT_EQ(j["rows"][0]["name"], "a,b");
  EXPECT_DOUBLE_EQ(j["rows"][0]["x"].get<double>(), 0.123457);
  EXPECT_EQ(j["rows"][1]["n"], -1);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::Json);
  EXPECT_THROW(parse_report_format("xml"), Error);
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(ExperimentConfig, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.trials = 0;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.eta = 0.5;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.code_ids.clear();
  EXPECT_THROW(c.validate(), Error);
}

TEST(CriteriaTable, C5Row) {
  ExperimentConfig c;
  c.code_ids = {"C5", "C19"};
  const Report r = run_criteria_table(CodeLibrary::bundled(), c);
  ASSERT_EQ(r.rows().size(), 2u);
  EXPECT_NEAR(r.number(0, "p_sync"), 0.9187, 1e-3);
  EXPECT_NEAR(r.number(0, "h_delta_s"), 0.497, 5e-3);
  EXPECT_EQ(r.number(0, "d_eta"), 3.0);
  EXPECT_NEAR(r.number(0, "mepl"), 1.71023, 1e-5);
  EXPECT_NEAR(r.number(1, "mepl"), 1.915, 1e-3);
  EXPECT_NEAR(r.number(1, "epl_stddev"), 1.192, 1e-3);
}

TEST(FerSweep, NoiselessFramesDecodeExactly) {
  ExperimentConfig c;
  c.code_ids = {"C5", "C10"};
  c.L_S = 50;
  c.ebn0_db = {std::numeric_limits<double>::infinity()};
  c.trellises = {TrellisChoice{1}, TrellisChoice{}};
  c.trials = 20;
  const Report r = run_fer_sweep(CodeLibrary::bundled(), c);
  ASSERT_EQ(r.rows().size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r.number(i, "fer"), 0.0);
    EXPECT_EQ(r.number(i, "ber"), 0.0);
    EXPECT_EQ(r.number(i, "nld"), 0.0);
  }
}

TEST(FerSweep, ReproducibleAcrossThreadCounts) {
  ExperimentConfig c;
  c.code_ids = {"C7"};
  c.L_S = 60;
  c.ebn0_db = {3.0, 5.0};
  c.trellises = {TrellisChoice{1}, TrellisChoice{3}, TrellisChoice{}};
  c.trials = 150;
  c.seed = 42;
  c.threads = 1;
  const std::string one = run_fer_sweep(CodeLibrary::bundled(), c).to_csv();
  c.threads = 4;
  const Report four = run_fer_sweep(CodeLibrary::bundled(), c);
  EXPECT_EQ(one, four.to_csv());
  for (std::size_t i = 0; i < four.rows().size(); ++i) {
    const double fer = four.number(i, "fer");
    const double ber = four.number(i, "ber");
    EXPECT_GE(fer, 0.0);
    EXPECT_LE(fer, 1.0);
    EXPECT_LE(ber, 1.0);
    EXPECT_LE(four.number(i, "nld"), 1.0);
    if (fer == 0.0) EXPECT_EQ(ber, 0.0);
    EXPECT_LE(ber, fer);
  }
  EXPECT_GT(four.number(0, "fer"), four.number(4, "fer"));
  c.seed = 43;
  EXPECT_NE(one, run_fer_sweep(CodeLibrary::bundled(), c).to_csv());
}

TEST(EntropyConvergence, Curves) {
  const auto& lib = CodeLibrary::bundled();
  const Report c13 = run_entropy_convergence(lib.at("C13"), 100, 6.0, 12);
  ASSERT_EQ(c13.rows().size(), 13u);
  EXPECT_EQ(c13.number(1, "h_mod"), 0.0);
  EXPECT_EQ(std::get<std::string>(c13.at(12, "T")), "inf");
  const double h = c13.number(12, "h_mod");
  for (std::size_t i = 0; i < 12; ++i) EXPECT_LE(c13.number(i, "h_mod"), h + 1e-12);

  const Report c10 = run_entropy_convergence(lib.at("C10"), 100, 6.0, 10);
  EXPECT_LT(c10.number(9, "h_mod"), c10.number(10, "h_mod") - 0.05);
}

TEST(CostComparison, LowNoiseCostApproachesComponentSum) {
  const auto& e = CodeLibrary::bundled().at("C7");
  const std::vector<double> snr{0.0, 12.0};
  const Report r = run_cost_comparison(e, 100, 3, 4, snr, 60, 3, 1);
  ASSERT_EQ(r.rows().size(), 2u);
  EXPECT_NEAR(r.number(0, "rho_star"), 0.416667, 1e-6);
  EXPECT_EQ(r.number(1, "rho"), 0.0);
  // With no disagreement only the T=3 and T=4 decoders run.
  EXPECT_NEAR(r.number(1, "ratio_vs_T3"), 7.0 / 12.0, 0.08);
  EXPECT_GT(r.number(0, "rho"), r.number(1, "rho"));
  EXPECT_GT(r.number(0, "ratio_measured"), r.number(1, "ratio_measured"));
  EXPECT_TRUE(r.meta().count("crossing_ebn0"));
}
