#include "cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scsamp/protocol.hpp"
#include "scsamp/serialize.hpp"

namespace scsamp::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"scsamp"};
  argv.insert(argv.end(), args);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

using Rows = std::vector<std::vector<std::string>>;

// Splits CSV text into rows of fields, header first.
Rows parse_csv(const std::string& text) {
  Rows rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "scsamp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(ParseRange, EndpointCounts) {
  const auto v = parse_range("0:1:0.1").values();
  ASSERT_EQ(v.size(), 11u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 1.0);
  EXPECT_EQ(v[1], 0.1);
  EXPECT_EQ(parse_range("-3:3:0.02").values().size(), 301u);
  EXPECT_EQ(parse_range("0.5:2:0.5").values(), (std::vector<double>{0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(parse_range("1:1:0.3").values(), std::vector<double>{1.0});
  // A step that does not divide the span stops short of stop.
  EXPECT_EQ(parse_range("0:1:0.3").values().size(), 4u);
}

TEST(ParseRange, RejectsMalformed) {
  for (const char* bad : {"1:0:0.1", "0:1:0", "0:1:-0.1", "0:1", "0:1:0.1:2", "a:1:0.1", "0:1:", "", "0:inf:1", "0:1:0.1x"}) {
    EXPECT_THROW(parse_range(bad), std::invalid_argument) << bad;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, kOk);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"sweep", "--alpha-range", "1:0:0.1"}).code, kUsage);
  EXPECT_EQ(run({"sweep", "--x-range", "0:1"}).code, kUsage);
  EXPECT_EQ(run({"sweep", "--pairing", "odd-even"}).code, kUsage);
  EXPECT_EQ(run({"success", "--loss", "0,x"}).code, kUsage);
  EXPECT_EQ(run({"success", "--alpha", "1", "--loss", "1.5"}).code, kUsage);
  EXPECT_EQ(run({"wigner", "--alpha-range", "1:2:0.5"}).code, kUsage);
  EXPECT_EQ(run({"cascade", "--alpha", "0.5", "--stages", "3", "--term-cap", "10"}).code, kNumeric);
  const Outcome bad = run({"density", "--alpha-range", "2:1:0.1"});
  EXPECT_NE(bad.err.find("start <= stop"), std::string::npos);
}

TEST(Cli, CurvesAtOrigin) {
  const Outcome r = run({"curves", "--x-range", "-1:1:0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Rows rows = parse_csv(r.out);
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"alpha", "parity", "x", "vacuum", "combination"}));
  int checked = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][2]) != 0.0) continue;
    const double a = std::stod(rows[i][0]);
    const double comb = std::stod(rows[i][4]);
    if (rows[i][1] == "odd") {
      EXPECT_EQ(comb, 0.0);
    } else {
      EXPECT_NEAR(comb, 2.0 * std::pow(std::numbers::pi, -0.25) * std::exp(-2.0 * a * a), 1e-15);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 8);  // four default amplitudes, two parities
}

TEST(Cli, SweepIsDeterministicAcrossThreadCounts) {
  const fs::path a = scratch("sweep_a.csv");
  const fs::path b = scratch("sweep_b.csv");
  const std::string pa = a.string();
  const std::string pb = b.string();
  ASSERT_EQ(run({"sweep", "--alpha-range", "0.2:1.4:0.3", "--loss", "0,0.1", "--threads", "1", "--out", pa.c_str()}).code,
            kOk);
  ASSERT_EQ(run({"sweep", "--alpha-range", "0.2:1.4:0.3", "--loss", "0,0.1", "--threads", "4", "--out", pb.c_str()}).code,
            kOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  const auto meta = nlohmann::json::parse(slurp(pa + ".meta.json"));
  EXPECT_EQ(meta.at("tool"), "scsamp");
  EXPECT_EQ(meta.at("config").at("command"), "sweep");
  EXPECT_EQ(meta.at("config").at("loss"), (std::vector<double>{0.0, 0.1}));
  EXPECT_TRUE(meta.at("tolerances").contains("quadrature_abs_tol"));
  EXPECT_EQ(meta.at("rows"), 5 * 2 * 301);
}

TEST(Cli, SweepGridProperties) {
  const Outcome odd = run({"sweep", "--pairing", "odd-odd", "--alpha-range", "0.05:0.55:0.05", "--x-range", "-0.5:0.5:0.1"});
  ASSERT_EQ(odd.code, kOk);
  const Rows o = parse_csv(odd.out);
  for (std::size_t i = 1; i < o.size(); ++i) EXPECT_LT(std::stod(o[i][4]), 0.7) << o[i][2] << " " << o[i][3];
  // The low-fidelity band ends just below alpha = 0.6.
  const Outcome edge = run({"sweep", "--pairing", "odd-odd", "--alpha", "0.6", "--x-range", "0:0:1"});
  EXPECT_NEAR(std::stod(parse_csv(edge.out)[1][4]), 0.71363604, 1e-8);

  const Outcome mixed = run({"sweep", "--x-range", "0:0:1"});
  ASSERT_EQ(mixed.code, kOk);
  const Rows m = parse_csv(mixed.out);
  EXPECT_EQ(m.size(), 1u + 121u);
  for (std::size_t i = 1; i < m.size(); ++i) EXPECT_GE(std::stod(m[i][4]), 0.999) << m[i][2];
}

TEST(Cli, DensityRowsIntegrateToOne) {
  const Outcome r = run({"density", "--pairing", "odd-odd", "--alpha", "1.3", "--x-range", "-9:9:0.02"});
  ASSERT_EQ(r.code, kOk);
  const Rows rows = parse_csv(r.out);
  double sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) sum += std::stod(rows[i][4]);
  EXPECT_NEAR(sum * 0.02, 1.0, 1e-9);
}

TEST(Cli, SuccessMatchesLibrary) {
  const Outcome r = run({"success", "--pairing", "odd-odd", "--alpha-range", "1:2:0.5"});
  ASSERT_EQ(r.code, kOk);
  const Rows rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 3u * 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const WindowStats s = max_prob_at_target({std::stod(rows[i][1]), Pairing::odd_odd, 0.0}, std::stod(rows[i][2]));
    EXPECT_EQ(std::stod(rows[i][4]), s.probability);
    EXPECT_EQ(std::stod(rows[i][5]), s.half_width);
  }
}

TEST(Cli, SuccessOppositeParityNeverVanishes) {
  const Outcome r = run({"success", "--targets", "0.99"});
  ASSERT_EQ(r.code, kOk);
  const Rows rows = parse_csv(r.out);
  EXPECT_EQ(rows.size(), 1u + 49u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(std::stod(rows[i][4]), 0.01) << rows[i][1];
}

TEST(Cli, SuccessSameParityCollapsesUnderLoss) {
  const Outcome r = run({"success", "--pairing", "odd-odd", "--alpha", "2", "--targets", "0.95", "--loss", "0,0.2"});
  ASSERT_EQ(r.code, kOk);
  const Rows rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_GT(std::stod(rows[1][4]), 0.4);
  EXPECT_LT(std::stod(rows[2][4]), 0.1 * std::stod(rows[1][4]));
}

TEST(Cli, WignerSidecarRecordsWindowStats) {
  const std::string out = scratch("wigner.csv").string();
  ASSERT_EQ(run({"wigner", "--alpha", "1.2", "--window", "1", "--x-range", "-2:2:0.5", "--p-range", "-2:2:0.5",
                 "--out", out.c_str()})
                .code,
            kOk);
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  const auto& res = meta.at("results");
  EXPECT_NEAR(res.at("probability").get<double>(), 0.43, 0.01);
  EXPECT_NEAR(res.at("fidelity").get<double>(), 0.9754, 1e-3);
  EXPECT_GT(res.at("p_axis_zero_crossings").at("output").get<int>(),
            res.at("p_axis_zero_crossings").at("input").get<int>());
  const Rows rows = parse_csv(slurp(out));
  EXPECT_EQ(rows.size(), 1u + 2u * 81u);
}

TEST(Cli, CascadeSingleStageMatchesSuccessWindow) {
  const Outcome s = run({"success", "--alpha", "1.2", "--targets", "0.97"});
  ASSERT_EQ(s.code, kOk);
  const Rows srow = parse_csv(s.out);
  const std::string window = srow[1][5];
  const Outcome c = run({"cascade", "--alpha", "1.2", "--window", window.c_str(), "--format", "csv"});
  ASSERT_EQ(c.code, kOk) << c.err;
  const Rows crow = parse_csv(c.out);
  ASSERT_EQ(crow.size(), 2u);
  EXPECT_LT(std::abs(std::stod(crow[1][3]) - std::stod(srow[1][6])), 1e-4);
  EXPECT_NEAR(std::stod(crow[1][4]), std::stod(srow[1][4]), 1e-8);
}

TEST(Cli, CascadeJsonLinesAndCheckpoints) {
  const fs::path dir = scratch("checkpoints");
  fs::remove_all(dir);
  const std::string d = dir.string();
  const Outcome r = run({"cascade", "--alpha", "0.6", "--stages", "2", "--window", "0.5", "--nodes", "11",
                     "--checkpoint-dir", d.c_str()});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream is(r.out);
  std::string line;
  int stage = 0;
  while (std::getline(is, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("stage"), ++stage);
    const auto ck = nlohmann::json::parse(slurp(dir / ("stage_" + std::to_string(stage) + ".json")));
    EXPECT_EQ(ck.at("report"), j);
    EXPECT_NEAR(trace(dyads_from_json(ck.at("state"))).real(), 1.0, 1e-12);
  }
  EXPECT_EQ(stage, 2);
}

TEST(Cli, ConfigFileWithCommandLineOverride) {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "# comment\npairing = odd-odd\nalpha = 0.5\nloss = 0,0.1\ntargets = 0.9\n";
  const std::string c = cfg.string();
  const Outcome from_file = run({"success", "--config", c.c_str()});
  ASSERT_EQ(from_file.code, kOk) << from_file.err;
  Rows rows = parse_csv(from_file.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "odd-odd");
  EXPECT_EQ(rows[1][1], "0.5");
  EXPECT_EQ(rows[2][3], "0.10000000000000001");

  const Outcome overridden = run({"success", "--config", c.c_str(), "--alpha", "2", "--loss", "0.2"});
  ASSERT_EQ(overridden.code, kOk);
  rows = parse_csv(overridden.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "2");
  EXPECT_EQ(rows[1][3], "0.20000000000000001");
}

TEST(Cli, JsonTableFormat) {
  const Outcome r = run({"density", "--alpha", "1", "--x-range", "0:1:0.5", "--format", "json"});
  ASSERT_EQ(r.code, kOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("columns").size(), 5u);
  EXPECT_EQ(j.at("rows").size(), 3u);
  EXPECT_EQ(j.at("rows")[0][0], "even-odd");
}

}  // namespace
}  // namespace scsamp::cli
