#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "pathsum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pathsum::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("pathsum_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, FormatReal) {
  EXPECT_EQ(pathsum::cli::format_real(0.7071067811865476), "0.7071067811865476");
  EXPECT_EQ(pathsum::cli::format_real(0.0), "0.0");
  EXPECT_EQ(pathsum::cli::format_real(-1.0), "-1.0");
  EXPECT_EQ(pathsum::cli::format_real(1e-20), "1e-20");
}

TEST(Cli, SimulateSingleHadamard) {
  const auto dir = scratch("h");
  write(dir / "h.circ", "qubits 1\nh 0\n");
  for (const char* method : {"pathsum", "statevector"}) {
    const auto r = run({"simulate", "--circuit", (dir / "h.circ").string(), "--start", "0",
                        "--end", "0", "--method", method});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "0.7071067811865476 0.0\n");
  }
}

TEST(Cli, SimulateStats) {
  const auto dir = scratch("stats");
  write(dir / "h.circ", "qubits 1\nh 0\n");
  const auto r = run({"simulate", "--circuit", (dir / "h.circ").string(), "--start", "0", "--end",
                      "1", "--stats", "--no-prune"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recursion_calls 2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("edges_traversed 2\n"), std::string::npos);
  EXPECT_NE(r.out.find("prunes 0\n"), std::string::npos);
}

TEST(Cli, GenerateThenSimulateBothMethodsAgree) {
  const auto dir = scratch("hsp");
  const auto path = (dir / "hsp6.circ").string();
  auto g = run({"generate", "--family", "hsp", "--n", "6", "--seed", "1", "--out", path});
  ASSERT_EQ(g.code, 0) << g.err;
  std::vector<double> re, im;
  for (const char* method : {"pathsum", "statevector"}) {
    const auto r = run({"simulate", "--circuit", path, "--start", "000000", "--end", "000000",
                        "--method", method});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    double a = 0, b = 0;
    in >> a >> b;
    re.push_back(a);
    im.push_back(b);
  }
  EXPECT_NEAR(re[0], re[1], 1e-9);
  EXPECT_NEAR(im[0], im[1], 1e-9);
}

TEST(Cli, GenerateToStdoutMatchesLibrary) {
  const auto r = run({"generate", "--family", "h-layer", "--n", "4", "--seed", "1", "--out", "-"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, pathsum::serialize_circuit(pathsum::gen_layered_hadamard(4, 1)));
}

TEST(Cli, LengthMismatchIsUsageError) {
  const auto dir = scratch("mismatch");
  write(dir / "two.circ", "qubits 2\ncx 0 1\n");
  const auto r = run({"simulate", "--circuit", (dir / "two.circ").string(), "--start", "01",
                      "--end", "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("length"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"simulate", "--bogus"}).code, 1);
  EXPECT_EQ(run({"generate", "--family", "nope", "--n", "5", "--out", "-"}).code, 1);
  EXPECT_EQ(run({"generate", "--family", "hsp", "--n", "4", "--out", "-"}).code, 1);
  EXPECT_EQ(run({"generate", "--family", "h-layer", "--n", "5", "--a-size", "3", "--out", "-"}).code, 1);
  EXPECT_EQ(run({"bench", "--family", "hsp", "--n-min", "3", "--n-max", "5", "--csv", "x.csv"}).code, 1);
  EXPECT_EQ(run({"bench", "--family", "hsp,bogus", "--n-min", "5", "--n-max", "5", "--csv", "x.csv"}).code, 1);
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
}

TEST(Cli, RuntimeFailures) {
  const auto dir = scratch("runtime");
  EXPECT_EQ(run({"simulate", "--circuit", (dir / "missing.circ").string(), "--start", "0", "--end", "0"}).code, 2);
  write(dir / "bad.circ", "qubits 2\ncx 0 0\n");
  const auto bad = run({"simulate", "--circuit", (dir / "bad.circ").string(), "--start", "00", "--end", "00"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("duplicate operand, line 2"), std::string::npos) << bad.err;
  write(dir / "big.circ", "qubits 30\nh 0\n");
  const std::string zeros(30, '0');
  const auto big = run({"simulate", "--circuit", (dir / "big.circ").string(), "--start", zeros,
                        "--end", zeros, "--method", "statevector"});
  EXPECT_EQ(big.code, 2);
  EXPECT_NE(big.err.find("GiB"), std::string::npos);
}

TEST(Cli, BenchWritesCsvMetadataAndPlots) {
  const auto dir = scratch("bench");
  const auto csv = (dir / "out.csv").string();
  const auto r = run({"bench", "--family", "h-layer,hsp", "--n-min", "5", "--n-max", "6", "--seed",
                      "3", "--trials", "2", "--cap", "60", "--methods", "pathsum,statevector",
                      "--csv", csv, "--plots", (dir / "plots").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  int rows = 0;
  for (std::string l; std::getline(in, l);) ++rows;
  EXPECT_EQ(rows, 1 + 2 * 2 * 2 * 2);
  EXPECT_TRUE(fs::exists(csv + ".meta"));
  for (const char* f : {"h-layer_time_pathsum.dat", "h-layer_space_statevector.dat",
                        "hsp_time_statevector.dat", "hsp_space_pathsum.dat"})
    EXPECT_TRUE(fs::exists(dir / "plots" / f)) << f;
}
