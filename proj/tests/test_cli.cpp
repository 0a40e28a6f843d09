#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace pfister {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
  args.insert(args.begin(), "pfister_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, hooks);
  return {code, out.str(), err.str()};
}

TEST(Cli, ConstructTheta) {
  const CliResult r = invoke({"construct", "--n", "2", "--emit", "theta", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["coeffs"].size(), 4u);
  EXPECT_EQ(j["coeffs"]["0"], "X1");
  EXPECT_EQ(j["coeffs"]["1"], "X2");
  EXPECT_EQ(j["coeffs"]["2"], "X1");
  EXPECT_EQ(j["coeffs"]["3"], "X2");
}

TEST(Cli, ConstructMatrixLatex) {
  const CliResult r = invoke({"construct", "--n", "1", "--emit", "matrix", "--format", "latex"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\\begin{pmatrix}"), std::string::npos);
  EXPECT_NE(r.out.find("X_{1} & -a_{1}X_{2}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("X_{2} & X_{1}"), std::string::npos) << r.out;
}

TEST(Cli, ConstructPsiHat) {
  const CliResult r = invoke({"construct", "--n", "2", "--emit", "psi-hat", "--level", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "X5^2 + a1*X6^2 + a2*X7^2 + a1*a2*X8^2\n");
  const CliResult psi = invoke({"construct", "--n", "2", "--emit", "psi", "--level", "1"});
  EXPECT_EQ(psi.out, "X1^2 + a1*X2^2\n");
}

TEST(Cli, ConstructFormAndBasis) {
  const CliResult f = invoke({"construct", "--n", "2", "--emit", "form", "--format", "json"});
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(nlohmann::json::parse(f.out), nlohmann::json::parse(R"(["1","a1","a2","a1*a2"])"));
  const CliResult b = invoke({"construct", "--n", "2", "--emit", "basis", "--format", "json"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto j = nlohmann::json::parse(b.out);
  EXPECT_EQ(j["elements"].size(), 4u);
  EXPECT_EQ(j["omega"].size(), 4u);
}

TEST(Cli, MatrixJson) {
  const CliResult r = invoke({"matrix", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dimension"], 4);
  EXPECT_EQ(j["entries"].size(), 4u);
  EXPECT_EQ(j["entries"][0][0], "X1");
}

TEST(Cli, VerifyPassesAndReportsSchema) {
  const CliResult r = invoke({"verify", "--n", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("identities"));
  ASSERT_TRUE(j.contains("timings_ms"));
  ASSERT_TRUE(j.contains("notes"));
  EXPECT_TRUE(j["timings_ms"].is_null());
  for (const auto& id : j["identities"]) {
    EXPECT_TRUE(id.contains("name"));
    EXPECT_TRUE(id.contains("paper_ref"));
    EXPECT_EQ(id["verdict"], "pass") << id.dump();
  }
}

TEST(Cli, VerifyModularReportsBound) {
  const CliResult r = invoke({"verify", "--n", "4", "--mode", "modular", "--samples", "3", "--seed", "42", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.contains("sz_bound"));
  EXPECT_NE(j["sz_bound"].get<std::string>().find("e-"), std::string::npos);
}

TEST(Cli, PaperCheck) {
  const CliResult r = invoke({"paper-check"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("16/16 entries match"), std::string::npos);
  EXPECT_NE(r.out.find("-aX2 read as -a1X2"), std::string::npos);
  EXPECT_NE(r.out.find("psi1 read as psi2"), std::string::npos);
  const CliResult j = invoke({"paper-check", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["matched"], "16/16");
  EXPECT_EQ(parsed["entries"].size(), 16u);
}

TEST(Cli, InjectedFaultExitsOne) {
  const cli::Hooks hooks{MatrixFault{1, 2, 1}};
  const CliResult pc = invoke({"paper-check"}, hooks);
  EXPECT_EQ(pc.code, 1);
  EXPECT_NE(pc.out.find("MISMATCH"), std::string::npos);
  const CliResult v = invoke({"verify", "--n", "2"}, hooks);
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("T(2,3)"), std::string::npos) << v.out;
  const CliResult m = invoke({"verify", "--n", "4", "--samples", "2"}, cli::Hooks{MatrixFault{0, 0, 1}});
  EXPECT_EQ(m.code, 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"verify", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--n", "7"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--n", "4", "--mode", "symbolic"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--n", "2", "--mode", "modular", "--prime", "1000"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--n", "2", "--mode", "modular", "--prime", "2147483649"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--n", "2", "--mode", "modular", "--samples", "0"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--n", "2", "--emit", "nothing"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--n", "2", "--emit", "theta", "--level", "3"}).code, 2);
  EXPECT_EQ(invoke({"construct", "--n", "2", "--format", "yaml"}).code, 2);
  EXPECT_EQ(invoke({"matrix", "--n", "4"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  const CliResult bad = invoke({"verify"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> modular{"verify", "--n", "3", "--mode", "modular", "--samples", "4", "--seed", "7",
                                         "--format", "json"};
  EXPECT_EQ(invoke(modular).out, invoke(modular).out);
  const std::vector<std::string> symbolic{"verify", "--n", "2"};
  EXPECT_EQ(invoke(symbolic).out, invoke(symbolic).out);
  auto other = modular;
  other[8] = "8";
  EXPECT_EQ(invoke(other).code, 0);
  EXPECT_EQ(invoke({"paper-check", "--format", "json"}).out, invoke({"paper-check", "--format", "json"}).out);
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "pfister_cli_test_matrix.txt";
  std::filesystem::remove(path);
  const CliResult r = invoke({"matrix", "--n", "1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), invoke({"matrix", "--n", "1"}).out);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace pfister
