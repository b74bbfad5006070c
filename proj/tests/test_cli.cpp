#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "leetor/cli.hpp"
#include "test_support.hpp"

using namespace leetor;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "leetor");
  std::ostringstream out, err;
  const cli::Environment env{out, err, testing_support::read_file(testing_support::data_path("knots.jsonl"))};
  CliResult r;
  r.code = cli::run(args, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Json run_json(std::vector<std::string> args) {
  const CliResult r = run_cli(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("leetor_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Cli, ComputeTrefoil) {
  const Json j = run_json({"compute", "--name", "3_1", "--json"});
  EXPECT_EQ(j["s"], 2);
  EXPECT_EQ(j["u_X"], 1);
  EXPECT_EQ(j["u_t"], 1);
  EXPECT_EQ(j["collapse_page"], 2);
  EXPECT_EQ(j["knight_move"]["holds"], true);
  EXPECT_EQ(j["unknotting_number"], 1);
  EXPECT_EQ(j["lee_torsion"], Json::parse("[[3,9,1]]"));
}

TEST(Cli, ComputeByPd) {
  const Json j = run_json({"compute", "--pd", testing_support::kLeftTrefoil, "--json"});
  EXPECT_EQ(j["s"], -2);
  EXPECT_FALSE(j.contains("unknotting_number"));
}

TEST(Cli, ComputeUnknot) {
  const Json j = run_json({"compute", "--unknot", "--json"});
  EXPECT_EQ(j["s"], 0);
  EXPECT_EQ(j["u_X"], 0);
  EXPECT_EQ(j["collapse_page"], 1);
  EXPECT_EQ(j["pd"], "");
}

TEST(Cli, ComputeTextOutput) {
  const CliResult r = run_cli({"compute", "--name", "4_1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s = 0"), std::string::npos);
  EXPECT_NE(r.out.find("knight move: holds"), std::string::npos);
}

TEST(Cli, ComputeTheoryAndPages) {
  const Json kh = run_json({"compute", "--name", "3_1", "--json", "--theory", "kh"});
  EXPECT_TRUE(kh.contains("kh"));
  const Json lee = run_json({"compute", "--name", "3_1", "--json", "--theory", "lee", "--pages", "3"});
  EXPECT_TRUE(lee.contains("lee_torsion"));
  EXPECT_TRUE(lee.contains("pages"));
}

TEST(Cli, ComputeRandomIsDeterministic) {
  const CliResult a = run_cli({"compute", "--random", "--seed", "5", "--crossings", "6", "--json"});
  const CliResult b = run_cli({"compute", "--random", "--seed", "5", "--crossings", "6", "--json"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"compute", "--pd", testing_support::kHopf}).code, 4);
  EXPECT_EQ(run_cli({"compute", "--pd", "X[1,2,3"}).code, 2);
  EXPECT_EQ(run_cli({"compute", "--name", "no_such_knot"}).code, 2);
  EXPECT_EQ(run_cli({"compute", "--name", "8_19", "--max-crossings", "4"}).code, 3);
  EXPECT_EQ(run_cli({"compute", "--name", "3_1", "--unknot"}).code, 2);
  EXPECT_EQ(run_cli({"compute", "--name", "3_1", "--corrupt-signs"}).code, 5);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"table", testing_support::fixture_path("missing.jsonl")}).code, 1);
}

TEST(Cli, VersionFlag) {
  const CliResult r = run_cli({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("leetor 0.1.0"), std::string::npos);
}

TEST(Cli, BundledTable) {
  const Json j = run_json({"table", "--json", "--jobs", "4"});
  EXPECT_EQ(j["summary"]["ok"], j["summary"]["entries"]);
  EXPECT_EQ(j["entries"][0]["name"], "0_1");
}

TEST(Cli, TableJobsDoNotChangeOutput) {
  const CliResult a = run_cli({"table", "--jobs", "1", "--max-crossings", "6"});
  const CliResult b = run_cli({"table", "--jobs", "8", "--max-crossings", "6"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TableMismatchExitsFive) {
  const CliResult r = run_cli({"table", testing_support::fixture_path("bad_expected_s.jsonl"), "--json"});
  EXPECT_EQ(r.code, 5);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["summary"]["mismatches"], 1);
  EXPECT_EQ(j["summary"]["ok"], 1);
  EXPECT_EQ(j["entries"][0]["status"], "mismatch");
}

TEST(Cli, EmptyTable) {
  const CliResult r = run_cli({"table", testing_support::fixture_path("empty.jsonl")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 entries"), std::string::npos);
}

TEST(Cli, TableWithLinkAndBrokenRows) {
  const CliResult link = run_cli({"table", testing_support::fixture_path("hopf_link.jsonl"), "--json"});
  EXPECT_EQ(link.code, 1);
  EXPECT_EQ(Json::parse(link.out)["entries"][0]["status"], "error");
  const CliResult mixed = run_cli({"table", testing_support::fixture_path("mixed.jsonl"), "--json"});
  EXPECT_EQ(mixed.code, 1);
  const Json j = Json::parse(mixed.out);
  EXPECT_EQ(j["summary"]["entries"], 2);
  EXPECT_EQ(j["summary"]["ok"], 1);
  EXPECT_EQ(j["summary"]["errors"], 1);
}

TEST(Cli, Verify) {
  const CliResult ok = run_cli({"verify", "--name", "3_1", "--crossing", "2"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  const Json j = run_json({"verify", "--name", "0_1_twist", "--json"});
  EXPECT_TRUE(j.dump().find("\"passed\":false") == std::string::npos);
  const CliResult bad = run_cli({"verify", "--name", "3_1", "--corrupt-signs", "--crossing", "1"});
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.out.find("d_squared"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--name", "3_1", "--crossing", "9"}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--unknot"}).code, 0);
}

TEST(Cli, Pages) {
  const CliResult r = run_cli({"pages", "--name", "4_1", "--pages", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("collapse page 2"), std::string::npos);
  EXPECT_NE(r.out.find("E_3: (0,-1) (0,1)"), std::string::npos);
}

TEST(Cli, CacheHitIsByteIdentical) {
  const auto dir = scratch_dir("cache");
  const CliResult a = run_cli({"compute", "--name", "5_2", "--json", "--cache-dir", dir.string()});
  ASSERT_EQ(a.code, 0);
  ASSERT_TRUE(std::filesystem::exists(dir));
  const auto files = std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator());
  EXPECT_EQ(files, 1);
  const CliResult b = run_cli({"compute", "--name", "5_2", "--json", "--cache-dir", dir.string()});
  EXPECT_EQ(a.out, b.out);
  const CliResult c = run_cli({"compute", "--name", "5_2", "--json"});
  EXPECT_EQ(a.out, c.out);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheKeySeparatesInputs) {
  EXPECT_NE(ReportCache::key("X[1,1,2,2]", "compute"), ReportCache::key("X[1,1,2,2]", "pages"));
  EXPECT_NE(ReportCache::key("X[1,1,2,2]", "compute"), ReportCache::key("X[1,2,2,1]", "compute"));
  EXPECT_EQ(ReportCache::key("a", "b").size(), 64u);
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Cli, TableLoaderErrors) {
  EXPECT_THROW(parse_table_line("not json"), Error);
  EXPECT_THROW(parse_table_line("{\"pd\":\"X[1,1,2,2]\"}"), Error);
  const auto t = load_table_text("\n# c\n{\"name\":\"a\",\"pd\":\"\"}\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(entry_diagram(t[0]).crossing_count(), 0);
}
