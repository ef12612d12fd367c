#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "dixc/errors.hpp"
#include "dixc/repro.hpp"

namespace dixc {
namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string command = std::string(DIXC_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  const CliRun r = run_cli(args);
  EXPECT_EQ(r.status, 0) << args;
  return nlohmann::json::parse(r.out);
}

TEST(TableCell, ParseAndFormat) {
  EXPECT_EQ(parse_table_cell("<=4").relation, "<=");
  EXPECT_EQ(parse_table_cell("<=4").value, 4);
  EXPECT_EQ(parse_table_cell("<3/2").value, Rational(3, 2));
  EXPECT_EQ(parse_table_cell("=0").relation, "=");
  EXPECT_THROW(parse_table_cell("4"), ParseError);
  EXPECT_THROW(parse_table_cell("<x"), ParseError);
  EXPECT_EQ(format_table_cell("<", Rational(15, 2)), "<7.5");
  EXPECT_EQ(format_table_cell("<=", Rational(1, 3)), "<=1/3");
}

TEST(ReproReport, FailsIffAnyCellMismatches) {
  ReproReport r{"t", {"c"}, {{"a", "c", "<1", "<1", true}, {"b", "c", "<2", "<2", true}}};
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.failures(), 0u);
  r.cells.push_back({"c", "c", "<2", "<3", false});
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_NE(r.to_text().find("<3 (want <2)"), std::string::npos);
  EXPECT_EQ(r.to_json()["pass"], false);
  EXPECT_NE(r.to_csv().find("t,\"c\",\"c\",\"<2\",\"<3\",false"), std::string::npos);
  EXPECT_FALSE((ReproReport{"empty", {}, {}}).pass());
}

TEST(Repro, EveryTableMatches) {
  for (const auto& table : repro_tables()) {
    const ReproReport r = repro(table);
    EXPECT_TRUE(r.pass()) << r.to_text();
    EXPECT_GT(r.cells.size(), 0u);
  }
  EXPECT_EQ(repro("table1").cells.size(), 8u * 7u);
  EXPECT_THROW(repro("table9"), InvalidInput);
}

TEST(Cli, BoundExamples) {
  EXPECT_EQ(run_json("bound -p '(1|3);(2|1);(3|2)' -s cc-separate --weights 1,1,1")["value"], "15/2");
  EXPECT_EQ(run_json("bound -p '(1)' -s mais --weights 1")["value"], "1");
  EXPECT_EQ(run_json("bound -p '(1|4);(2|3,4);(3|1,2);(4|2,3)' -s polymatroid --weights 1,1,1,1")["value"], "24");
  EXPECT_EQ(run_json("bound -p '(1|4);(2|3,4);(3|1,2);(4|2,3)' -s cc-grouped --grouping preset:table3 "
                     "--decoding preset:table3 --weights 1,1,1,1")["value"],
            "24");
  EXPECT_EQ(run_json("bound -p '(1);(2|3);(3|2)' -s cc-joint --decoding rule:table2 --weights 1,1,1")["value"], "9");
  EXPECT_EQ(run_json("bound -p '(1);(2|3);(3|2)' -s cc-grouped --search-groupings --weights 1,1,1")["value"], "9");
  EXPECT_EQ(run_json("bound -p '(1);(2|3);(3|2)' --cap 2,3=1/2 --cap 1=0 -s mais --weights 1,0,0")["value"], "3");
}

TEST(Cli, RegionModeAndMetadata) {
  const auto doc = run_json("bound -p '(1);(2|3);(3|2)' -s polymatroid+custom --region");
  EXPECT_EQ(doc["direction"], "REGION");
  EXPECT_FALSE(doc.contains("value"));
  bool has_cut = false;
  for (const auto& row : doc["region"]["cons"]) has_cut = has_cut || row["origin"] == "custom:appendixB";
  EXPECT_TRUE(has_cut);

  const auto general = run_json("bound -p '(1);(2|3);(3|2)' --cap 1=2 -s polymatroid+custom --weights 1,1,1");
  ASSERT_TRUE(general.contains("notes"));
  EXPECT_FALSE(run_json("bound -p '(1);(2|3);(3|2)' -s polymatroid+custom --weights 1,1,1").contains("notes"));
}

TEST(Cli, ProblemFiles) {
  const std::string path = ::testing::TempDir() + "dixc_problem.json";
  FILE* f = std::fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  std::fputs(R"({"n": 3, "side_info": {"1": [], "2": [3], "3": [2]}, "capacities": {"1,2,3": "0"}})", f);
  std::fclose(f);
  EXPECT_EQ(run_json("bound --problem-file " + path + " -s mais --weights 1,1,1")["value"], "8");
  EXPECT_EQ(run_json("bound --problem-file " + path + " --cap 1,2,3=1 -s mais --weights 1,1,1")["value"], "10");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("bound -p '(1|' -s mais --weights 1").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1)' -s bogus --weights 1").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1)' -s mais").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1)' -s mais --weights 1,2").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1)' -s mais --weights 1 --region").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1);(2)' -s cc-grouped --weights 1,1").status, 1);
  EXPECT_EQ(run_cli("bound -p '(1|4);(2|3,4);(3|1,2);(4|2,3)' -s cc-joint --weights 1,1,1,1 --search-budget 10").status, 2);
  EXPECT_EQ(run_cli("repro table9").status, 1);
  EXPECT_EQ(run_cli("").status, 1);
  EXPECT_EQ(run_cli("repro table1 eq9").status, 0);
}

TEST(Cli, OutputIsDeterministic) {
  const CliRun a = run_cli("repro table1 eq9 --format json");
  const CliRun b = run_cli("repro table1 eq9 --format json");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto doc = nlohmann::json::parse(a.out);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["table"], "table1");
  EXPECT_EQ(doc[0]["pass"], true);
  const CliRun c = run_cli("bound -p '(1);(2|3);(3|2)' -s cc-joint --region");
  EXPECT_EQ(c.out, run_cli("bound -p '(1);(2|3);(3|2)' -s cc-joint --region").out);
  const std::string text = run_cli("repro table1").out;
  EXPECT_NE(text.find("<7.5"), std::string::npos);
  EXPECT_NE(text.find("<1.5"), std::string::npos);
}

TEST(Cli, Enumerate) {
  EXPECT_EQ(run_json("enumerate 3 --up-to-iso").size(), 16u);
  EXPECT_EQ(run_json("enumerate 3").size(), 64u);
  EXPECT_EQ(run_json("enumerate 1").size(), 1u);
  const auto two = run_json("enumerate 2 --up-to-iso --with-regions");
  ASSERT_EQ(two.size(), 3u);
  for (const auto& e : two) EXPECT_EQ(e["coincide"], true) << e["problem"];
  const auto one = run_json("enumerate 1 --with-regions");
  ASSERT_EQ(one.size(), 1u);
  bool found = false;
  for (const auto& row : one[0]["inner"]["cons"]) found = found || (row["lhs"].contains("R_1") && row["rhs"] == "1");
  EXPECT_TRUE(found);
  EXPECT_EQ(run_cli("enumerate 4 --with-regions").status, 2);
  EXPECT_EQ(run_cli("enumerate 5").status, 1);
}

}  // namespace
}  // namespace dixc
