#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ionqaoa/cli.hpp"
#include "ionqaoa/csv.hpp"
#include "test_util.hpp"

using namespace ionqaoa;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, BoundsReportsSampleSizes) {
  const auto r = invoke({"bounds", "--eps", "0.05", "--delta", "0.05", "--m", "1000"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 1u);
  const auto col = [&](const std::string& name) {
    const auto it = std::find(t.schema.begin(), t.schema.end(), name);
    return t.rows[0][static_cast<std::size_t>(it - t.schema.begin())];
  };
  EXPECT_EQ(col("hoeffding_m"), "738");
  EXPECT_EQ(col("clt_n"), "1537");
  EXPECT_NE(r.err.find("hoeffding_m=738"), std::string::npos);
}

TEST(Cli, ToffoliVerifyPasses) {
  for (const char* k : {"2", "3", "5"}) {
    const auto r = invoke({"toffoli-verify", "--k", k});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  }
  EXPECT_EQ(invoke({"toffoli-verify", "--k", "4", "--levels", "1"}).code, cli::kExitOk);
}

TEST(Cli, UsageErrors) {
  const auto bad_flag = invoke({"bounds", "--bogus", "1"});
  EXPECT_EQ(bad_flag.code, cli::kExitUsage);
  EXPECT_NE(bad_flag.err.find("error: category=usage"), std::string::npos);
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"train", "--n", "6"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"toffoli-verify", "--k", "9"}).code, cli::kExitUsage);
}

TEST(Cli, DomainErrorsReportCategory) {
  const auto r = invoke({"spectrum", "--n", "3", "--mask", "99"});
  EXPECT_NE(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("error: category=domain"), std::string::npos) << r.err;
}

TEST(Cli, ConfigFile) {
  const auto good = temp_file("ionqaoa_cli_good.cfg", "# shots setup\nseed=3\nm=50\nreplicas=2\n");
  const auto via_file = invoke({"--config-file", good.string(), "shots"});
  const auto via_flags = invoke({"shots", "--seed", "3", "--m", "50", "--replicas", "2"});
  ASSERT_EQ(via_file.code, cli::kExitOk) << via_file.err;
  EXPECT_EQ(via_file.out, via_flags.out);

  // Command-line flags win over the file.
  const auto override = invoke({"--config-file", good.string(), "shots", "--m", "60"});
  EXPECT_NE(override.out.find(",60,"), std::string::npos);

  const auto bad = temp_file("ionqaoa_cli_bad.cfg", "bogus=1\n");
  EXPECT_EQ(invoke({"--config-file", bad.string(), "shots"}).code, cli::kExitUsage);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST(Cli, ParseConfig) {
  const auto m = cli::parse_config("a=1\n  # note\n\nb = two\n");
  EXPECT_EQ(m.at("a"), "1");
  EXPECT_EQ(m.at("b"), "two");
  EXPECT_EQ(testutil::kind_of([] { cli::parse_config("a=1\na=2\n"); }), ErrorKind::kParse);
  EXPECT_EQ(testutil::kind_of([] { cli::parse_config("novalue\n"); }), ErrorKind::kParse);
  EXPECT_EQ(testutil::kind_of([] { cli::parse_config("=3\n"); }), ErrorKind::kParse);
}

TEST(Cli, SeededRunsAreByteIdentical) {
  const std::vector<std::string> args{"shots", "--m", "500", "--replicas", "5", "--eps01", "0.05",
                                      "--eps10", "0.1", "--h", "0.3", "--seed", "17"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "18";
  EXPECT_NE(invoke(other).out, a.out);

  const std::vector<std::string> vqe{"vqe1q", "--shots", "32", "--runs", "2", "--seed", "4"};
  EXPECT_EQ(invoke(vqe).out, invoke(vqe).out);
}

TEST(Cli, ClassifyWritesCsvFile) {
  const auto path = std::filesystem::temp_directory_path() / "ionqaoa_cli_classify.csv";
  const auto r = invoke({"classify", "--n", "6", "--all", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("easy=10808 easy_fraction=0.329833984375"), std::string::npos) << r.out;
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const auto t = csv::parse(ss.str());
  EXPECT_EQ(t.rows.size(), 32768u);
  EXPECT_EQ(t.schema.front(), "mask");
  std::size_t easy = 0;
  for (const auto& row : t.rows)
    for (const auto& cell : row) easy += cell == "easy_symmetric";
  EXPECT_EQ(easy, 10808u);
  std::filesystem::remove(path);
}

TEST(Cli, CsvRoundTrip) {
  const auto r = invoke({"couplings", "--n", "4", "--amplitudes", "1,-0.5,0.8,0.3", "--alpha", "1.2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto t = csv::parse(r.out);
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_NEAR(csv::to_real(t.rows[0][1]), -2.0, 1e-15);
  EXPECT_NEAR(csv::to_real(t.rows[0][3]), 0.3210966247040923, 1e-15);
  EXPECT_EQ(csv::format_real(csv::to_real(t.rows[0][3])), t.rows[0][3]);
}

TEST(Cli, TrainWithDatabase) {
  const auto db = std::filesystem::temp_directory_path() / "ionqaoa_cli_db.txt";
  std::filesystem::remove(db);
  const std::vector<std::string> args{"train", "--n", "5", "--mask", "3", "--pmax", "3",
                                      "--seeds", "2", "--repeats", "1", "--db", db.string()};
  const auto first = invoke(args);
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  EXPECT_NE(first.err.find("cache_hit=0"), std::string::npos);
  const auto second = invoke(args);
  EXPECT_NE(second.err.find("cache_hit=1"), std::string::npos) << second.err;

  std::ofstream(db) << "not a db line\n";
  const auto corrupt = invoke(args);
  EXPECT_NE(corrupt.code, cli::kExitOk);
  EXPECT_NE(corrupt.err.find("category=parse"), std::string::npos);
  std::filesystem::remove(db);
}

TEST(Cli, Version) {
  EXPECT_EQ(cli::version_string().rfind("ionqaoa ", 0), 0u);
  const auto r = invoke({"--version"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("ionqaoa"), std::string::npos);
}
