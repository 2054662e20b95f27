// Runs the built topdrop executable and checks its output and exit status.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Run {
  int status;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(TOPDROP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, Map) {
  EXPECT_EQ(cli("map 231 --count -1").out, "231\n123\n");
  const auto r = cli("map 6132574 --count 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "6132574\n4752316\n3162574\n2574613\n7461352\n");
  EXPECT_EQ(cli("map 321 --count 1 --labels").out, "T^0 = 321\nT^1 = 123\n");
  EXPECT_EQ(cli("map 2,1,3 --count 0").out, "213\n");
}

TEST(Cli, OrbitAndNecklace) {
  EXPECT_EQ(cli("orbit 14235").out, "size=4\n14235\n42351\n15324\n53241\n");
  const auto r = cli("necklace 14235");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "[1,4,1,5] period=1\ncanonical=[1,4,1,5]\n");
}

TEST(Cli, CensusWithVerifyAndExports) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = dir / "topdrop_cli_orbits.csv";
  const auto json = dir / "topdrop_cli_report.json";
  const auto r = cli("census 7 --verify --shards 2 --csv-orbits " + csv.string() + " --json " + json.string());
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\n5,4,2\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("total orbits=724"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(slurp(csv).rfind("Orbit Size,Number of Orbits\n2,120\n", 0), 0u);
  EXPECT_NE(slurp(json).find("\"verification\""), std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(json);

  const auto b = cli("census 5 --method bitmap");
  EXPECT_EQ(b.status, 0);
  EXPECT_NE(b.out.find("method=bitmap"), std::string::npos);
}

TEST(Cli, Families) {
  const auto r = cli("families 5 --size 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("Size4 [1,4,1,5]\nSize4 [2,4,2,5]\nSize4 [3,4,3,5]\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("necklaces=3 formula=3"), std::string::npos);
  const auto s = cli("families 8 --size 8");
  EXPECT_EQ(s.status, 0);
  EXPECT_NE(s.out.find("closed-form lower-bound="), std::string::npos);
}

TEST(Cli, Parity) {
  const auto good = cli("parity \"[2,3,11,4,10,2,5,8,2,6,7]\" 14");
  EXPECT_EQ(good.status, 0);
  EXPECT_NE(good.out.find("0+3+1+1+0+1+0+0=6 even → PASS\nVALID-PARITY\n"), std::string::npos) << good.out;
  const auto bad = cli("parity \"[4,3,11,4,10,2,5,8,2,6,7]\" 14");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("0+2+1+1+0+1+0+0=5 odd → FAIL\nINVALID-PARITY\n"), std::string::npos) << bad.out;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("map").status, 2);
  EXPECT_EQ(cli("map 1223").status, 2);
  EXPECT_EQ(cli("map 123 --count x").status, 2);
  EXPECT_EQ(cli("census 21").status, 2);
  EXPECT_EQ(cli("census 5 --method fast").status, 2);
  EXPECT_EQ(cli("census 13 --method bitmap").status, 2);
  EXPECT_EQ(cli("families 6 --size 7").status, 2);
  EXPECT_EQ(cli("parity \"[1,x]\" 5").status, 2);
  EXPECT_EQ(cli("parity \"[1,9]\" 5").status, 2);
  EXPECT_EQ(cli("bogus").status, 2);
  EXPECT_EQ(cli("--help").status, 0);
}

// The executable only parses, delegates and prints.
TEST(Cli, HoldsNoDynamicsLogic) {
  const std::string src = slurp(TOPDROP_CLI_SOURCE);
  ASSERT_FALSE(src.empty());
  for (const char* forbidden : {"topdrop_in_place", "rank_raw", "unrank_raw", "SigmaPerm", "factorial",
                                "next_permutation", "canonical_rotation"})
    EXPECT_EQ(src.find(forbidden), std::string::npos) << forbidden;
}
