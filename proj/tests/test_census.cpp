#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "topdrop/report_json.hpp"
#include "topdrop/topdrop.hpp"

using topdrop::BigInt;
using topdrop::CensusMethod;
using topdrop::CensusOptions;

namespace {

topdrop::CensusResult run(std::size_t n, CensusMethod m, unsigned shards = 1) {
  CensusOptions opt;
  opt.method = m;
  opt.shards = shards;
  return topdrop::census(n, opt);
}

std::set<oracle::Seq> as_set(const topdrop::NecklaceSet& s) {
  std::set<oracle::Seq> out;
  s.for_each([&](std::span<const topdrop::Entry> e) { out.insert(oracle::Seq(e.begin(), e.end())); });
  return out;
}

}  // namespace

TEST(Census, SmallTables) {
  const auto r3 = run(3, CensusMethod::MinRank).report;
  EXPECT_EQ(topdrop::csv_string(r3, topdrop::CsvKind::Orbits), "Orbit Size,Number of Orbits\n2,1\n4,1\n");
  EXPECT_EQ(topdrop::csv_string(r3, topdrop::CsvKind::Necklaces), "Orbit Size,Number of Necklaces\n2,1\n4,1\n");
  const auto r2 = run(2, CensusMethod::MinRank).report;
  EXPECT_EQ(topdrop::csv_string(r2, topdrop::CsvKind::Orbits), "Orbit Size,Number of Orbits\n2,1\n");
  const auto r1 = run(1, CensusMethod::MinRank).report;
  EXPECT_EQ(r1.orbits_of_size(1), 1);
  const auto r5 = run(5, CensusMethod::MinRank).report;
  EXPECT_EQ(topdrop::csv_string(r5, topdrop::CsvKind::Necklaces),
            "Orbit Size,Number of Necklaces\n2,1\n4,3\n6,6\n8,2\n10,2\n");
  EXPECT_EQ(run(7, CensusMethod::MinRank).report.total_orbits, 724);
  EXPECT_EQ(run(8, CensusMethod::MinRank).report.total_orbits, 5058);
}

TEST(Census, MatchesBruteForce) {
  for (int n = 1; n <= 8; ++n) {
    const auto want = oracle::census(n);
    const auto got = run(static_cast<std::size_t>(n), CensusMethod::MinRank);
    std::map<std::size_t, BigInt> orbits;
    for (const auto& [k, c] : got.report.per_size) orbits[k] = c.orbits;
    std::map<std::size_t, BigInt> expected;
    for (const auto& [k, c] : want.orbits_by_size) expected[k] = c;
    EXPECT_EQ(orbits, expected) << "n=" << n;
    EXPECT_EQ(as_set(got.necklaces), want.necklaces) << "n=" << n;
  }
}

TEST(Census, MethodsAndShardingAgree) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto a = run(n, CensusMethod::MinRank);
    const auto b = run(n, CensusMethod::Bitmap);
    const auto c = run(n, CensusMethod::NecklaceSet);
    const auto d = run(n, CensusMethod::MinRank, 4);
    EXPECT_TRUE(a.report.same_counts(b.report)) << n;
    EXPECT_TRUE(a.report.same_counts(c.report)) << n;
    EXPECT_TRUE(a.report.same_counts(d.report)) << n;
    EXPECT_EQ(topdrop::csv_string(a.report, topdrop::CsvKind::Orbits),
              topdrop::csv_string(c.report, topdrop::CsvKind::Orbits));
    EXPECT_EQ(as_set(a.necklaces), as_set(b.necklaces));
    EXPECT_EQ(as_set(a.necklaces), as_set(d.necklaces));
  }
}

TEST(Census, VerificationPassesAndCatchesTampering) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto res = run(n, CensusMethod::MinRank);
    const auto v = topdrop::verify_report(res.report, res.necklaces);
    for (const auto& e : v.entries) EXPECT_TRUE(e.pass) << "n=" << n << ' ' << e.check << ": " << e.detail;
  }
  auto res = run(6, CensusMethod::MinRank);
  res.report.per_size[2].orbits += 1;
  const auto v = topdrop::verify_report(res.report, res.necklaces);
  EXPECT_FALSE(v.all_passed());
  bool flagged = false;
  for (const auto& e : v.entries)
    if (e.check == "exact-count-size-2") flagged = !e.pass;
  EXPECT_TRUE(flagged);
}

TEST(Census, NecklacesOfSizeMatchFullCensus) {
  const auto full = run(8, CensusMethod::MinRank);
  for (std::size_t k : {2, 4, 6, 8}) {
    const auto part = topdrop::necklaces_of_size(8, k);
    EXPECT_EQ(part.size(), full.necklaces.count_of_length(k)) << k;
    EXPECT_EQ(part.sorted(k), full.necklaces.sorted(k)) << k;
  }
  const auto upto = topdrop::necklaces_up_to_size(8, 8, 3);
  for (std::size_t k = 1; k <= 8; ++k) EXPECT_EQ(upto.sorted(k), full.necklaces.sorted(k)) << k;
  EXPECT_TRUE(upto.sorted(10).empty());
}

TEST(Census, Limits) {
  EXPECT_THROW(topdrop::census(0), std::out_of_range);
  EXPECT_THROW(topdrop::census(21), std::out_of_range);
  CensusOptions opt;
  opt.method = CensusMethod::Bitmap;
  EXPECT_THROW(topdrop::census(13, opt), std::out_of_range);
  EXPECT_EQ(topdrop::parse_method("necklace-set"), CensusMethod::NecklaceSet);
  EXPECT_EQ(topdrop::method_name(CensusMethod::Bitmap), "bitmap");
  EXPECT_THROW(topdrop::parse_method("fast"), std::invalid_argument);
}

TEST(Census, ProgressGoesToTheGivenStream) {
  std::ostringstream os;
  CensusOptions opt;
  opt.progress = &os;
  opt.progress_interval = std::chrono::milliseconds(1);
  const auto res = topdrop::census(9, opt);
  EXPECT_EQ(res.report.total_orbits, 40416);
}

TEST(Export, CsvFileAndJson) {
  const auto res = run(4, CensusMethod::MinRank);
  const auto path = std::filesystem::temp_directory_path() / "topdrop_census_4.csv";
  topdrop::export_csv(res.report, topdrop::CsvKind::Orbits, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), "Orbit Size,Number of Orbits\n2,2\n4,2\n6,2\n");
  std::filesystem::remove(path);

  const auto v = topdrop::verify_report(res.report, res.necklaces);
  const auto j = topdrop::report_json(res.report, &v);
  EXPECT_EQ(j["n"], 4);
  EXPECT_EQ(j["method"], "minrank");
  EXPECT_EQ(j["per_size"].size(), 3u);
  EXPECT_EQ(j["per_size"][2]["size"], 6);
  EXPECT_EQ(j["per_size"][2]["orbits"], 2);
  EXPECT_EQ(j["totals"]["orbits"], 6);
  EXPECT_EQ(j["verification"].size(), v.entries.size());
  EXPECT_THROW(topdrop::export_csv(res.report, topdrop::CsvKind::Orbits, "/nonexistent/dir/x.csv"),
               std::runtime_error);
}
