#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "oracle.hpp"
#include "topdrop/orbit.hpp"

using topdrop::parse_perm;
using topdrop::Perm;

TEST(Orbit, WorkedExample) {
  const auto members = topdrop::orbit_members(parse_perm("14235"));
  std::vector<std::string> got;
  for (const auto& m : members) got.push_back(topdrop::to_string(m));
  EXPECT_EQ(got, (std::vector<std::string>{"14235", "42351", "15324", "53241"}));

  const auto rec = topdrop::orbit(parse_perm("53241"));
  EXPECT_EQ(rec.size, 4u);
  EXPECT_EQ(topdrop::to_string(rec.representative), "14235");
  EXPECT_EQ(topdrop::to_string(rec.necklace), "[1,4,1,5]");
}

TEST(Orbit, RecordMatchesOracleExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      const auto orb = oracle::orbit(v);
      const auto rec = topdrop::orbit(Perm::from_values(v));
      ASSERT_EQ(rec.size, orb.size());
      ASSERT_EQ(rec.representative.values(), *std::min_element(orb.begin(), orb.end()));
      ASSERT_EQ(rec.necklace.entries()[0], rec.representative.first());
      const auto c = rec.necklace.canonical_entries();
      ASSERT_EQ(std::vector<int>(c.begin(), c.end()), oracle::min_rotation(oracle::firsts(orb)));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST(ReversalSymmetry, WorkedOrbit) {
  const auto out = topdrop::check_reversal_symmetry(topdrop::orbit(parse_perm("6132574")));
  ASSERT_TRUE(out.applicable);
  EXPECT_TRUE(out.passed());
  for (const char* name : {"inverse-reflects-forward", "even-size", "antipode-starts-high", "exactly-two-high"}) {
    const auto* c = out.find(name);
    ASSERT_NE(c, nullptr) << name;
    EXPECT_TRUE(c->pass) << name << ": " << c->detail;
  }
}

TEST(ReversalSymmetry, HoldsForEveryQualifyingOrbitUpToSeven) {
  for (int n = 2; n <= 7; ++n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::set<std::vector<int>> seen;
    std::size_t applicable = 0;
    do {
      if (seen.count(v)) continue;
      const auto rec = topdrop::orbit(Perm::from_values(v));
      for (const auto& m : topdrop::orbit_members(rec.representative)) seen.insert(m.values());
      const auto out = topdrop::check_reversal_symmetry(rec);
      ASSERT_EQ(out.applicable, rec.necklace.contains(n) || rec.necklace.contains(n - 1));
      if (!out.applicable) continue;
      ++applicable;
      ASSERT_TRUE(out.passed()) << topdrop::to_string(rec.representative);
    } while (std::next_permutation(v.begin(), v.end()));
    EXPECT_EQ(applicable, topdrop::factorial_u64(static_cast<std::size_t>(n - 1))) << "n=" << n;
  }
}

TEST(PrefixSuffixSymmetry, WorkedOrbit) {
  const Perm p = parse_perm("6132574");
  for (long long k = -10; k <= 10; ++k) {
    const auto out = topdrop::check_prefix_suffix_symmetry(p, k);
    EXPECT_TRUE(out.passed()) << "k=" << k;
    EXPECT_TRUE(out.find("shared-prefix")->pass);
    EXPECT_TRUE(out.find("shared-suffix")->pass);
  }
  EXPECT_TRUE(topdrop::check_prefix_suffix_symmetry_all(p).passed());
}

TEST(PrefixSuffixSymmetry, HoldsForEveryHighStartUpToSeven) {
  for (int n = 2; n <= 7; ++n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      if (v[0] < n - 1) continue;
      const auto out = topdrop::check_prefix_suffix_symmetry_all(Perm::from_values(v));
      ASSERT_TRUE(out.passed()) << topdrop::to_string(Perm::from_values(v));
    } while (std::next_permutation(v.begin(), v.end()));
  }
}

TEST(PrefixSuffixSymmetry, RejectsLowStart) {
  EXPECT_THROW(topdrop::check_prefix_suffix_symmetry(parse_perm("12345"), 1), std::invalid_argument);
  EXPECT_THROW(topdrop::check_prefix_suffix_symmetry_all(parse_perm("1")), std::invalid_argument);
}
