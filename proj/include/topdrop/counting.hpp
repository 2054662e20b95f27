#pragma once

// Orbit counts from necklaces, closed forms for small orbit sizes, the
// parametrised necklace families behind them, and witness permutations.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topdrop/necklace.hpp"
#include "topdrop/orbit.hpp"
#include "topdrop/parity.hpp"
#include "topdrop/perm.hpp"

namespace topdrop {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

class NonIntegralCount : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class WitnessMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountResult {
  enum class Kind { Exact, LowerBound };
  Kind kind;
  BigInt value;
  friend bool operator==(const CountResult&, const CountResult&) = default;
};

inline const char* to_string(CountResult::Kind k) {
  return k == CountResult::Kind::Exact ? "exact" : "lower-bound";
}

// ---------------------------------------------------------------------------
// Counting from necklaces

/// (n - #distinct values)! / period for a realisable necklace.
inline BigInt orbits_for_necklace(const Necklace& nk, std::size_t n) {
  const std::size_t distinct = nk.distinct_values();
  if (distinct > n) throw NonIntegralCount("necklace has more distinct values than n");
  const BigInt f = factorial(n - distinct);
  if (f % nk.period() != 0)
    throw NonIntegralCount("period " + std::to_string(nk.period()) + " does not divide (" +
                           std::to_string(n) + "-" + std::to_string(distinct) + ")! for " +
                           to_string(nk));
  return f / nk.period();
}

/// Sum of orbits_for_necklace over the necklaces of length k.
template <typename Range>
BigInt count_orbits_of_size(const Range& valid_necklaces, std::size_t k, std::size_t n) {
  BigInt total = 0;
  for (const Necklace& nk : valid_necklaces)
    if (nk.length() == k) total += orbits_for_necklace(nk, n);
  return total;
}

// ---------------------------------------------------------------------------
// Closed forms

namespace detail {

inline BigInt poly(std::initializer_list<long long> coeffs_high_first, long long n) {
  BigInt acc = 0;
  for (long long c : coeffs_high_first) acc = acc * n + c;
  return acc;
}

// Twice the size-8 cubic, selected by n mod 6.
inline BigInt size8_cubic_doubled(long long n) {
  switch (n % 6) {
    case 0:
    case 2: return poly({3, -35, 128, -140}, n);
    case 1: return poly({3, -35, 137, -181}, n);
    case 4: return poly({3, -35, 132, -160}, n);
    default: return poly({3, -35, 135, -171}, n);  // 3 or 5
  }
}

}  // namespace detail

/// Known orbit counts by size. nullopt where nothing is known.
///   k = 2, 4:  (n-2)!        k = 3: 0
///   k = 5:     (n-6)(n-5)! for even n, (n-5)(n-5)! for odd n, n >= 7;
///              0 below 7, where no size-5 necklace exists
///   k = 6, 8:  lower bounds for n >= 4 and n >= 5
inline std::optional<CountResult> closed_form(std::size_t n_, std::size_t k) {
  using K = CountResult::Kind;
  const long long n = static_cast<long long>(n_);
  if (n < 1) return std::nullopt;
  switch (k) {
    case 2:
      return CountResult{K::Exact, n >= 2 ? factorial(n_ - 2) : BigInt(0)};
    case 3:
      return CountResult{K::Exact, 0};
    case 4:
      return CountResult{K::Exact, n >= 3 ? factorial(n_ - 2) : BigInt(0)};
    case 5:
      if (n < 7) return CountResult{K::Exact, 0};
      return CountResult{K::Exact, BigInt(n % 2 == 0 ? n - 6 : n - 5) * factorial(n_ - 5)};
    case 6: {
      if (n < 4) return std::nullopt;
      const BigInt q = n % 2 == 0 ? detail::poly({2, -11, 14}, n) : detail::poly({2, -12, 18}, n);
      return CountResult{K::LowerBound, q * factorial(n_ - 4)};
    }
    case 8: {
      if (n < 5) return std::nullopt;
      const BigInt twice = detail::size8_cubic_doubled(n) * factorial(n_ - 5);
      return CountResult{K::LowerBound, twice / 2};
    }
    default:
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Necklace families

enum class FamilyId {
  Size2,
  Size4,
  Size5,
  Size6SameNN,
  Size6SameN1N1,
  Size6Mixed,
  Size8SameNN,
  Size8SameN1N1,
  Size8Mixed,
};

inline constexpr std::array<FamilyId, 9> kAllFamilies = {
    FamilyId::Size2,       FamilyId::Size4,         FamilyId::Size5,
    FamilyId::Size6SameNN, FamilyId::Size6SameN1N1, FamilyId::Size6Mixed,
    FamilyId::Size8SameNN, FamilyId::Size8SameN1N1, FamilyId::Size8Mixed};

inline std::string_view family_name(FamilyId f) {
  switch (f) {
    case FamilyId::Size2: return "Size2";
    case FamilyId::Size4: return "Size4";
    case FamilyId::Size5: return "Size5";
    case FamilyId::Size6SameNN: return "Size6SameNN";
    case FamilyId::Size6SameN1N1: return "Size6SameN1N1";
    case FamilyId::Size6Mixed: return "Size6Mixed";
    case FamilyId::Size8SameNN: return "Size8SameNN";
    case FamilyId::Size8SameN1N1: return "Size8SameN1N1";
    case FamilyId::Size8Mixed: return "Size8Mixed";
  }
  return "?";
}

inline std::size_t family_length(FamilyId f) {
  switch (f) {
    case FamilyId::Size2: return 2;
    case FamilyId::Size4: return 4;
    case FamilyId::Size5: return 5;
    case FamilyId::Size6SameNN:
    case FamilyId::Size6SameN1N1:
    case FamilyId::Size6Mixed: return 6;
    default: return 8;
  }
}

/// Smallest n the family is stated for.
inline std::size_t family_min_n(FamilyId f) {
  switch (f) {
    case FamilyId::Size2: return 2;
    case FamilyId::Size4: return 3;
    case FamilyId::Size5: return 7;
    case FamilyId::Size6SameNN:
    case FamilyId::Size6SameN1N1:
    case FamilyId::Size6Mixed: return 4;
    default: return 5;
  }
}

inline std::vector<FamilyId> families_of_length(std::size_t len) {
  std::vector<FamilyId> out;
  for (FamilyId f : kAllFamilies)
    if (family_length(f) == len) out.push_back(f);
  return out;
}

namespace detail {

inline bool all_distinct(std::initializer_list<int> xs) {
  std::vector<int> v(xs);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

inline void add_canonical(std::set<std::vector<Entry>>& out, std::initializer_list<int> seq) {
  std::vector<Entry> e;
  for (int v : seq) e.push_back(static_cast<Entry>(v));
  out.insert(canonical_rotation(e));
}

}  // namespace detail

/// Canonical entries of every necklace in the family, deduplicated and in
/// lexicographic order. Enumerates raw parameters and filters by the family
/// constraints; no closed form is used. Empty below the family's minimum n.
inline std::vector<std::vector<Entry>> gen_family_entries(FamilyId f, std::size_t n_) {
  std::set<std::vector<Entry>> out;
  const int n = static_cast<int>(n_);
  if (n_ < family_min_n(f) || n_ > kMaxLength) return {};
  const int lo = 1, hi = n - 2;  // free letters live in [1, n-2]
  switch (f) {
    case FamilyId::Size2:
      detail::add_canonical(out, {n - 1, n});
      break;
    case FamilyId::Size4:
      for (int a = lo; a <= hi; ++a) detail::add_canonical(out, {a, n - 1, a, n});
      break;
    case FamilyId::Size5:
      for (int a = lo; a <= hi; ++a) {
        const int b = n - a, c = a + 1, d = n - c;
        const bool in_range = b >= lo && b <= hi && c >= lo && c <= hi && d >= lo && d <= hi;
        if (in_range && detail::all_distinct({a, b, c, d}))
          detail::add_canonical(out, {1, a, b, c, d});
      }
      break;
    case FamilyId::Size6SameNN:
    case FamilyId::Size6SameN1N1: {
      const int x = f == FamilyId::Size6SameNN ? n : n - 1;
      for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
          if (a != b && a + b == n - 1) detail::add_canonical(out, {a, b, x, b, a, x});
      break;
    }
    case FamilyId::Size6Mixed:
      for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
          if (a != b && a + b != n - 1) detail::add_canonical(out, {a, b, n - 1, b, a, n});
      break;
    case FamilyId::Size8SameNN:
    case FamilyId::Size8SameN1N1: {
      const int x = f == FamilyId::Size8SameNN ? n : n - 1;
      for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
          for (int c = lo; c <= hi; ++c)
            if (detail::all_distinct({a, b, c}) && a + b + c == n - 1)
              detail::add_canonical(out, {a, b, c, x, c, b, a, x});
      break;
    }
    case FamilyId::Size8Mixed:
      for (int a = lo; a <= hi; ++a)
        for (int b = lo; b <= hi; ++b)
          for (int c = lo; c <= hi; ++c)
            if (detail::all_distinct({a, b, c}) && a + b + c != n - 1 && a + b != n - 1 &&
                b + c != n - 1)
              detail::add_canonical(out, {a, b, c, n - 1, c, b, a, n});
      break;
  }
  return {out.begin(), out.end()};
}

inline std::vector<Necklace> gen_family(FamilyId f, std::size_t n) {
  std::vector<Necklace> out;
  for (auto& e : gen_family_entries(f, n)) out.emplace_back(std::move(e), n);
  return out;
}

/// Family groups whose sizes have closed forms.
enum class FamilyGroup { Size2, Size4, Size5, Size6Same, Size6Mixed, Size8Same, Size8Mixed };

inline std::vector<FamilyId> members_of(FamilyGroup g) {
  switch (g) {
    case FamilyGroup::Size2: return {FamilyId::Size2};
    case FamilyGroup::Size4: return {FamilyId::Size4};
    case FamilyGroup::Size5: return {FamilyId::Size5};
    case FamilyGroup::Size6Same: return {FamilyId::Size6SameNN, FamilyId::Size6SameN1N1};
    case FamilyGroup::Size6Mixed: return {FamilyId::Size6Mixed};
    case FamilyGroup::Size8Same: return {FamilyId::Size8SameNN, FamilyId::Size8SameN1N1};
    case FamilyGroup::Size8Mixed: return {FamilyId::Size8Mixed};
  }
  return {};
}

/// Closed-form number of necklaces in a family group. The size-8 forms are
/// the quadratic (same letter twice) and cubic (mixed) polynomials by n mod 6.
inline CountResult family_count(FamilyGroup g, std::size_t n_) {
  using K = CountResult::Kind;
  const long long n = static_cast<long long>(n_);
  const bool even = n % 2 == 0;
  auto exact = [](BigInt v) { return CountResult{K::Exact, std::move(v)}; };
  switch (g) {
    case FamilyGroup::Size2: return exact(n >= 2 ? 1 : 0);
    case FamilyGroup::Size4: return exact(n >= 3 ? n - 2 : 0);
    case FamilyGroup::Size5: return exact(n >= 7 ? (even ? n - 6 : n - 5) : 0);
    case FamilyGroup::Size6Same: return exact(n >= 4 ? (even ? n - 2 : n - 3) : 0);
    case FamilyGroup::Size6Mixed:
      return exact(n >= 4 ? (n - 2) * (n - 3) - (even ? n - 2 : n - 3) : 0);
    case FamilyGroup::Size8Same: {
      if (n < 5) return exact(0);
      long long c2 = 0;  // twice the constant term
      switch (n % 6) {
        case 0: case 2: c2 = 12; break;
        case 1: c2 = 19; break;
        case 4: c2 = 16; break;
        default: c2 = 15; break;
      }
      return exact((n * n - 8 * n + c2) / 2);
    }
    case FamilyGroup::Size8Mixed: {
      if (n < 5) return exact(0);
      // doubled: 2n^3 - 23n^2 + 2*b*n + c
      long long b = 0, c = 0;
      switch (n % 6) {
        case 0: case 2: b = 42; c = -92; break;
        case 1: b = 44; c = -115; break;
        case 4: b = 42; c = -96; break;
        default: b = 44; c = -111; break;
      }
      return exact((2 * n * n * n - 23 * n * n + 2 * b * n + c) / 2);
    }
  }
  return exact(0);
}

// ---------------------------------------------------------------------------
// Witnesses

/// A permutation whose necklace is `nk`. Pins each necklace value at the
/// position it must occupy for it to reach the front on schedule, fills the
/// remaining positions with the unused values in ascending order, and checks
/// the result by walking its orbit. Throws WitnessMismatch when the pins
/// conflict or the walk disagrees.
inline Perm witness_permutation(const Necklace& nk, std::size_t n) {
  if (nk.n() != n) throw std::invalid_argument("witness_permutation: necklace built for another n");
  const auto seq = nk.canonical_entries();
  // holder[j] = original position (0-based) of whatever currently sits at position j
  std::vector<std::size_t> holder(n);
  for (std::size_t j = 0; j < n; ++j) holder[j] = j;
  std::vector<int> pinned(n, 0);      // original position -> one-based value
  std::vector<bool> used(n + 1, false);
  for (Entry x : seq) {
    const std::size_t orig = holder[0];
    if (pinned[orig] == 0) {
      if (used[x])
        throw WitnessMismatch("value " + std::to_string(x) + " would need two positions in " +
                              format_entries(seq));
      pinned[orig] = x;
      used[x] = true;
    } else if (pinned[orig] != x) {
      throw WitnessMismatch("position " + std::to_string(orig + 1) + " needs both " +
                            std::to_string(pinned[orig]) + " and " + std::to_string(x) + " in " +
                            format_entries(seq));
    }
    const SigmaPerm step(n, x);
    std::vector<std::size_t> next(n);
    for (std::size_t j = 0; j < n; ++j) next[static_cast<std::size_t>(step(j + 1) - 1)] = holder[j];
    holder = std::move(next);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (holder[j] != j)
      throw WitnessMismatch("step product is not the identity for " + format_entries(seq));

  std::vector<int> values(n);
  int fill = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (pinned[j] != 0) {
      values[j] = pinned[j];
      continue;
    }
    while (used[static_cast<std::size_t>(fill)]) ++fill;
    values[j] = fill;
    used[static_cast<std::size_t>(fill)] = true;
  }
  Perm w = Perm::from_values(values);
  const Necklace got = necklace(w);
  if (!got.equivalent(nk) || got.length() != nk.length())
    throw WitnessMismatch("constructed " + to_string(w) + " has necklace " + to_string(got) +
                          ", wanted " + to_string(nk));
  return w;
}

}  // namespace topdrop
