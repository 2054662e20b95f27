#pragma once

// Orbits of the topdrop map, their necklaces, and the symmetries that show up
// once n or n-1 reaches the front.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "topdrop/necklace.hpp"
#include "topdrop/perm.hpp"

namespace topdrop {

struct OrbitRecord {
  Perm representative;  // least-rank member
  std::size_t size;
  Necklace necklace;  // written starting at the representative
};

/// Full member list pi, T(pi), ..., T^{s-1}(pi).
inline std::vector<Perm> orbit_members(const Perm& p) {
  std::vector<Perm> out;
  std::vector<Entry> buf(p.raw().begin(), p.raw().end());
  const std::size_t n = buf.size();
  do {
    out.push_back(Perm::adopt_unchecked(buf));
    topdrop_in_place(buf.data(), n);
  } while (!std::equal(buf.begin(), buf.end(), p.raw().begin()));
  return out;
}

/// First elements along the orbit, starting at p.
inline Necklace necklace(const Perm& p) {
  std::vector<Entry> buf(p.raw().begin(), p.raw().end());
  const std::size_t n = buf.size();
  std::vector<Entry> firsts;
  do {
    firsts.push_back(static_cast<Entry>(buf[0] + 1));
    topdrop_in_place(buf.data(), n);
  } while (!std::equal(buf.begin(), buf.end(), p.raw().begin()));
  return Necklace(std::move(firsts), n);
}

// T is a bijection, so the walk can only come back to where it started.
inline OrbitRecord orbit(const Perm& p) {
  std::vector<Entry> buf(p.raw().begin(), p.raw().end());
  std::vector<Entry> best = buf;
  const std::size_t n = buf.size();
  std::vector<Entry> firsts;
  std::size_t best_at = 0;
  do {
    if (std::lexicographical_compare(buf.begin(), buf.end(), best.begin(), best.end())) {
      best = buf;
      best_at = firsts.size();
    }
    firsts.push_back(static_cast<Entry>(buf[0] + 1));
    topdrop_in_place(buf.data(), n);
  } while (!std::equal(buf.begin(), buf.end(), p.raw().begin()));
  const std::size_t size = firsts.size();
  std::rotate(firsts.begin(), firsts.begin() + static_cast<long>(best_at), firsts.end());
  return OrbitRecord{Perm::adopt_unchecked(best), size, Necklace(std::move(firsts), n)};
}

// ---------------------------------------------------------------------------
// Symmetry checks with a verdict per clause

struct Clause {
  std::string name;
  bool pass = true;
  std::string detail;
  /// Informational clauses are reported but never fail the outcome.
  bool binding = true;
};

struct CheckOutcome {
  std::string check;
  bool applicable = true;
  std::vector<Clause> clauses;

  bool passed() const {
    return std::all_of(clauses.begin(), clauses.end(),
                       [](const Clause& c) { return !c.binding || c.pass; });
  }
  const Clause* find(std::string_view name) const {
    for (const auto& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline bool starts_high(const Perm& p) {
  const int n = static_cast<int>(p.size());
  return p.first() == n || p.first() == n - 1;
}

/// Checks an orbit whose necklace contains n or n-1:
///   inverse-reflects-forward  T^{-k}(pi) = rev(T^{k+1}(pi)) for every k,
///                             where pi is a member starting with n or n-1
///   even-size                 the orbit has even size 2m
///   antipode-starts-high      T^m(pi) also starts with n or n-1
///   exactly-two-high          n and n-1 occur exactly twice in total
/// Not applicable when the necklace has neither value or n < 2.
inline CheckOutcome check_reversal_symmetry(const OrbitRecord& rec) {
  CheckOutcome out{"reversal-symmetry", true, {}};
  const std::size_t n = rec.representative.size();
  const auto members = orbit_members(rec.representative);
  const std::size_t s = members.size();
  std::size_t pivot = s;
  for (std::size_t i = 0; i < s; ++i)
    if (starts_high(members[i])) {
      pivot = i;
      break;
    }
  if (n < 2 || pivot == s) {
    out.applicable = false;
    return out;
  }
  auto member = [&](long long offset) -> const Perm& {
    const long long m = static_cast<long long>(s);
    return members[static_cast<std::size_t>(((static_cast<long long>(pivot) + offset) % m + m) % m)];
  };

  Clause reflect{"inverse-reflects-forward", true, ""};
  for (long long k = 0; k <= static_cast<long long>(s); ++k) {
    if (member(-k) != reverse(member(k + 1))) {
      reflect.pass = false;
      reflect.detail = "fails at k=" + std::to_string(k) + " from " + to_string(member(0));
      break;
    }
  }
  out.clauses.push_back(reflect);

  Clause even{"even-size", s % 2 == 0, "size=" + std::to_string(s)};
  out.clauses.push_back(even);

  Clause antipode{"antipode-starts-high", false, ""};
  if (s % 2 == 0) {
    const Perm& mid = member(static_cast<long long>(s / 2));
    antipode.pass = starts_high(mid);
    antipode.detail = "T^" + std::to_string(s / 2) + " = " + to_string(mid);
  } else {
    antipode.detail = "odd size";
  }
  out.clauses.push_back(antipode);

  std::size_t high = 0;
  for (Entry e : rec.necklace.entries())
    if (e == n || e + 1u == n) ++high;
  out.clauses.push_back(
      Clause{"exactly-two-high", high == 2, "occurrences=" + std::to_string(high)});
  return out;
}

namespace detail {

inline bool same_range(const Perm& a, const Perm& b, std::size_t from, std::size_t to) {
  return std::equal(a.raw().begin() + static_cast<long>(from), a.raw().begin() + static_cast<long>(to),
                    b.raw().begin() + static_cast<long>(from));
}

inline bool reversed_range(const Perm& a, const Perm& b, std::size_t from, std::size_t to) {
  return std::equal(a.raw().begin() + static_cast<long>(from), a.raw().begin() + static_cast<long>(to),
                    std::make_reverse_iterator(b.raw().begin() + static_cast<long>(to)));
}

// a and b agree on the last `tail` entries and the first n - tail are mutual reversals.
inline bool shared_suffix_reversed_prefix(const Perm& a, const Perm& b, std::size_t tail) {
  const std::size_t n = a.size();
  return same_range(a, b, n - tail, n) && reversed_range(a, b, 0, n - tail);
}

}  // namespace detail

/// For pi starting with n or n-1 and any integer k:
///   shared-prefix    T^k(pi), T^{-k}(pi) agree on the first T^k(pi)_1 entries;
///                    the remaining entries are mutual reversals
///   shared-suffix    T^k(pi), T^{2-k}(pi) agree on the last T^k(pi)_n entries;
///                    the preceding entries are mutual reversals
///   shared-suffix-alt-index  the same comparison split at T^{k+2}(pi)_n
///                    (informational, never fails the outcome)
inline CheckOutcome check_prefix_suffix_symmetry(const Perm& p, long long k);

namespace detail {

inline void require_high_start(const Perm& p) {
  if (p.size() < 2 || !starts_high(p))
    throw std::invalid_argument("prefix/suffix symmetry needs pi_1 in {n, n-1} and n >= 2, got " +
                                to_string(p));
}

inline CheckOutcome prefix_suffix_outcome(long long k, const Perm& fwd, const Perm& back,
                                          const Perm& back2, const Perm& fwd2) {
  const std::size_t n = fwd.size();
  CheckOutcome out{"prefix-suffix-symmetry", true, {}};
  const std::size_t head = static_cast<std::size_t>(fwd.first());
  out.clauses.push_back(Clause{
      "shared-prefix", same_range(fwd, back, 0, head) && reversed_range(fwd, back, head, n),
      "T^" + std::to_string(k) + "=" + to_string(fwd) + " T^" + std::to_string(-k) + "=" +
          to_string(back)});

  const std::size_t tail = static_cast<std::size_t>(fwd.last());
  out.clauses.push_back(Clause{"shared-suffix", shared_suffix_reversed_prefix(fwd, back2, tail),
                               "T^" + std::to_string(k) + "=" + to_string(fwd) + " T^" +
                                   std::to_string(2 - k) + "=" + to_string(back2) +
                                   " tail=" + std::to_string(tail)});

  const std::size_t alt_tail = static_cast<std::size_t>(fwd2.last());
  out.clauses.push_back(Clause{"shared-suffix-alt-index",
                               shared_suffix_reversed_prefix(fwd, back2, alt_tail),
                               "tail=" + std::to_string(alt_tail), false});
  return out;
}

}  // namespace detail

inline CheckOutcome check_prefix_suffix_symmetry(const Perm& p, long long k) {
  detail::require_high_start(p);
  return detail::prefix_suffix_outcome(k, topdrop_pow(p, k), topdrop_pow(p, -k),
                                       topdrop_pow(p, 2 - k), topdrop_pow(p, k + 2));
}

/// Runs the prefix/suffix check for every k in [0, orbit size), which covers
/// all integers since T^k is periodic in k. Keeps the first failing detail
/// for each clause.
inline CheckOutcome check_prefix_suffix_symmetry_all(const Perm& p) {
  detail::require_high_start(p);
  const auto members = orbit_members(p);
  const long long s = static_cast<long long>(members.size());
  auto at = [&](long long j) -> const Perm& {
    return members[static_cast<std::size_t>((j % s + s) % s)];
  };
  CheckOutcome total{"prefix-suffix-symmetry", true, {}};
  for (long long k = 0; k < s; ++k) {
    auto one = detail::prefix_suffix_outcome(k, at(k), at(-k), at(2 - k), at(k + 2));
    if (total.clauses.empty()) {
      total.clauses = one.clauses;
      for (auto& c : total.clauses) c.detail = c.pass ? "all k" : c.detail;
      continue;
    }
    for (std::size_t i = 0; i < one.clauses.size(); ++i)
      if (total.clauses[i].pass && !one.clauses[i].pass) total.clauses[i] = one.clauses[i];
  }
  return total;
}

}  // namespace topdrop
