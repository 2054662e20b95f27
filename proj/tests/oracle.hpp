#pragma once

// Slow, literal re-implementations used only to check the library. They work
// on plain std::vector<int> with one-based values and share no code with
// include/topdrop.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

// Take p1 off the front, reverse it, append it.
inline Seq step(const Seq& p) {
  const int k = p.front();
  Seq out(p.begin() + k, p.end());
  for (int i = k - 1; i >= 0; --i) out.push_back(p[static_cast<std::size_t>(i)]);
  return out;
}

// Brute-force inverse: the unique q with step(q) == p. The last p_n entries
// of p are the reversed block, so q = reverse(tail) ++ head.
inline Seq step_back(const Seq& p) {
  const std::size_t n = p.size();
  const std::size_t k = static_cast<std::size_t>(p.back());
  Seq out(p.rbegin(), p.rbegin() + static_cast<long>(k));
  out.insert(out.end(), p.begin(), p.begin() + static_cast<long>(n - k));
  return out;
}

inline Seq reversed(Seq p) {
  std::reverse(p.begin(), p.end());
  return p;
}

inline std::vector<Seq> orbit(const Seq& p) {
  std::vector<Seq> out{p};
  for (Seq q = step(p); q != p; q = step(q)) out.push_back(q);
  return out;
}

inline Seq firsts(const std::vector<Seq>& orb) {
  Seq out;
  for (const auto& q : orb) out.push_back(q.front());
  return out;
}

// Smallest rotation by listing every rotation.
inline Seq min_rotation(const Seq& s) {
  Seq best = s;
  for (std::size_t r = 1; r < s.size(); ++r) {
    Seq rot(s.begin() + static_cast<long>(r), s.end());
    rot.insert(rot.end(), s.begin(), s.begin() + static_cast<long>(r));
    best = std::min(best, rot);
  }
  return best;
}

// Number of repetitions of the shortest block d with s[i] == s[i+d].
inline std::size_t period(const Seq& s) {
  const std::size_t m = s.size();
  for (std::size_t d = 1; d <= m; ++d) {
    if (m % d) continue;
    bool ok = true;
    for (std::size_t i = 0; i + d < m && ok; ++i) ok = s[i] == s[i + d];
    if (ok) return m / d;
  }
  return 1;
}

// sigma_{n,p} as a permutation of positions, one-based images at [i-1].
inline Seq sigma(int n, int p) {
  Seq img(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) img[static_cast<std::size_t>(i - 1)] = i <= p ? n + 1 - i : i - p;
  return img;
}

inline long long inversions(const Seq& v) {
  long long c = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) c += v[i] > v[j];
  return c;
}

// Every orbit of S_n by brute force: canonical necklace -> number of orbits.
struct Census {
  std::map<std::size_t, long long> orbits_by_size;
  std::set<Seq> necklaces;
};

inline Census census(int n) {
  Seq p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::set<Seq> seen;
  Census c;
  do {
    if (seen.count(p)) continue;
    const auto orb = orbit(p);
    for (const auto& q : orb) seen.insert(q);
    ++c.orbits_by_size[orb.size()];
    c.necklaces.insert(min_rotation(firsts(orb)));
  } while (std::next_permutation(p.begin(), p.end()));
  return c;
}

inline Seq random_perm(int n, std::mt19937_64& rng) {
  Seq p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace oracle
