#pragma once

// Permutations in one-line notation and the topdrop map.
//
// A Perm stores its entries zero-based (value v is kept as v - 1) so index
// arithmetic stays natural. Everything that crosses the API boundary as text
// or as plain integers is one-based, matching the usual one-line notation.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace topdrop {

using Entry = std::uint8_t;

/// Largest n accepted by the un-ranked operations.
inline constexpr std::size_t kMaxLength = 64;
/// Largest n accepted by rank/unrank; 20! is the last factorial below 2^64.
inline constexpr std::size_t kMaxRankedLength = 20;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

// Throws ParseError naming duplicated and missing values when `zero_based`
// is not a bijection on {0, ..., n-1}.
inline void validate_bijection(std::span<const int> zero_based) {
  const std::size_t n = zero_based.size();
  if (n == 0) throw ParseError("permutation must have at least one entry");
  if (n > kMaxLength)
    throw ParseError("permutation length " + std::to_string(n) +
                     " exceeds the supported maximum of " +
                     std::to_string(kMaxLength));
  std::vector<int> seen(n, 0);
  std::vector<int> out_of_range;
  for (int v : zero_based) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      out_of_range.push_back(v + 1);
    else
      ++seen[v];
  }
  std::vector<int> dup, missing;
  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v] > 1) dup.push_back(static_cast<int>(v) + 1);
    if (seen[v] == 0) missing.push_back(static_cast<int>(v) + 1);
  }
  if (dup.empty() && missing.empty() && out_of_range.empty()) return;
  std::string msg = "not a permutation of 1.." + std::to_string(n) + ":";
  if (!out_of_range.empty()) msg += " out of range {" + join_ints(out_of_range) + "}";
  if (!dup.empty()) msg += " duplicated {" + join_ints(dup) + "}";
  if (!missing.empty()) msg += " missing {" + join_ints(missing) + "}";
  throw ParseError(msg);
}

}  // namespace detail

/// A permutation of {1..n}, 1 <= n <= 64. Immutable after construction.
class Perm {
 public:
  /// Identity permutation 12...n.
  static Perm identity(std::size_t n) {
    std::vector<int> zb(n);
    std::iota(zb.begin(), zb.end(), 0);
    return from_zero_based(zb);
  }

  /// Builds from one-based values, e.g. {4, 6, 1, 2, 3, 7, 5}.
  static Perm from_values(std::span<const int> one_based) {
    std::vector<int> zb(one_based.begin(), one_based.end());
    for (int& v : zb) --v;
    return from_zero_based(zb);
  }
  static Perm from_values(std::initializer_list<int> one_based) {
    return from_values(std::span<const int>(one_based.begin(), one_based.size()));
  }

  static Perm from_zero_based(std::span<const int> zero_based) {
    detail::validate_bijection(zero_based);
    Perm p;
    p.v_.assign(zero_based.begin(), zero_based.end());
    return p;
  }

  /// Adopts raw zero-based entries without validation. Callers guarantee the
  /// bijection (used on hot paths that only ever permute a valid buffer).
  static Perm adopt_unchecked(std::span<const Entry> zero_based) {
    Perm p;
    p.v_.assign(zero_based.begin(), zero_based.end());
    return p;
  }

  std::size_t size() const noexcept { return v_.size(); }

  /// pi_i for a one-based position i.
  int at(std::size_t position) const { return v_.at(position - 1) + 1; }
  int first() const noexcept { return v_.front() + 1; }
  int last() const noexcept { return v_.back() + 1; }

  std::span<const Entry> raw() const noexcept { return v_; }

  std::vector<int> values() const {
    std::vector<int> out(v_.size());
    std::transform(v_.begin(), v_.end(), out.begin(), [](Entry e) { return e + 1; });
    return out;
  }

  // Ordering of zero-based entries coincides with the lexicographic order of
  // the one-line notation, which is also rank order.
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  Perm() = default;
  std::vector<Entry> v_;
};

// ---------------------------------------------------------------------------
// The map and its inverse

/// Hot-loop variant: applies the topdrop map to the first n entries of `buf`.
inline void topdrop_in_place(Entry* buf, std::size_t n) noexcept {
  const std::size_t p = static_cast<std::size_t>(buf[0]) + 1;
  std::rotate(buf, buf + p, buf + n);
  std::reverse(buf + (n - p), buf + n);
}

/// Hot-loop variant of the inverse map.
inline void topdrop_inv_in_place(Entry* buf, std::size_t n) noexcept {
  const std::size_t q = static_cast<std::size_t>(buf[n - 1]) + 1;
  std::reverse(buf + (n - q), buf + n);
  std::rotate(buf, buf + (n - q), buf + n);
}

/// T(pi): the first pi_1 entries are reversed and moved to the back.
inline Perm topdrop(const Perm& p) {
  const auto src = p.raw();
  const std::size_t n = src.size();
  const std::size_t k = p.first();
  std::vector<Entry> out;
  out.reserve(n);
  out.insert(out.end(), src.begin() + k, src.end());
  out.insert(out.end(), std::make_reverse_iterator(src.begin() + k),
             std::make_reverse_iterator(src.begin()));
  return Perm::adopt_unchecked(out);
}

/// T^{-1}(pi): the last pi_n entries, reversed, followed by the first n - pi_n.
inline Perm topdrop_inv(const Perm& p) {
  const auto src = p.raw();
  const std::size_t n = src.size();
  const std::size_t k = p.last();
  std::vector<Entry> out;
  out.reserve(n);
  out.insert(out.end(), src.rbegin(), src.rbegin() + k);
  out.insert(out.end(), src.begin(), src.begin() + (n - k));
  return Perm::adopt_unchecked(out);
}

inline Perm reverse(const Perm& p) {
  const auto src = p.raw();
  std::vector<Entry> out(src.rbegin(), src.rend());
  return Perm::adopt_unchecked(out);
}

/// T^k(pi) for any integer k; negative k iterates the inverse.
inline Perm topdrop_pow(const Perm& p, long long k) {
  std::vector<Entry> buf(p.raw().begin(), p.raw().end());
  const std::size_t n = buf.size();
  for (long long i = 0; i < k; ++i) topdrop_in_place(buf.data(), n);
  for (long long i = 0; i > k; --i) topdrop_inv_in_place(buf.data(), n);
  return Perm::adopt_unchecked(buf);
}

// ---------------------------------------------------------------------------
// Ranking in lexicographic (Lehmer code) order

struct PermRank {
  std::size_t n = 0;
  std::uint64_t value = 0;
  friend bool operator==(const PermRank&, const PermRank&) = default;
  friend auto operator<=>(const PermRank&, const PermRank&) = default;
};

constexpr std::uint64_t factorial_u64(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Rank of zero-based entries, n <= 20. No validation.
inline std::uint64_t rank_raw(const Entry* v, std::size_t n) noexcept {
  std::uint32_t unused = (1u << n) - 1u;
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t below = unused & ((1u << v[i]) - 1u);
    r = r * (n - i) + static_cast<std::uint64_t>(__builtin_popcount(below));
    unused &= ~(1u << v[i]);
  }
  return r;
}

/// Writes the zero-based entries of the permutation with rank `r` into `out`.
inline void unrank_raw(std::size_t n, std::uint64_t r, Entry* out) noexcept {
  Entry pool[kMaxRankedLength];
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<Entry>(i);
  std::size_t remaining = n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t f = factorial_u64(n - 1 - i);
    const std::size_t idx = static_cast<std::size_t>(r / f);
    r %= f;
    out[i] = pool[idx];
    std::copy(pool + idx + 1, pool + remaining, pool + idx);
    --remaining;
  }
}

inline PermRank rank(const Perm& p) {
  if (p.size() > kMaxRankedLength)
    throw std::out_of_range("rank: n = " + std::to_string(p.size()) +
                            " exceeds the ranked maximum of 20");
  return {p.size(), rank_raw(p.raw().data(), p.size())};
}

inline Perm unrank(std::size_t n, std::uint64_t r) {
  if (n == 0 || n > kMaxRankedLength)
    throw std::out_of_range("unrank: n must be in [1, 20], got " + std::to_string(n));
  if (r >= factorial_u64(n))
    throw std::out_of_range("unrank: rank " + std::to_string(r) + " >= " +
                            std::to_string(n) + "!");
  Entry buf[kMaxRankedLength];
  unrank_raw(n, r, buf);
  return Perm::adopt_unchecked(std::span<const Entry>(buf, n));
}

inline Perm unrank(PermRank r) { return unrank(r.n, r.value); }

// ---------------------------------------------------------------------------
// Text form: contiguous digits for n <= 9, comma-separated otherwise.

inline std::string to_string(const Perm& p) {
  std::string out;
  const bool compact = p.size() <= 9;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!compact && i) out += ',';
    out += std::to_string(p.raw()[i] + 1);
  }
  return out;
}

/// Accepts "4612375" (single digits) or "2,5,11,1,..." (any n).
inline Perm parse_perm(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty permutation text");

  std::vector<int> vals;
  if (text.find(',') == std::string_view::npos) {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw ParseError(std::string("unexpected character '") + c + "' in permutation");
      vals.push_back(c - '0');
    }
    if (vals.size() > 9)
      throw ParseError("permutations with more than 9 entries must be comma-separated");
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      std::string_view tok = text.substr(pos, comma - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok.empty() || tok.size() > 3 ||
          !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError("malformed entry '" + std::string(tok) + "' in permutation");
      vals.push_back(std::stoi(std::string(tok)));
      pos = comma + 1;
    }
  }
  for (int& v : vals) --v;
  return Perm::from_zero_based(vals);
}

}  // namespace topdrop
