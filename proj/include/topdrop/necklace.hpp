#pragma once

// Cyclic sequences of first elements. Entries are one-based values in [1, n].

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "topdrop/perm.hpp"

namespace topdrop {

/// Start index of the lexicographically least rotation (Booth, linear time).
inline std::size_t least_rotation(std::span<const Entry> s) {
  const long len = static_cast<long>(s.size());
  if (len <= 1) return 0;
  auto at = [&](long idx) { return s[static_cast<std::size_t>(idx % len)]; };
  std::vector<long> fail(static_cast<std::size_t>(2 * len), -1);
  long k = 0;
  for (long j = 1; j < 2 * len; ++j) {
    const Entry sj = at(j);
    long i = fail[static_cast<std::size_t>(j - k - 1)];
    while (i != -1 && sj != at(k + i + 1)) {
      if (sj < at(k + i + 1)) k = j - i - 1;
      i = fail[static_cast<std::size_t>(i)];
    }
    if (sj != at(k + i + 1)) {  // i == -1 here
      if (sj < at(k)) k = j;
      fail[static_cast<std::size_t>(j - k)] = -1;
    } else {
      fail[static_cast<std::size_t>(j - k)] = i + 1;
    }
  }
  return static_cast<std::size_t>(k % len);
}

/// Least-rotation of `s` written as a new sequence.
inline std::vector<Entry> canonical_rotation(std::span<const Entry> s) {
  std::vector<Entry> out(s.begin(), s.end());
  std::rotate(out.begin(), out.begin() + static_cast<long>(least_rotation(s)), out.end());
  return out;
}

/// Number of repetitions of the smallest block that tiles `s`.
inline std::size_t fundamental_period(std::span<const Entry> s) {
  const std::size_t len = s.size();
  if (len == 0) return 1;
  // prefix function; the shortest period is len - border
  std::vector<std::size_t> pi(len, 0);
  for (std::size_t i = 1; i < len; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  const std::size_t block = len - pi[len - 1];
  return len % block == 0 ? len / block : 1;
}

/// A topdrop-necklace: the first elements along an orbit, in orbit order,
/// for permutations of length n.
class Necklace {
 public:
  Necklace(std::vector<Entry> entries, std::size_t n) : entries_(std::move(entries)), n_(n) {
    if (entries_.empty()) throw std::invalid_argument("necklace must be non-empty");
    if (n_ == 0 || n_ > kMaxLength)
      throw std::invalid_argument("necklace ambient length out of range");
    for (Entry e : entries_)
      if (e < 1 || e > n_)
        throw std::invalid_argument("necklace entry " + std::to_string(e) +
                                    " outside [1, " + std::to_string(n_) + "]");
    canonical_ = canonical_rotation(entries_);
    period_ = topdrop::fundamental_period(entries_);
  }

  static Necklace from_values(std::span<const int> values, std::size_t n) {
    std::vector<Entry> e;
    e.reserve(values.size());
    for (int v : values) {
      if (v < 1 || static_cast<std::size_t>(v) > n)
        throw std::invalid_argument("necklace entry " + std::to_string(v) +
                                    " outside [1, " + std::to_string(n) + "]");
      e.push_back(static_cast<Entry>(v));
    }
    return Necklace(std::move(e), n);
  }
  static Necklace from_values(std::initializer_list<int> values, std::size_t n) {
    return from_values(std::span<const int>(values.begin(), values.size()), n);
  }

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::span<const Entry> canonical_entries() const noexcept { return canonical_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t length() const noexcept { return entries_.size(); }
  std::size_t period() const noexcept { return period_; }

  std::size_t distinct_values() const {
    std::vector<bool> seen(n_ + 1, false);
    std::size_t d = 0;
    for (Entry e : entries_)
      if (!seen[e]) seen[e] = true, ++d;
    return d;
  }

  bool contains(int value) const {
    return std::find(entries_.begin(), entries_.end(), value) != entries_.end();
  }

  /// Rotation equivalence.
  bool equivalent(const Necklace& other) const {
    return n_ == other.n_ && canonical_ == other.canonical_;
  }

  friend bool operator==(const Necklace&, const Necklace&) = default;

 private:
  std::vector<Entry> entries_;
  std::size_t n_;
  std::vector<Entry> canonical_;
  std::size_t period_ = 1;
};

inline std::size_t fundamental_period(const Necklace& nk) { return nk.period(); }

/// The same necklace written from its least rotation. Idempotent.
inline Necklace canonicalize(const Necklace& nk) {
  return Necklace(std::vector<Entry>(nk.canonical_entries().begin(), nk.canonical_entries().end()),
                  nk.n());
}

inline std::string format_entries(std::span<const Entry> e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e[i]);
  }
  return out + "]";
}

/// "[1,4,1,5]"
inline std::string to_string(const Necklace& nk) { return format_entries(nk.entries()); }

/// Parses "[1,4,1,5]" (brackets and spaces optional). Returns one-based
/// values; an empty list "[]" is accepted.
inline std::vector<int> parse_necklace_values(std::string_view text) {
  std::string body;
  for (char c : text)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') body += c;
  if (!body.empty() && body.front() == '[') body.erase(body.begin());
  if (!body.empty() && body.back() == ']') body.pop_back();
  std::vector<int> vals;
  if (body.empty()) return vals;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string tok = body.substr(pos, comma - pos);
    if (tok.empty() || tok.size() > 3 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("malformed necklace entry '" + tok + "'");
    vals.push_back(std::stoi(tok));
    pos = comma + 1;
  }
  return vals;
}

inline Necklace parse_necklace(std::string_view text, std::size_t n) {
  const auto vals = parse_necklace_values(text);
  if (vals.empty()) throw ParseError("necklace must be non-empty");
  try {
    return Necklace::from_values(vals, n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace topdrop
