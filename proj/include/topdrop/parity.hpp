#pragma once

// Position permutations of a single topdrop step and the parity constraint
// they impose on necklaces.
//
// When the front value is p, one step sends the entry at position i to
//   n + 1 - i   for i <= p
//   i - p       for i >  p.
// Products are written right-to-left as functions on positions: the
// rightmost factor acts first.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "topdrop/necklace.hpp"
#include "topdrop/perm.hpp"

namespace topdrop {

/// A permutation of positions {1..n}; images()[i-1] is the image of i.
class PositionMap {
 public:
  static PositionMap identity(std::size_t n) {
    PositionMap m;
    m.img_.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.img_[i] = static_cast<Entry>(i + 1);
    return m;
  }

  std::size_t size() const noexcept { return img_.size(); }
  int operator()(std::size_t i) const { return img_.at(i - 1); }
  std::span<const Entry> images() const noexcept { return img_; }
  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i + 1) return false;
    return true;
  }

  /// (outer ∘ inner)(i) = outer(inner(i)).
  friend PositionMap compose(const PositionMap& outer, const PositionMap& inner) {
    if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
    PositionMap m;
    m.img_.resize(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) m.img_[i] = outer.img_[inner.img_[i] - 1];
    return m;
  }

  friend bool operator==(const PositionMap&, const PositionMap&) = default;

 private:
  friend class SigmaPerm;
  std::vector<Entry> img_;
};

PositionMap compose(const PositionMap& outer, const PositionMap& inner);

/// Movement of positions under one step whose front value is p.
class SigmaPerm {
 public:
  SigmaPerm(std::size_t n, std::size_t p) : n_(n), p_(p) {
    if (n == 0 || n > kMaxLength) throw std::invalid_argument("sigma: n out of range");
    if (p < 1 || p > n)
      throw std::invalid_argument("sigma: p = " + std::to_string(p) + " outside [1, " +
                                  std::to_string(n) + "]");
    map_.img_.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
      map_.img_[i - 1] = static_cast<Entry>(i <= p ? n + 1 - i : i - p);
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }
  const PositionMap& mapping() const noexcept { return map_; }
  int operator()(std::size_t i) const { return map_(i); }

 private:
  std::size_t n_;
  std::size_t p_;
  PositionMap map_;
};

inline SigmaPerm sigma(std::size_t n, std::size_t p) { return SigmaPerm(n, p); }

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// p*n - p(p+1)/2
constexpr std::uint64_t sigma_inversions(std::uint64_t n, std::uint64_t p) {
  return p * n - p * (p + 1) / 2;
}

/// Odd iff (n even, p = 1,2 mod 4) or (n odd, p = 2,3 mod 4).
inline Parity sigma_parity(std::size_t n, std::size_t p) {
  if (p < 1 || p > n)
    throw std::invalid_argument("sigma_parity: p = " + std::to_string(p) + " outside [1, " +
                                std::to_string(n) + "]");
  const std::size_t r = p % 4;
  const bool odd = (n % 2 == 0) ? (r == 1 || r == 2) : (r == 2 || r == 3);
  return odd ? Parity::Odd : Parity::Even;
}

/// sigma_{x_{m-1}} ∘ ... ∘ sigma_{x_0} for a necklace read x_0, x_1, ...
inline PositionMap sigma_product(std::span<const Entry> entries, std::size_t n) {
  PositionMap acc = PositionMap::identity(n);
  for (Entry x : entries) acc = compose(sigma(n, x).mapping(), acc);
  return acc;
}

/// Where the entry at position i of p sits after k steps.
inline int track_position(const Perm& p, std::size_t k, std::size_t i) {
  const std::size_t n = p.size();
  if (i < 1 || i > n) throw std::invalid_argument("track_position: position out of range");
  std::vector<Entry> buf(p.raw().begin(), p.raw().end());
  PositionMap acc = PositionMap::identity(n);
  for (std::size_t step = 0; step < k; ++step) {
    acc = compose(sigma(n, buf[0] + 1u).mapping(), acc);
    topdrop_in_place(buf.data(), n);
  }
  return acc(i);
}

/// Necessary (not sufficient) condition for a necklace to be realised.
inline bool sigma_product_is_identity(std::span<const Entry> entries, std::size_t n) {
  return sigma_product(entries, n).is_identity();
}
inline bool sigma_product_is_identity(const Necklace& nk) {
  return sigma_product_is_identity(nk.entries(), nk.n());
}

/// Per-value tally of the entries whose step permutation is odd, in
/// ascending value order, e.g. 0+3+1+1+0+1+0+0=6 for n = 14.
struct ParityBreakdown {
  struct Term {
    int value;
    std::size_t count;
  };
  std::vector<Term> terms;
  std::size_t total = 0;
  bool even() const noexcept { return total % 2 == 0; }

  std::string sum_string() const {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) out += '+';
      out += std::to_string(terms[i].count);
    }
    if (terms.empty()) out += '0';
    return out + "=" + std::to_string(total);
  }
};

inline ParityBreakdown parity_breakdown(std::span<const Entry> entries, std::size_t n) {
  ParityBreakdown b;
  std::vector<std::size_t> tally(n + 1, 0);
  for (Entry x : entries) {
    if (x < 1 || x > n)
      throw std::invalid_argument("necklace entry " + std::to_string(x) + " outside [1, " +
                                  std::to_string(n) + "]");
    ++tally[x];
  }
  for (std::size_t v = 1; v <= n; ++v) {
    if (sigma_parity(n, v) != Parity::Odd) continue;
    b.terms.push_back({static_cast<int>(v), tally[v]});
    b.total += tally[v];
  }
  return b;
}

/// Evenly many entries must have an odd step permutation.
inline bool necklace_parity_ok(std::span<const Entry> entries, std::size_t n) {
  std::size_t odd = 0;
  for (Entry x : entries)
    if (sigma_parity(n, x) == Parity::Odd) ++odd;
  return odd % 2 == 0;
}
inline bool necklace_parity_ok(const Necklace& nk) { return necklace_parity_ok(nk.entries(), nk.n()); }

}  // namespace topdrop
