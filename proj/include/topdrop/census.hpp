#pragma once

// Exhaustive orbit census over S_n.
//
// Three interchangeable strategies produce the same report:
//   Bitmap      one visited bit per rank; each orbit is walked once from its
//               first unvisited member. Single-threaded reference.
//   MinRank     every permutation starts a walk that is abandoned as soon as
//               it meets a lexicographically smaller member, so each orbit is
//               counted exactly once, at its least member. Sharded.
//   NecklaceSet every permutation contributes its canonical necklace to a
//               set; orbit counts are then derived from the necklaces alone.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "topdrop/counting.hpp"
#include "topdrop/necklace.hpp"
#include "topdrop/parity.hpp"
#include "topdrop/perm.hpp"

namespace topdrop {

enum class CensusMethod { Bitmap, MinRank, NecklaceSet };

inline std::string_view method_name(CensusMethod m) {
  switch (m) {
    case CensusMethod::Bitmap: return "bitmap";
    case CensusMethod::MinRank: return "minrank";
    case CensusMethod::NecklaceSet: return "necklace-set";
  }
  return "?";
}

inline CensusMethod parse_method(std::string_view s) {
  if (s == "bitmap") return CensusMethod::Bitmap;
  if (s == "minrank") return CensusMethod::MinRank;
  if (s == "necklace-set" || s == "necklaceset") return CensusMethod::NecklaceSet;
  throw std::invalid_argument("unknown census method '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// NecklaceSet

struct EntriesHash {
  std::size_t operator()(const std::vector<Entry>& e) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (Entry x : e) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Canonical necklace entries, bucketed by length. Equality of full entry
/// sequences is always checked after the hash.
class NecklaceSet {
 public:
  using Bucket = std::unordered_set<std::vector<Entry>, EntriesHash>;

  explicit NecklaceSet(std::size_t n = 0) : n_(n) {}

  std::size_t n() const noexcept { return n_; }

  /// `canonical` must already be the least rotation.
  bool insert(std::vector<Entry> canonical) {
    const std::size_t len = canonical.size();
    return buckets_[len].insert(std::move(canonical)).second;
  }

  bool contains(std::span<const Entry> entries) const {
    auto c = canonical_rotation(entries);
    auto it = buckets_.find(c.size());
    return it != buckets_.end() && it->second.count(c) > 0;
  }

  void merge(NecklaceSet&& other) {
    for (auto& [len, bucket] : other.buckets_) {
      auto& mine = buckets_[len];
      if (mine.empty()) {
        mine = std::move(bucket);
        continue;
      }
      mine.merge(bucket);
    }
    other.buckets_.clear();
  }

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& [len, b] : buckets_) s += b.size();
    return s;
  }

  std::size_t count_of_length(std::size_t len) const {
    auto it = buckets_.find(len);
    return it == buckets_.end() ? 0 : it->second.size();
  }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    for (const auto& [len, b] : buckets_)
      if (!b.empty()) out.push_back(len);
    return out;
  }

  /// Members of one length in lexicographic order.
  std::vector<std::vector<Entry>> sorted(std::size_t len) const {
    std::vector<std::vector<Entry>> out;
    auto it = buckets_.find(len);
    if (it == buckets_.end()) return out;
    out.assign(it->second.begin(), it->second.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [len, b] : buckets_)
      for (const auto& e : b) f(std::span<const Entry>(e));
  }

 private:
  std::size_t n_;
  std::map<std::size_t, Bucket> buckets_;
};

// ---------------------------------------------------------------------------
// Report

struct SizeCounts {
  BigInt orbits = 0;
  BigInt necklaces = 0;
  friend bool operator==(const SizeCounts&, const SizeCounts&) = default;
};

struct CensusReport {
  std::size_t n = 0;
  std::map<std::size_t, SizeCounts> per_size;
  BigInt total_orbits = 0;
  BigInt total_necklaces = 0;
  /// Orbits whose necklace contains n or n-1.
  BigInt high_orbits = 0;
  CensusMethod method = CensusMethod::MinRank;
  std::chrono::milliseconds elapsed{0};

  BigInt orbits_of_size(std::size_t k) const {
    auto it = per_size.find(k);
    return it == per_size.end() ? BigInt(0) : it->second.orbits;
  }
  BigInt necklaces_of_size(std::size_t k) const {
    auto it = per_size.find(k);
    return it == per_size.end() ? BigInt(0) : it->second.necklaces;
  }

  /// Same counts, regardless of method and timing.
  bool same_counts(const CensusReport& o) const {
    return n == o.n && per_size == o.per_size && total_orbits == o.total_orbits &&
           total_necklaces == o.total_necklaces && high_orbits == o.high_orbits;
  }
};

struct CensusResult {
  CensusReport report;
  NecklaceSet necklaces;
};

struct CensusOptions {
  CensusMethod method = CensusMethod::MinRank;
  unsigned shards = 1;
  /// Bitmap memory grows as n!/8 bytes; n = 13 needs this switch.
  bool allow_large_bitmap = false;
  /// Progress lines (rate, ETA) go here when set.
  std::ostream* progress = nullptr;
  std::chrono::milliseconds progress_interval{2000};
};

class CensusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool has_high(std::span<const Entry> firsts, std::size_t n) {
  for (Entry e : firsts)
    if (e == n || e + 1u == n) return true;
  return false;
}

// Per-shard accumulator. Plain integers are enough inside a shard: n <= 20
// keeps every count below 20!.
struct Partial {
  explicit Partial(std::size_t n) : necklaces(n) {}
  std::map<std::size_t, std::uint64_t> orbits;
  std::uint64_t high = 0;
  NecklaceSet necklaces;

  void record(std::vector<Entry>& firsts, std::size_t n) {
    ++orbits[firsts.size()];
    if (has_high(firsts, n)) ++high;
    necklaces.insert(canonical_rotation(firsts));
  }

  void merge(Partial&& o) {
    for (auto [k, c] : o.orbits) orbits[k] += c;
    high += o.high;
    necklaces.merge(std::move(o.necklaces));
  }
};

class ProgressMeter {
 public:
  ProgressMeter(std::ostream* out, std::chrono::milliseconds interval, std::uint64_t total)
      : out_(out), interval_(interval), total_(total), start_(std::chrono::steady_clock::now()) {
    if (out_) thread_ = std::jthread([this](std::stop_token st) { run(st); });
  }
  ~ProgressMeter() {
    if (thread_.joinable()) {
      thread_.request_stop();
      thread_.join();
    }
  }
  void add(std::uint64_t k) { done_.fetch_add(k, std::memory_order_relaxed); }

 private:
  void run(std::stop_token st) {
    auto next = start_ + interval_;
    while (!st.stop_requested()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
      const auto now = std::chrono::steady_clock::now();
      if (now < next) continue;
      next = now + interval_;
      const double secs = std::chrono::duration<double>(now - start_).count();
      const double done = static_cast<double>(done_.load(std::memory_order_relaxed));
      const double rate = secs > 0 ? done / secs : 0.0;
      const double eta = rate > 0 ? (static_cast<double>(total_) - done) / rate : 0.0;
      std::ostringstream line;
      line.precision(3);
      line << "census: " << static_cast<std::uint64_t>(done) << "/" << total_ << " perms, "
           << rate << " perms/s, eta " << eta << " s\n";
      *out_ << line.str() << std::flush;
    }
  }

  std::ostream* out_;
  std::chrono::milliseconds interval_;
  std::uint64_t total_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> done_{0};
  std::jthread thread_;
};

// Walks from `start` and returns true when `start` is the least member of its
// orbit; `firsts` then holds the necklace read from `start`.
inline bool walk_if_least(const Entry* start, std::size_t n, std::vector<Entry>& firsts) {
  Entry cur[kMaxRankedLength];
  std::memcpy(cur, start, n);
  firsts.clear();
  for (;;) {
    firsts.push_back(static_cast<Entry>(cur[0] + 1));
    topdrop_in_place(cur, n);
    const int c = std::memcmp(cur, start, n);
    if (c == 0) return true;
    if (c < 0) return false;
  }
}

// Full walk; `firsts` receives the necklace read from `start`.
inline void walk_full(const Entry* start, std::size_t n, std::vector<Entry>& firsts) {
  Entry cur[kMaxRankedLength];
  std::memcpy(cur, start, n);
  firsts.clear();
  do {
    firsts.push_back(static_cast<Entry>(cur[0] + 1));
    topdrop_in_place(cur, n);
  } while (std::memcmp(cur, start, n) != 0);
}

// Runs `body(partial, lo, hi)` over rank chunks on `shards` threads and folds
// the per-thread partials. Chunk boundaries do not affect the result.
template <typename Body>
Partial run_sharded(std::size_t n, unsigned shards, ProgressMeter& meter, Body body) {
  const std::uint64_t total = factorial_u64(n);
  shards = std::max(1u, shards);
  // at least 64 chunks per thread, and none above ~4M ranks so progress stays live
  const std::uint64_t chunks =
      std::min<std::uint64_t>(total, std::max<std::uint64_t>(std::uint64_t{64} * shards, total >> 22));
  const std::uint64_t per = (total + chunks - 1) / chunks;
  std::atomic<std::uint64_t> next{0};
  std::vector<Partial> partials;
  partials.reserve(shards);
  for (unsigned s = 0; s < shards; ++s) partials.emplace_back(n);

  auto worker = [&](unsigned id) {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::uint64_t lo = c * per;
      const std::uint64_t hi = std::min(total, lo + per);
      if (lo >= hi) return;
      body(partials[id], lo, hi);
      meter.add(hi - lo);
    }
  };
  if (shards == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(worker, s);
  }
  Partial merged(n);
  for (auto& p : partials) merged.merge(std::move(p));
  return merged;
}

inline CensusReport build_report(std::size_t n, const std::map<std::size_t, BigInt>& orbits,
                                 const NecklaceSet& set, const BigInt& high, CensusMethod m) {
  CensusReport r;
  r.n = n;
  r.method = m;
  r.high_orbits = high;
  for (const auto& [k, c] : orbits) {
    if (c == 0) continue;
    r.per_size[k].orbits = c;
    r.total_orbits += c;
  }
  for (std::size_t len : set.lengths()) {
    const std::size_t c = set.count_of_length(len);
    if (r.per_size.find(len) == r.per_size.end())
      throw CensusError("necklaces of length " + std::to_string(len) + " without orbits");
    r.per_size[len].necklaces = c;
    r.total_necklaces += c;
  }
  for (const auto& [k, sc] : r.per_size)
    if (sc.necklaces == 0 || sc.necklaces > sc.orbits)
      throw CensusError("inconsistent counts for orbit size " + std::to_string(k));
  return r;
}

inline Partial census_minrank(std::size_t n, const CensusOptions& opt, ProgressMeter& meter) {
  return run_sharded(n, opt.shards, meter, [n](Partial& part, std::uint64_t lo, std::uint64_t hi) {
    Entry perm[kMaxRankedLength];
    unrank_raw(n, lo, perm);
    std::vector<Entry> firsts;
    firsts.reserve(64);
    for (std::uint64_t r = lo; r < hi; ++r) {
      if (walk_if_least(perm, n, firsts)) part.record(firsts, n);
      std::next_permutation(perm, perm + n);
    }
  });
}

inline Partial census_necklace_set(std::size_t n, const CensusOptions& opt, ProgressMeter& meter) {
  return run_sharded(n, opt.shards, meter, [n](Partial& part, std::uint64_t lo, std::uint64_t hi) {
    Entry perm[kMaxRankedLength];
    unrank_raw(n, lo, perm);
    std::vector<Entry> firsts;
    firsts.reserve(64);
    for (std::uint64_t r = lo; r < hi; ++r) {
      walk_full(perm, n, firsts);
      part.necklaces.insert(canonical_rotation(firsts));
      std::next_permutation(perm, perm + n);
    }
  });
}

inline Partial census_bitmap(std::size_t n, ProgressMeter& meter) {
  const std::uint64_t total = factorial_u64(n);
  std::vector<std::uint64_t> seen((total + 63) / 64, 0);
  Partial part(n);
  Entry perm[kMaxRankedLength];
  Entry cur[kMaxRankedLength];
  std::vector<Entry> firsts;
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Entry>(i);
  for (std::uint64_t r = 0; r < total; ++r, std::next_permutation(perm, perm + n)) {
    if (seen[r >> 6] >> (r & 63) & 1) continue;
    std::memcpy(cur, perm, n);
    firsts.clear();
    do {
      const std::uint64_t q = rank_raw(cur, n);
      seen[q >> 6] |= std::uint64_t{1} << (q & 63);
      firsts.push_back(static_cast<Entry>(cur[0] + 1));
      topdrop_in_place(cur, n);
    } while (std::memcmp(cur, perm, n) != 0);
    part.record(firsts, n);
    meter.add(firsts.size());
  }
  return part;
}

}  // namespace detail

/// Exhaustive census of S_n, 1 <= n <= 20.
inline CensusResult census(std::size_t n, const CensusOptions& opt = {}) {
  if (n == 0 || n > kMaxRankedLength)
    throw std::out_of_range("census: n must be in [1, 20], got " + std::to_string(n));
  if (opt.method == CensusMethod::Bitmap && n > 12 && !(n == 13 && opt.allow_large_bitmap))
    throw std::out_of_range("census: bitmap method limited to n <= 12 (13 with allow_large_bitmap)");

  const auto t0 = std::chrono::steady_clock::now();
  detail::ProgressMeter meter(opt.progress, opt.progress_interval, factorial_u64(n));

  CensusResult out;
  std::map<std::size_t, BigInt> orbit_counts;
  BigInt high = 0;
  if (opt.method == CensusMethod::NecklaceSet) {
    auto part = detail::census_necklace_set(n, opt, meter);
    out.necklaces = std::move(part.necklaces);
    // Orbit counts come from the necklaces alone.
    out.necklaces.for_each([&](std::span<const Entry> e) {
      const Necklace nk(std::vector<Entry>(e.begin(), e.end()), n);
      const BigInt c = orbits_for_necklace(nk, n);
      orbit_counts[e.size()] += c;
      if (detail::has_high(e, n)) high += c;
    });
  } else {
    auto part = opt.method == CensusMethod::Bitmap ? detail::census_bitmap(n, meter)
                                                   : detail::census_minrank(n, opt, meter);
    for (auto [k, c] : part.orbits) orbit_counts[k] = c;
    high = part.high;
    out.necklaces = std::move(part.necklaces);
  }
  out.report = detail::build_report(n, orbit_counts, out.necklaces, high, opt.method);
  out.report.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  return out;
}

/// Canonical necklaces of all orbits of size exactly k, found by MinRank walks
/// capped at k steps. Much cheaper than a full census when k is small.
inline NecklaceSet necklaces_of_size(std::size_t n, std::size_t k, unsigned shards = 1,
                                     std::ostream* progress = nullptr) {
  if (n == 0 || n > kMaxRankedLength)
    throw std::out_of_range("necklaces_of_size: n must be in [1, 20]");
  detail::ProgressMeter meter(progress, std::chrono::milliseconds(2000), factorial_u64(n));
  auto part = detail::run_sharded(n, shards, meter, [n, k](detail::Partial& p, std::uint64_t lo,
                                                           std::uint64_t hi) {
    Entry perm[kMaxRankedLength];
    Entry cur[kMaxRankedLength];
    unrank_raw(n, lo, perm);
    std::vector<Entry> firsts;
    for (std::uint64_t r = lo; r < hi; ++r, std::next_permutation(perm, perm + n)) {
      std::memcpy(cur, perm, n);
      firsts.clear();
      for (std::size_t step = 1; step <= k; ++step) {
        firsts.push_back(static_cast<Entry>(cur[0] + 1));
        topdrop_in_place(cur, n);
        const int c = std::memcmp(cur, perm, n);
        if (c < 0 || (c == 0 && step < k)) break;
        if (c == 0) p.necklaces.insert(canonical_rotation(firsts));
      }
    }
  });
  return std::move(part.necklaces);
}

/// Canonical necklaces of all orbits of size at most k, in one pass of capped
/// walks. Same cost as necklaces_of_size(n, k).
inline NecklaceSet necklaces_up_to_size(std::size_t n, std::size_t k, unsigned shards = 1,
                                        std::ostream* progress = nullptr) {
  if (n == 0 || n > kMaxRankedLength)
    throw std::out_of_range("necklaces_up_to_size: n must be in [1, 20]");
  detail::ProgressMeter meter(progress, std::chrono::milliseconds(2000), factorial_u64(n));
  auto part = detail::run_sharded(n, shards, meter, [n, k](detail::Partial& p, std::uint64_t lo,
                                                           std::uint64_t hi) {
    Entry perm[kMaxRankedLength];
    Entry cur[kMaxRankedLength];
    unrank_raw(n, lo, perm);
    std::vector<Entry> firsts;
    for (std::uint64_t r = lo; r < hi; ++r, std::next_permutation(perm, perm + n)) {
      std::memcpy(cur, perm, n);
      firsts.clear();
      for (std::size_t step = 1; step <= k; ++step) {
        firsts.push_back(static_cast<Entry>(cur[0] + 1));
        topdrop_in_place(cur, n);
        const int c = std::memcmp(cur, perm, n);
        if (c < 0) break;
        if (c == 0) {
          p.necklaces.insert(canonical_rotation(firsts));
          break;
        }
      }
    }
  });
  return std::move(part.necklaces);
}

// ---------------------------------------------------------------------------
// Verification

struct CheckEntry {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct VerificationSummary {
  std::vector<CheckEntry> entries;
  bool all_passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.pass; });
  }
};

namespace detail {
inline std::string str(const BigInt& v) { return v.str(); }
}  // namespace detail

/// Cross-checks a census against every known count and constraint. Failures
/// become entries; nothing throws.
inline VerificationSummary verify_report(const CensusReport& r, const NecklaceSet& necklaces) {
  VerificationSummary out;
  const std::size_t n = r.n;
  using detail::str;

  // closed forms: exact sizes, then lower bounds
  for (std::size_t k : {2, 3, 4, 5, 6, 8}) {
    const auto cf = closed_form(n, k);
    if (!cf) continue;
    const BigInt got = r.orbits_of_size(k);
    const bool exact = cf->kind == CountResult::Kind::Exact;
    const bool ok = exact ? got == cf->value : got >= cf->value;
    out.entries.push_back({(exact ? "exact-count-size-" : "lower-bound-size-") + std::to_string(k),
                           ok,
                           "census=" + str(got) + (exact ? " expected=" : " bound=") + str(cf->value)});
  }

  // orbits touching n or n-1
  {
    const BigInt want = n >= 1 ? factorial(n - 1) : BigInt(0);
    out.entries.push_back({"high-orbit-count", r.high_orbits == want,
                           "census=" + str(r.high_orbits) + " expected=" + str(want)});
  }

  // shape of necklaces touching n or n-1, parity and step-product constraints
  {
    std::string shape_fail, parity_fail, product_fail;
    necklaces.for_each([&](std::span<const Entry> e) {
      if (n >= 2 && shape_fail.empty() && detail::has_high(e, n)) {
        std::size_t high = 0;
        for (Entry x : e)
          if (x == n || x + 1u == n) ++high;
        if (e.size() % 2 != 0 || high != 2) shape_fail = format_entries(e);
      }
      if (parity_fail.empty() && !necklace_parity_ok(e, n)) parity_fail = format_entries(e);
      if (product_fail.empty() && !sigma_product_is_identity(e, n)) product_fail = format_entries(e);
    });
    out.entries.push_back({"high-necklace-shape", shape_fail.empty(),
                           shape_fail.empty() ? "even length, two high entries" : shape_fail});
    out.entries.push_back({"necklace-parity", parity_fail.empty(),
                           parity_fail.empty() ? std::to_string(necklaces.size()) + " necklaces"
                                               : parity_fail});
    out.entries.push_back({"step-product-identity", product_fail.empty(),
                           product_fail.empty() ? std::to_string(necklaces.size()) + " necklaces"
                                                : product_fail});
  }

  if (n >= 2 && n <= 14) {
    const BigInt s7 = r.orbits_of_size(7);
    out.entries.push_back({"no-size-7", s7 == 0, "census=" + str(s7)});
  }

  {
    BigInt weighted = 0;
    for (const auto& [k, c] : r.per_size) weighted += c.orbits * k;
    const BigInt want = factorial(n);
    out.entries.push_back({"partition-identity", weighted == want,
                           "sum k*orbits=" + str(weighted) + " n!=" + str(want)});
  }

  // orbit counts recomputed from the necklaces, size by size
  {
    std::map<std::size_t, BigInt> derived;
    std::string err;
    necklaces.for_each([&](std::span<const Entry> e) {
      try {
        derived[e.size()] += orbits_for_necklace(Necklace(std::vector<Entry>(e.begin(), e.end()), n), n);
      } catch (const NonIntegralCount& ex) {
        if (err.empty()) err = ex.what();
      }
    });
    std::string mismatch = err;
    for (const auto& [k, c] : r.per_size) {
      if (!mismatch.empty()) break;
      const BigInt d = derived.count(k) ? derived[k] : BigInt(0);
      if (d != c.orbits)
        mismatch = "size " + std::to_string(k) + ": derived " + str(d) + " vs " + str(c.orbits);
    }
    out.entries.push_back({"necklace-derived-counts", mismatch.empty(),
                           mismatch.empty() ? "all sizes agree" : mismatch});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Export

enum class CsvKind { Orbits, Necklaces };

inline void write_csv(const CensusReport& r, CsvKind kind, std::ostream& os) {
  os << (kind == CsvKind::Orbits ? "Orbit Size,Number of Orbits\n" : "Orbit Size,Number of Necklaces\n");
  for (const auto& [k, c] : r.per_size) {
    const BigInt& v = kind == CsvKind::Orbits ? c.orbits : c.necklaces;
    if (v == 0) continue;
    os << k << ',' << v.str() << '\n';
  }
}

inline std::string csv_string(const CensusReport& r, CsvKind kind) {
  std::ostringstream os;
  write_csv(r, kind, os);
  return os.str();
}

inline void export_csv(const CensusReport& r, CsvKind kind, const std::filesystem::path& dest) {
  std::ofstream f(dest, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + dest.string() + "' for writing");
  write_csv(r, kind, f);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + dest.string() + "' failed");
}

}  // namespace topdrop
