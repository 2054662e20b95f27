#pragma once

// JSON rendering of a census report, keys in a fixed order.

#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

#include "topdrop/census.hpp"

namespace topdrop {

inline nlohmann::ordered_json report_json(const CensusReport& r, const VerificationSummary* v = nullptr) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = r.n;
  j["method"] = std::string(method_name(r.method));
  ordered_json sizes = ordered_json::array();
  // Counts are decimal strings when they overflow 64 bits.
  auto num = [](const BigInt& b) -> ordered_json {
    if (b <= BigInt(std::numeric_limits<std::uint64_t>::max())) return b.convert_to<std::uint64_t>();
    return b.str();
  };
  for (const auto& [k, c] : r.per_size) {
    ordered_json row;
    row["size"] = k;
    row["orbits"] = num(c.orbits);
    row["necklaces"] = num(c.necklaces);
    sizes.push_back(std::move(row));
  }
  j["per_size"] = std::move(sizes);
  ordered_json totals;
  totals["orbits"] = num(r.total_orbits);
  totals["necklaces"] = num(r.total_necklaces);
  j["totals"] = std::move(totals);
  j["elapsed_ms"] = r.elapsed.count();
  ordered_json checks = ordered_json::array();
  if (v) {
    for (const auto& e : v->entries) {
      ordered_json c;
      c["check"] = e.check;
      c["pass"] = e.pass;
      c["detail"] = e.detail;
      checks.push_back(std::move(c));
    }
  }
  j["verification"] = std::move(checks);
  return j;
}

}  // namespace topdrop
