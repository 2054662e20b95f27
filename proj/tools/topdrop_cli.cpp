// topdrop: command-line front end for the topdrop library.
//
// Exit status: 0 success, 1 a verification failed, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "topdrop/report_json.hpp"
#include "topdrop/topdrop.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

unsigned default_shards() {
  if (const char* env = std::getenv("TOPDROP_SHARDS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring TOPDROP_SHARDS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_map(const std::string& text, long long count, bool labels) {
  const topdrop::Perm p = topdrop::parse_perm(text);
  const long long step = count >= 0 ? 1 : -1;
  std::vector<std::string> rows;
  topdrop::Perm cur = p;
  for (long long k = 0;; k += step) {
    std::string line = topdrop::to_string(cur);
    if (labels) line = "T^" + std::to_string(k) + " = " + line;
    rows.push_back(std::move(line));
    if (k == count) break;
    cur = step > 0 ? topdrop::topdrop(cur) : topdrop::topdrop_inv(cur);
  }
  if (labels) {
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.find('='));
    for (auto& r : rows) r.insert(0, width - r.find('='), ' ');
  }
  for (const auto& r : rows) std::cout << r << '\n';
  return kOk;
}

int cmd_orbit(const std::string& text) {
  const topdrop::Perm p = topdrop::parse_perm(text);
  const auto members = topdrop::orbit_members(p);
  std::cout << "size=" << members.size() << '\n';
  for (const auto& m : members) std::cout << topdrop::to_string(m) << '\n';
  return kOk;
}

int cmd_necklace(const std::string& text) {
  const topdrop::Perm p = topdrop::parse_perm(text);
  const topdrop::Necklace nk = topdrop::necklace(p);
  std::cout << topdrop::to_string(nk) << " period=" << nk.period() << '\n';
  std::cout << "canonical=" << topdrop::format_entries(nk.canonical_entries()) << '\n';
  return kOk;
}

struct CensusArgs {
  std::size_t n = 0;
  std::string method = "minrank";
  unsigned shards = 0;
  std::string csv_orbits, csv_necklaces, json;
  bool verify = false;
  bool progress = false;
  bool allow_large_bitmap = false;
};

int cmd_census(const CensusArgs& a) {
  topdrop::CensusOptions opt;
  try {
    opt.method = topdrop::parse_method(a.method);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (a.n < 1 || a.n > topdrop::kMaxRankedLength) {
    std::cerr << "error: census supports 1 <= n <= 20, got " << a.n << '\n';
    return kUsage;
  }
  opt.shards = a.shards ? a.shards : default_shards();
  opt.allow_large_bitmap = a.allow_large_bitmap;
  if (a.progress) opt.progress = &std::cerr;

  topdrop::CensusResult res;
  try {
    res = topdrop::census(a.n, opt);
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  const auto& r = res.report;
  std::cout << "n=" << r.n << " method=" << topdrop::method_name(r.method)
            << " elapsed_ms=" << r.elapsed.count() << '\n';
  std::cout << "size,orbits,necklaces\n";
  for (const auto& [k, c] : r.per_size) std::cout << k << ',' << c.orbits << ',' << c.necklaces << '\n';
  std::cout << "total orbits=" << r.total_orbits << " necklaces=" << r.total_necklaces << '\n';

  if (!a.csv_orbits.empty()) topdrop::export_csv(r, topdrop::CsvKind::Orbits, a.csv_orbits);
  if (!a.csv_necklaces.empty()) topdrop::export_csv(r, topdrop::CsvKind::Necklaces, a.csv_necklaces);

  std::optional<topdrop::VerificationSummary> summary;
  if (a.verify) {
    summary = topdrop::verify_report(r, res.necklaces);
    for (const auto& e : summary->entries)
      std::cout << (e.pass ? "PASS " : "FAIL ") << e.check << ": " << e.detail << '\n';
  }
  if (!a.json.empty()) {
    std::ofstream f(a.json, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + a.json + "' for writing");
    f << topdrop::report_json(r, summary ? &*summary : nullptr).dump(2) << '\n';
  }
  return summary && !summary->all_passed() ? kVerifyFailed : kOk;
}

int cmd_families(std::size_t n, std::size_t size) {
  using topdrop::FamilyGroup;
  std::vector<FamilyGroup> groups;
  switch (size) {
    case 2: groups = {FamilyGroup::Size2}; break;
    case 4: groups = {FamilyGroup::Size4}; break;
    case 5: groups = {FamilyGroup::Size5}; break;
    case 6: groups = {FamilyGroup::Size6Same, FamilyGroup::Size6Mixed}; break;
    case 8: groups = {FamilyGroup::Size8Same, FamilyGroup::Size8Mixed}; break;
    default:
      std::cerr << "error: --size must be one of 2, 4, 5, 6, 8\n";
      return kUsage;
  }
  if (n < 1 || n > topdrop::kMaxLength) {
    std::cerr << "error: n must be in [1, 64]\n";
    return kUsage;
  }
  bool ok = true;
  std::vector<topdrop::Necklace> all;
  std::vector<std::string> summary;
  for (FamilyGroup g : groups) {
    std::size_t generated = 0;
    std::string label;
    for (topdrop::FamilyId f : topdrop::members_of(g)) {
      for (auto& nk : topdrop::gen_family(f, n)) {
        std::cout << topdrop::family_name(f) << ' ' << topdrop::to_string(nk) << '\n';
        all.push_back(std::move(nk));
        ++generated;
      }
      label += (label.empty() ? "" : "+") + std::string(topdrop::family_name(f));
    }
    const auto formula = topdrop::family_count(g, n);
    ok = ok && formula.value == generated;
    summary.push_back("# " + label + " necklaces=" + std::to_string(generated) +
                      " formula=" + formula.value.str());
  }
  for (const auto& s : summary) std::cout << s << '\n';
  const auto orbits = topdrop::count_orbits_of_size(all, size, n);
  std::cout << "# orbits from these necklaces=" << orbits;
  if (auto cf = topdrop::closed_form(n, size))
    std::cout << " closed-form " << topdrop::to_string(cf->kind) << '=' << cf->value;
  std::cout << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_parity(const std::string& text, std::size_t n) {
  if (n < 1 || n > topdrop::kMaxLength) {
    std::cerr << "error: n must be in [1, 64]\n";
    return kUsage;
  }
  const auto vals = topdrop::parse_necklace_values(text);
  std::vector<topdrop::Entry> entries;
  for (int v : vals) {
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw topdrop::ParseError("necklace entry " + std::to_string(v) + " outside [1, " +
                                std::to_string(n) + "]");
    entries.push_back(static_cast<topdrop::Entry>(v));
  }
  const auto b = topdrop::parity_breakdown(entries, n);
  std::cout << b.sum_string() << ' ' << (b.even() ? "even" : "odd") << " → "
            << (b.even() ? "PASS" : "FAIL") << '\n';
  std::cout << (b.even() ? "VALID-PARITY" : "INVALID-PARITY") << '\n';
  if (!entries.empty())
    std::cout << "step-product " << (topdrop::sigma_product_is_identity(entries, n) ? "identity" : "not identity")
              << '\n';
  return b.even() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topdrop map: orbits, necklaces, censuses and counting checks"};
  app.require_subcommand(1);

  std::string perm_text;
  long long count = 1;
  bool labels = false;
  auto* map = app.add_subcommand("map", "Print T^0 .. T^count of a permutation");
  map->add_option("perm", perm_text, "Permutation, e.g. 6132574 or 2,5,11,...")->required();
  map->add_option("--count", count, "Number of steps; negative walks backwards")->allow_extra_args(false);
  map->add_flag("--labels", labels, "Prefix each line with T^k");

  auto* orbit = app.add_subcommand("orbit", "Print the orbit size and members");
  orbit->add_option("perm", perm_text)->required();

  auto* neck = app.add_subcommand("necklace", "Print the necklace, its period and canonical form");
  neck->add_option("perm", perm_text)->required();

  CensusArgs ca;
  auto* cen = app.add_subcommand("census", "Exhaustive orbit census of S_n");
  cen->add_option("n", ca.n)->required();
  cen->add_option("--method", ca.method, "minrank | bitmap | necklace-set");
  cen->add_option("--shards", ca.shards, "Worker threads (default: $TOPDROP_SHARDS or all cores)");
  cen->add_option("--csv-orbits", ca.csv_orbits, "Write orbit counts CSV");
  cen->add_option("--csv-necklaces", ca.csv_necklaces, "Write necklace counts CSV");
  cen->add_option("--json", ca.json, "Write JSON report");
  cen->add_flag("--verify", ca.verify, "Check all known counts and constraints");
  cen->add_flag("--progress", ca.progress, "Report progress on stderr");
  cen->add_flag("--allow-large-bitmap", ca.allow_large_bitmap, "Permit the bitmap method at n = 13");

  std::size_t fam_n = 0, fam_size = 0;
  auto* fam = app.add_subcommand("families", "List the parametrised necklace families");
  fam->add_option("n", fam_n)->required();
  fam->add_option("--size", fam_size, "2, 4, 5, 6 or 8")->required();

  std::string neck_text;
  std::size_t par_n = 0;
  auto* par = app.add_subcommand("parity", "Parity test of a necklace");
  par->add_option("necklace", neck_text, "e.g. \"[2,3,11,4,10,2,5,8,2,6,7]\"")->required();
  par->add_option("n", par_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*map) return cmd_map(perm_text, count, labels);
    if (*orbit) return cmd_orbit(perm_text);
    if (*neck) return cmd_necklace(perm_text);
    if (*cen) return cmd_census(ca);
    if (*fam) return cmd_families(fam_n, fam_size);
    if (*par) return cmd_parity(neck_text, par_n);
  } catch (const topdrop::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
