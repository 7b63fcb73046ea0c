// Command line front end.  All computation lives in the core library; this
// file only parses arguments, renders reports and maps error categories to
// the documented exit codes: 0 success, 1 verification failure, 2 usage,
// 3 resource guard.  Stdout is byte-deterministic for a given invocation and
// version; timings go to stderr.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zipring/character_ring.hpp"
#include "zipring/eo_classes.hpp"
#include "zipring/selftest.hpp"
#include "zipring/taut_ring.hpp"
#include "zipring/version.hpp"
#include "zipring/weyl.hpp"
#include "zipring/zip_oracle.hpp"

namespace {

using namespace zipring;
using nlohmann::json;

struct Options {
  std::string format = "text";
  std::string cache_dir;
  int jobs = 1;
  unsigned long long seed = 0;
  bool use_cache = false;
  bool refresh = false;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text) { std::fputs(text.c_str(), stdout); }

std::string join_dims(const std::vector<long>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

// Cache plumbing shared by the oracle commands.  --refresh drops the stored
// file first; both flags require a cache directory.
void check_cache_flags(const Options& opt) {
  if ((opt.use_cache || opt.refresh) && opt.cache_dir.empty())
    throw UsageError("--use-cache/--refresh need --cache-dir (or ZIPRING_CACHE_DIR)");
  if (opt.use_cache && opt.refresh)
    throw UsageError("--use-cache and --refresh are mutually exclusive");
}

void drop_cache_entries(const std::string& dir, const std::string& stem) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) return;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::string name = e.path().filename().string();
    if (name.rfind(stem, 0) == 0) fs::remove(e.path());
  }
}

// ring / hilbert ------------------------------------------------------------

int cmd_ring(int g, long d_max, const Options& opt) {
  auto r = ring(g);
  const Presentation& pres = r->presentation();
  std::vector<long> h = r->hilbert_function();
  if (d_max >= 0 && d_max + 1 < static_cast<long>(h.size()))
    h.resize(static_cast<size_t>(d_max) + 1);
  long total = 0;
  for (long v : h) total += v;

  Polynomial u1 = Polynomial::generator(pres.weights, 0);
  Polynomial ug = Polynomial::generator(pres.weights, static_cast<size_t>(g) - 1);
  std::string u1sq = r->normal_form(u1 * u1).to_string();
  std::string ugsq = r->normal_form(ug * ug).to_string();

  if (opt.format == "json") {
    json j;
    j["g"] = g;
    j["weights"] = pres.weights;
    auto& rel = j["relations"] = json::array();
    for (const Polynomial& f : pres.relations)
      rel.push_back({{"degree", f.degree()}, {"text", f.to_string()}});
    j["hilbert"] = h;
    j["dimension"] = total;
    j["identities"] = {{"u1^2", u1sq},
                       {"u" + std::to_string(g) + "^2", ugsq}};
    emit(j.dump() + "\n");
    return 0;
  }
  if (opt.format == "csv") {
    std::ostringstream os;
    os << "degree,dim\n";
    for (size_t d = 0; d < h.size(); ++d) os << d << "," << h[d] << "\n";
    emit(os.str());
    return 0;
  }
  std::ostringstream os;
  os << "genus " << g << "\n";
  for (const Polynomial& f : pres.relations)
    os << "relation degree " << f.degree() << ": " << f.to_string() << " = 0\n";
  os << "hilbert " << join_dims(h) << "\n";
  os << "dimension " << total << "\n";
  os << "u1^2 = " << u1sq << "\n";
  os << "u" << g << "^2 = " << ugsq << "\n";
  emit(os.str());
  return 0;
}

int cmd_hilbert(int g, const Options& opt) {
  std::vector<long> h = ring(g)->hilbert_function();
  if (opt.format == "json") {
    json j;
    j["g"] = g;
    j["hilbert"] = h;
    emit(j.dump() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "degree,dim\n";
    for (size_t d = 0; d < h.size(); ++d) os << d << "," << h[d] << "\n";
    emit(os.str());
  } else {
    emit(join_dims(h) + "\n");
  }
  return 0;
}

// weyl ----------------------------------------------------------------------

int cmd_weyl(int g, const Options& opt) {
  CosetTable table = CosetTable::build(g);
  Polynomial poincare = poincare_WP(g);
  if (opt.format == "json") {
    json j;
    j["g"] = g;
    auto& reps = j["reps"] = json::array();
    for (const CosetRep& r : table.reps())
      reps.push_back({{"rep", r.w.to_string()},
                      {"length", r.len},
                      {"partition", r.type.to_string()}});
    std::vector<long> coeffs(static_cast<size_t>(poincare.degree()) + 1, 0);
    for (const auto& [m, c] : poincare.terms())
      coeffs[static_cast<size_t>(m.wdeg)] = static_cast<long>(c.get_num().get_si());
    j["poincare"] = coeffs;
    emit(j.dump() + "\n");
  } else if (opt.format == "csv") {
    emit(table.to_csv());
  } else {
    std::ostringstream os;
    os << "cosets " << table.reps().size() << "\n";
    for (const CosetRep& r : table.reps())
      os << r.w.to_string() << "  length " << r.len << "  partition "
         << r.type.to_string() << "\n";
    os << "poincare " << poincare.to_string("t") << "\n";
    emit(os.str());
  }
  return 0;
}

// borel-check ---------------------------------------------------------------

int cmd_borel(int g, long p, long d_max, const Options& opt) {
  BorelReport rep = ideals_equal_by_degree(g, Integer(p), d_max);
  if (opt.format == "json") {
    emit(rep.to_json_string() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "degree,rank_plain,rank_twisted,equal\n";
    for (const auto& row : rep.degrees)
      os << row.d << "," << row.rank_borel << "," << row.rank_twisted << ","
         << (row.equal ? "yes" : "no") << "\n";
    emit(os.str());
  } else {
    std::ostringstream os;
    os << "genus " << g << " prime " << p << "\n";
    for (const auto& row : rep.degrees)
      os << "degree " << row.d << ": ranks " << row.rank_borel << "/" << row.rank_twisted
         << (row.equal ? " equal" : " DIFFER") << "\n";
    os << "equal in all degrees <= " << rep.d_max << ": " << (rep.all_equal ? "yes" : "no")
       << "\n";
    os << "quotient dims match hilbert: " << (rep.dims_match_hilbert ? "yes" : "no") << "\n";
    emit(os.str());
  }
  if (!rep.all_equal || !rep.dims_match_hilbert)
    throw VerificationError("graded spans differ at genus " + std::to_string(g));
  return 0;
}

// prank ---------------------------------------------------------------------

int cmd_prank(int g, int f, long p, const Options& opt) {
  StratumTable table = stratum_table(g, Integer(p));
  const StratumRow* row = nullptr;
  for (const auto& r : table.rows)
    if (r.f == f) row = &r;
  if (!row) throw UsageError("p-rank must satisfy 0 <= f < g");
  if (opt.format == "json") {
    json j;
    j["g"] = g;
    j["p"] = p;
    j["f"] = f;
    j["codim"] = row->codim;
    j["coefficient"] = row->coefficient.get_str();
    j["class"] = row->class_text;
    emit(j.dump() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "g,p,f,codim,coefficient,class\n";
    os << g << "," << p << "," << f << "," << row->codim << "," << row->coefficient.get_str()
       << ",\"" << row->class_text << "\"\n";
    emit(os.str());
  } else {
    std::ostringstream os;
    os << "coefficient " << row->coefficient.get_str() << "\n";
    os << "class " << row->class_text << "\n";
    os << "codim " << row->codim << "\n";
    emit(os.str());
  }
  return 0;
}

// oracle / iota -------------------------------------------------------------

int cmd_oracle(int g, long p, const Options& opt) {
  check_cache_flags(opt);
  if (opt.refresh)
    drop_cache_entries(opt.cache_dir, "oracle-g" + std::to_string(g) + "-p" + std::to_string(p));
  OrbitDecomposition dec = opt.cache_dir.empty()
                               ? orbit_decomposition(g, p)
                               : cached_orbit_decomposition(opt.cache_dir, g, p);
  if (opt.format == "json") {
    emit(dec.to_json_string() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "label,p_rank,a_number,points,orbits\n";
    for (const auto& c : dec.classes)
      os << "\"" << (c.label ? c.label->to_string() : "?") << "\"," << c.p_rank << ","
         << c.a_number << "," << c.points << "," << c.orbit_count << "\n";
    emit(os.str());
  } else {
    std::ostringstream os;
    os << "zips " << dec.zip_count << "\n";
    os << "classes " << dec.classes.size() << "\n";
    for (const auto& c : dec.classes)
      os << "class " << (c.label ? c.label->to_string() : "?") << "  prank " << c.p_rank
         << "  a " << c.a_number << "  points " << c.points << "  orbits " << c.orbit_count
         << "\n";
    emit(os.str());
  }
  return 0;
}

int cmd_iota(int g, int r, long p, const Options& opt) {
  check_cache_flags(opt);
  if (opt.refresh)
    drop_cache_entries(opt.cache_dir, "iota-g" + std::to_string(g) + "-r" + std::to_string(r) +
                                          "-p" + std::to_string(p));
  IotaTable t = opt.cache_dir.empty() ? derive_iota(g, r, p)
                                      : cached_iota(opt.cache_dir, g, r, p);
  if (opt.format == "json") {
    emit(t.to_json_string() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "induced,ambient\n";
    for (const auto& [a, b] : t.by_label)
      os << "\"" << a.to_string() << "\",\"" << b.to_string() << "\"\n";
    emit(os.str());
  } else {
    std::ostringstream os;
    os << "well-defined " << (t.well_defined ? "yes" : "no") << "\n";
    os << "injective " << (t.injective ? "yes" : "no") << "\n";
    os << "p-rank additive " << (t.prank_additive ? "yes" : "no") << "\n";
    os << "matches closed form " << (t.matches_closed_form ? "yes" : "no") << "\n";
    for (const auto& [a, b] : t.by_label)
      os << a.to_string() << " -> " << b.to_string() << "\n";
    emit(os.str());
  }
  if (!t.well_defined || !t.injective || !t.prank_additive || !t.matches_closed_form)
    throw VerificationError("degeneration table failed verification");
  return 0;
}

// selftest ------------------------------------------------------------------

int cmd_selftest(const std::string& profile, const Options& opt) {
  SelftestReport rep = run_selftest(profile, opt.cache_dir);
  if (opt.format == "json") {
    emit(rep.to_json_string() + "\n");
  } else if (opt.format == "csv") {
    std::ostringstream os;
    os << "criterion,module,name,passed\n";
    for (const auto& r : rep.results)
      os << r.number << "," << r.module << "," << r.name << ","
         << (r.passed ? "yes" : "no") << "\n";
    emit(os.str());
  } else {
    std::ostringstream os;
    for (const auto& r : rep.results) {
      os << "criterion " << r.number << " [" << r.module << "] " << r.name << " "
         << (r.passed ? "PASS" : "FAIL");
      if (!r.passed) os << "  " << r.detail;
      os << "\n";
    }
    os << (rep.all_passed ? "all criteria passed" : "criteria FAILED") << "\n";
    emit(os.str());
  }
  if (profile == "full")
    for (const auto& r : rep.results)
      std::fprintf(stderr, "criterion %d: %.2fs\n", r.number, r.seconds);
  if (!rep.all_passed) {
    for (const auto& r : rep.results)
      if (!r.passed) throw VerificationError(r.detail);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic-p stratification toolkit"};
  app.set_version_flag("--version", std::string(toolkit_version));
  app.require_subcommand(1);
  // Global flags remain valid after the subcommand name.
  app.fallthrough();

  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->envname("ZIPRING_FORMAT")
      ->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir, "Directory for oracle result caches")
      ->envname("ZIPRING_CACHE_DIR");
  app.add_option("--jobs", opt.jobs, "Parallelism level (reserved; computations are single-threaded)")
      ->check(CLI::PositiveNumber)
      ->envname("ZIPRING_JOBS");
  app.add_option("--seed", opt.seed, "Seed for randomized property sampling (reserved)")
      ->envname("ZIPRING_SEED");

  int g = 1, f = 0, r = 1;
  long p = 2, d_max = -1;
  std::string profile = "quick";

  CLI::App* c_ring = app.add_subcommand("ring", "Presentation, Hilbert function and identities");
  c_ring->add_option("--g", g, "Genus")->required();
  c_ring->add_option("--d-max", d_max, "Cap the displayed degrees");

  CLI::App* c_hilb = app.add_subcommand("hilbert", "Graded dimensions only");
  c_hilb->add_option("--g", g, "Genus")->required();

  CLI::App* c_weyl = app.add_subcommand("weyl", "Minimal coset representatives and lengths");
  c_weyl->add_option("--g", g, "Genus")->required();

  CLI::App* c_borel = app.add_subcommand("borel-check", "Compare plain and twisted ideal spans");
  c_borel->add_option("--g", g, "Genus")->required();
  c_borel->add_option("--p", p, "Prime")->required();
  c_borel->add_option("--d-max", d_max, "Largest degree to compare");

  CLI::App* c_prank = app.add_subcommand("prank", "Stratum class for a maximal p-rank");
  c_prank->add_option("--g", g, "Genus")->required();
  c_prank->add_option("--f", f, "Maximal p-rank on the stratum")->required();
  c_prank->add_option("--p", p, "Prime")->required();

  CLI::App* c_oracle = app.add_subcommand("oracle", "Enumerate zips and their classes");
  c_oracle->add_option("--g", g, "Genus")->required();
  c_oracle->add_option("--p", p, "Prime")->required();
  c_oracle->add_flag("--use-cache", opt.use_cache, "Reuse cached enumeration results");
  c_oracle->add_flag("--refresh", opt.refresh, "Recompute and overwrite the cache entry");

  CLI::App* c_iota = app.add_subcommand("iota", "Degeneration map between class sets");
  c_iota->add_option("--g", g, "Ambient genus")->required();
  c_iota->add_option("--r", r, "Corank of the degeneration")->required();
  c_iota->add_option("--p", p, "Prime")->required();
  c_iota->add_flag("--use-cache", opt.use_cache, "Reuse cached enumeration results");
  c_iota->add_flag("--refresh", opt.refresh, "Recompute and overwrite the cache entry");

  CLI::App* c_self = app.add_subcommand("selftest", "Run the verification suite");
  c_self->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_ring) return cmd_ring(g, d_max, opt);
    if (*c_hilb) return cmd_hilbert(g, opt);
    if (*c_weyl) return cmd_weyl(g, opt);
    if (*c_borel) return cmd_borel(g, p, d_max, opt);
    if (*c_prank) return cmd_prank(g, f, p, opt);
    if (*c_oracle) return cmd_oracle(g, p, opt);
    if (*c_iota) return cmd_iota(g, r, p, opt);
    if (*c_self) return cmd_selftest(profile, opt);
    std::fprintf(stderr, "no subcommand selected\n");
    return 2;
  } catch (const ResourceGuardError& e) {
    nlohmann::json err = {{"error", "resource_guard"}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 3;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "verification failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
