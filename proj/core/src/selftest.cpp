#include "zipring/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "zipring/character_ring.hpp"
#include "zipring/eo_classes.hpp"
#include "zipring/weyl.hpp"

namespace zipring {

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (ok && !cond) {
      ok = false;
      detail = what;
    }
  }
};

std::string at(const std::string& what, int g) { return what + " at g=" + std::to_string(g); }

std::string at(const std::string& what, int g, long p) {
  return what + " at g=" + std::to_string(g) + ", p=" + std::to_string(p);
}

// 1: graded dimensions for g = 1..8 match the product formula, 2^g total.
Check dimension_theorem(bool quick) {
  Check c;
  int gmax = quick ? 3 : 8;
  for (int g = 1; g <= gmax && c.ok; ++g) {
    std::vector<long> h = ring(g)->hilbert_function();
    c.require(h == expected_hilbert(g), at("taut_ring: Hilbert function mismatch", g));
    long total = std::accumulate(h.begin(), h.end(), 0L);
    c.require(total == (1L << g), at("taut_ring: total dimension is not 2^g", g));
    c.require(static_cast<long>(h.size()) - 1 == static_cast<long>(g) * (g + 1) / 2,
              at("taut_ring: top degree mismatch", g));
  }
  return c;
}

// 2: u_1^2 rewrites to 2 u_2 (g >= 2) and u_g^2 to 0, g = 1..8.
Check flagship_identities(bool quick) {
  Check c;
  int gmax = quick ? 3 : 8;
  for (int g = 1; g <= gmax && c.ok; ++g) {
    auto rd = ring(g);
    const auto& w = rd->presentation().weights;
    Polynomial u1 = Polynomial::generator(w, 0);
    Polynomial ug = Polynomial::generator(w, static_cast<size_t>(g - 1));
    if (g >= 2) {
      Polynomial two_u2 = Polynomial::generator(w, 1) * Rational(2);
      c.require(rd->normal_form(u1 * u1) == two_u2,
                at("taut_ring: u1^2 does not rewrite to 2*u2", g));
    }
    c.require(rd->normal_form(ug * ug).is_zero(),
              at("taut_ring: top generator square is nonzero", g));
  }
  return c;
}

// 3: the quotient by the top generator reproduces the next ring down.
Check quotient_isomorphism(bool quick) {
  Check c;
  int gmax = quick ? 3 : 6;
  for (int g = 2; g <= gmax && c.ok; ++g) {
    QuotientReport rep = quotient_by_top_lambda(g);
    c.require(rep.dims_match, at("taut_ring: quotient dimensions differ", g));
    c.require(rep.bases_match, at("taut_ring: quotient bases differ", g));
    c.require(rep.multiplicative, at("taut_ring: quotient products differ", g));
  }
  return c;
}

// 4: 2^g minimal coset representatives; length generating function equals
// the ring's Hilbert function.
Check coset_poincare(bool quick) {
  Check c;
  int gmax = quick ? 3 : 4;
  for (int g = 1; g <= gmax && c.ok; ++g) {
    CosetTable table = CosetTable::build(g);
    c.require(static_cast<long>(table.reps().size()) == (1L << g),
              at("weyl: coset count is not 2^g", g));
    Polynomial poincare = poincare_WP(g);
    std::vector<long> h = ring(g)->hilbert_function();
    bool match = true;
    for (size_t d = 0; d < h.size(); ++d) {
      Rational want(h[d]);
      const Rational* got = poincare.coeff(poincare.make_monomial({static_cast<uint32_t>(d)}));
      Rational have = got ? *got : Rational(0);
      if (have != want) match = false;
    }
    c.require(match, at("weyl: coset lengths do not reproduce the Hilbert function", g));
  }
  return c;
}

// 5: twisted and untwisted ideals agree degreewise; the defining relation
// maps onto the symmetric-square generators.
Check ideal_equality(bool quick) {
  Check c;
  int gmax = quick ? 3 : 4;
  std::vector<long> primes = quick ? std::vector<long>{2} : std::vector<long>{2, 3, 5};
  for (int g = 1; g <= gmax && c.ok; ++g)
    for (long p : primes) {
      BorelReport rep = ideals_equal_by_degree(g, Integer(p));
      c.require(rep.all_equal, at("character_ring: ideals differ in some degree", g, p));
      c.require(rep.dims_match_hilbert,
                at("character_ring: quotient dimensions drift from the ring", g, p));
      if (!c.ok) break;
    }
  int cmax = quick ? 3 : 5;
  for (int g = 1; g <= cmax && c.ok; ++g) {
    ChernMapReport rep = chern_map_check(g);
    c.require(rep.identity_holds, at("character_ring: substituted relation mismatch", g));
    c.require(rep.image_in_ideal, at("character_ring: relation image is not the ideal combination", g));
    c.require(rep.dims_match_hilbert, at("character_ring: invariant quotient dimensions differ", g));
  }
  return c;
}

// 6: zip counts match the closed form and classes are as expected; the
// invariant is constant on conjugation orbits (checked pointwise).
Check oracle_counts(bool quick, const std::string& cache_dir, const OracleLimits& limits) {
  Check c;
  struct Case {
    int g;
    long p;
    uint64_t zips;
    long classes;
  };
  std::vector<Case> cases = {{1, 2, 9, 2}, {2, 2, 1350, 4}};
  if (!quick) {
    cases.push_back({1, 3, 32, 2});
    cases.push_back({1, 5, 144, 2});
    cases.push_back({2, 3, 76800, 4});
  }
  for (const auto& cs : cases) {
    OrbitDecomposition dec = cache_dir.empty()
                                 ? orbit_decomposition(cs.g, cs.p, limits)
                                 : cached_orbit_decomposition(cache_dir, cs.g, cs.p, limits);
    c.require(Integer(static_cast<unsigned long>(dec.zip_count)) == zip_count_formula(cs.g, cs.p),
              at("zip_oracle: enumerated count differs from the closed form", cs.g, cs.p));
    c.require(dec.zip_count == cs.zips, at("zip_oracle: unexpected zip count", cs.g, cs.p));
    c.require(static_cast<long>(dec.classes.size()) == cs.classes,
              at("zip_oracle: unexpected class count", cs.g, cs.p));
    // A class may split into several rational orbits, but never be empty.
    for (const auto& cls : dec.classes)
      c.require(cls.orbit_count >= 1 && cls.points >= 1,
                at("zip_oracle: empty invariant class", cs.g, cs.p));
    c.require(prank_census_matches(dec), at("zip_oracle: p-rank census mismatch", cs.g, cs.p));
    uint64_t covered = 0;
    for (const auto& cls : dec.classes) covered += cls.points;
    c.require(covered == dec.zip_count, at("zip_oracle: class sizes do not cover", cs.g, cs.p));

    // Pointwise: every zip's invariant must be one of the class invariants,
    // with matching per-invariant totals.
    std::map<std::string, uint64_t> recount;
    for_each_zip(cs.g, cs.p, limits,
                 [&](const FpMat& f) { recount[zip_invariant(Zip(cs.g, cs.p, f)).key()] += 1; });
    bool constant = recount.size() == dec.classes.size();
    for (const auto& cls : dec.classes)
      if (!recount.count(cls.invariant_key) || recount[cls.invariant_key] != cls.points)
        constant = false;
    c.require(constant, at("zip_oracle: invariant is not constant on orbits", cs.g, cs.p));
    if (!c.ok) break;
  }
  if (c.ok && !quick) {
    // g=1, p=2 by hand: the nilpotent class has 3 points, the other 6.
    OrbitDecomposition dec = orbit_decomposition(1, 2, limits);
    std::vector<uint64_t> sizes;
    for (const auto& cls : dec.classes) sizes.push_back(cls.points);
    std::sort(sizes.begin(), sizes.end());
    c.require(sizes == std::vector<uint64_t>{3, 6}, "zip_oracle: class sizes at g=1, p=2");
  }
  return c;
}

// 7: reduction along an isotropic line or plane induces a well-defined,
// injective, prime-independent map on classes matching the closed form.
Check degeneration_map(bool quick, const std::string& cache_dir, const OracleLimits& limits) {
  Check c;
  struct Case {
    int g;
    int r;
    long p;
  };
  std::vector<Case> cases = {{2, 1, 2}};
  if (!quick) {
    cases.push_back({2, 1, 3});
    cases.push_back({3, 1, 2});
    cases.push_back({3, 2, 2});
  }
  std::map<std::pair<int, int>, std::vector<IotaTable>> by_gr;
  for (const auto& cs : cases) {
    IotaTable t = cache_dir.empty() ? derive_iota(cs.g, cs.r, cs.p, limits)
                                    : cached_iota(cache_dir, cs.g, cs.r, cs.p, limits);
    std::string where = "g=" + std::to_string(cs.g) + ", r=" + std::to_string(cs.r) +
                        ", p=" + std::to_string(cs.p);
    c.require(t.well_defined, "zip_oracle: induced map not well-defined at " + where);
    c.require(t.injective, "zip_oracle: induced map not injective at " + where);
    c.require(t.prank_additive, "zip_oracle: p-rank not additive at " + where);
    c.require(t.induced_class_count == (1L << (cs.g - cs.r)),
              "zip_oracle: induced classes missing at " + where);
    c.require(t.labels_complete && t.matches_closed_form,
              "zip_oracle: induced map differs from the closed form at " + where);
    by_gr[{cs.g, cs.r}].push_back(std::move(t));
    if (!c.ok) break;
  }
  if (c.ok) {
    for (const auto& [gr, tables] : by_gr)
      for (size_t i = 1; i < tables.size(); ++i) {
        c.require(tables[i].by_invariant == tables[0].by_invariant &&
                      tables[i].by_label == tables[0].by_label,
                  "zip_oracle: induced map depends on the prime at g=" +
                      std::to_string(gr.first) + ", r=" + std::to_string(gr.second));
      }
  }
  return c;
}

// 8: p-rank stratum classes: coefficient formula, hand values, effectivity.
Check stratum_classes(bool quick) {
  Check c;
  int gmax = quick ? 3 : 6;
  std::vector<long> primes = quick ? std::vector<long>{2} : std::vector<long>{2, 3, 5, 7};
  for (int g = 1; g <= gmax && c.ok; ++g) {
    auto rd = ring(g);
    for (long p : primes) {
      Integer ip(p);
      for (int f = 0; f <= g - 1 && c.ok; ++f) {
        Integer coeff = prank_stratum_coefficient(g, f, ip);
        Integer check = 1;
        Integer power = 1;
        for (int i = 1; i <= g - f; ++i) {
          power *= ip;
          check *= power - 1;
        }
        c.require(coeff == check, at("eo_classes: coefficient product mismatch", g, p));
        RingElement cls = prank_stratum_class(*rd, f, ip);
        Polynomial want =
            Polynomial::generator(rd->presentation().weights, static_cast<size_t>(g - f - 1));
        want *= Rational(coeff);
        c.require(cls.nf == rd->normal_form(want),
                  at("eo_classes: stratum class is not the stated multiple", g, p));
        c.require(!is_zero(cls), at("eo_classes: stratum class vanishes", g, p));
      }
      c.require(effectivity_check(stratum_table(g, ip)),
                at("eo_classes: effectivity certificate failed", g, p));
      if (!c.ok) break;
    }
  }
  if (c.ok) {
    StratumTable t = stratum_table(3, Integer(2));
    std::vector<Integer> coeffs;
    for (const auto& row : t.rows) coeffs.push_back(row.coefficient);
    c.require(coeffs == std::vector<Integer>{1, 3, 21},
              "eo_classes: hand-checked coefficients at g=3, p=2");
  }
  return c;
}

// 9: a corrupted degree-2 relation must be caught by the dimension count.
Check negative_control() {
  Check c;
  RingData corrupted(corrupted_presentation(2));
  c.require(corrupted.hilbert_function() != expected_hilbert(2),
            "selftest: corrupted taut_ring presentation went undetected");
  c.require(ring(2)->hilbert_function() == expected_hilbert(2),
            "selftest: healthy presentation failed the same check");
  return c;
}

}  // namespace

Presentation corrupted_presentation(int g) {
  Presentation pres = build_presentation(g);
  if (pres.relations.empty()) throw std::logic_error("no relations to corrupt");
  pres.relations[0] = Polynomial(pres.weights);
  return pres;
}

SelftestReport run_selftest(const std::string& profile, const std::string& cache_dir,
                            const OracleLimits& limits) {
  if (profile != "quick" && profile != "full")
    throw std::invalid_argument("profile must be quick or full");
  bool quick = profile == "quick";

  struct Entry {
    int number;
    const char* name;
    const char* module;
    std::function<Check()> run;
  };
  std::vector<Entry> entries = {
      {1, "graded-dimensions", "taut_ring", [&] { return dimension_theorem(quick); }},
      {2, "flagship-identities", "taut_ring", [&] { return flagship_identities(quick); }},
      {3, "quotient-isomorphism", "taut_ring", [&] { return quotient_isomorphism(quick); }},
      {4, "coset-poincare", "weyl", [&] { return coset_poincare(quick); }},
      {5, "ideal-equality", "character_ring", [&] { return ideal_equality(quick); }},
      {6, "zip-counts", "zip_oracle", [&] { return oracle_counts(quick, cache_dir, limits); }},
      {7, "degeneration-map", "zip_oracle",
       [&] { return degeneration_map(quick, cache_dir, limits); }},
      {8, "stratum-classes", "eo_classes", [&] { return stratum_classes(quick); }},
      {9, "negative-control", "selftest", [&] { return negative_control(); }},
  };

  SelftestReport report;
  report.profile = profile;
  report.all_passed = true;
  for (const auto& e : entries) {
    CriterionResult res;
    res.number = e.number;
    res.name = e.name;
    res.module = e.module;
    auto start = std::chrono::steady_clock::now();
    try {
      Check c = e.run();
      res.passed = c.ok;
      res.detail = c.ok ? "ok" : c.detail;
    } catch (const std::exception& ex) {
      res.passed = false;
      res.detail = std::string(e.module) + ": unexpected error: " + ex.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Stated runtime budgets are part of the criteria.
    if (!quick) {
      if (e.number == 1 && res.seconds > 120.0) {
        res.passed = false;
        res.detail = "taut_ring: dimension computation exceeded 120 s";
      }
      if (e.number == 6 && res.seconds > 300.0) {
        res.passed = false;
        res.detail = "zip_oracle: enumeration exceeded 300 s";
      }
    }
    report.all_passed = report.all_passed && res.passed;
    report.results.push_back(std::move(res));
  }
  return report;
}

std::string SelftestReport::to_json_string() const {
  nlohmann::json j;
  j["profile"] = profile;
  j["all_passed"] = all_passed;
  auto& arr = j["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"number", r.number},
                   {"name", r.name},
                   {"module", r.module},
                   {"passed", r.passed},
                   {"detail", r.detail}});
  }
  return j.dump();
}

}  // namespace zipring
