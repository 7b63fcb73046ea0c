#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <vector>

#include "zipring/zip_oracle.hpp"

using namespace zipring;

namespace {

// Odometer over all rows x cols matrices over F_p.
bool next_mat(FpMat& m) {
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      long v = m.at(i, j) + 1;
      m.set(i, j, v == m.p() ? 0 : v);
      if (v != m.p()) return true;
    }
  return false;
}

bool is_isotropic(const FpMat& sub, const FpMat& form) {
  FpMat gram = sub * form * sub.transposed();
  for (size_t i = 0; i < gram.rows(); ++i)
    for (size_t j = 0; j < gram.cols(); ++j)
      if (gram.at(i, j) != 0) return false;
  return true;
}

// Brute-force Lagrangian oracle: every g x 2g matrix, filtered by rank and
// isotropy, canonicalized, deduplicated.
std::set<uint64_t> lagrangians_by_filter(int g, long p) {
  size_t n = 2 * static_cast<size_t>(g);
  FpMat form = symplectic_form(g, p);
  std::set<uint64_t> out;
  FpMat m(static_cast<size_t>(g), n, p);
  do {
    if (m.rank() != g) continue;
    if (!is_isotropic(m, form)) continue;
    out.insert(row_basis(m).encode());
  } while (next_mat(m));
  return out;
}

// Brute-force zip oracle: every 2g x 2g matrix of rank g whose kernel and
// image are both Lagrangian.
std::set<uint64_t> zips_by_filter(int g, long p) {
  size_t n = 2 * static_cast<size_t>(g);
  FpMat form = symplectic_form(g, p);
  std::set<uint64_t> out;
  FpMat m(n, n, p);
  do {
    if (m.rank() != g) continue;
    if (!is_isotropic(map_image(FpMat::identity(n, p), m), form)) continue;
    if (!is_isotropic(kernel(m), form)) continue;
    out.insert(m.encode());
  } while (next_mat(m));
  return out;
}

// The full symplectic group of genus 1 (= SL_2) by filtering every matrix on
// the defining condition, independent of the generator machinery.
std::vector<FpMat> sl2_by_filter(long p) {
  FpMat form = symplectic_form(1, p);
  std::vector<FpMat> out;
  FpMat m(2, 2, p);
  do {
    if (m * form * m.transposed() == form) out.push_back(m);
  } while (next_mat(m));
  return out;
}

std::set<uint64_t> encoded(const std::vector<Zip>& zips) {
  std::set<uint64_t> out;
  for (const Zip& z : zips) out.insert(z.f.encode());
  REQUIRE(out.size() == zips.size());
  return out;
}

std::set<uint64_t> encoded_lag(const std::vector<FpMat>& mats) {
  std::set<uint64_t> out;
  for (const FpMat& m : mats) out.insert(m.encode());
  REQUIRE(out.size() == mats.size());
  return out;
}

Integer closed_form_count(int g, long p) {
  // prod (p^i + 1) squared times |GL_g|, recomputed here by direct loops.
  Integer lag = 1, gl = 1, pk = 1;
  for (int i = 1; i <= g; ++i) {
    pk *= p;
    lag *= pk + 1;
  }
  Integer pg = 1;
  for (int i = 0; i < g; ++i) pg *= p;
  Integer sub = 1;
  for (int i = 0; i < g; ++i) {
    gl *= pg - sub;
    sub *= p;
  }
  return lag * lag * gl;
}

// Entry-level shape of the constrained family: the first r rows vanish and
// the f_1..f_r coordinates of every other row are those of the identity.
bool constrained_shape(const FpMat& f, int g, int r) {
  size_t gs = static_cast<size_t>(g);
  for (size_t i = 0; i < static_cast<size_t>(r); ++i)
    for (size_t j = 0; j < f.cols(); ++j)
      if (f.at(i, j) != 0) return false;
  for (size_t i = static_cast<size_t>(r); i < f.rows(); ++i)
    for (size_t j = 0; j < static_cast<size_t>(r); ++j)
      if (f.at(i, gs + j) != (i == gs + j ? 1 : 0)) return false;
  return true;
}

// The same family stated through subspaces, following the documented
// contract: F kills I, maps perp(I) into itself, and fixes each f_j modulo
// perp(I).
bool constrained_contract(const Zip& z, int r) {
  size_t g = static_cast<size_t>(z.g);
  long p = z.p;
  FpMat eye = FpMat::identity(2 * g, p);
  FpMat iso(static_cast<size_t>(r), 2 * g, p);
  for (size_t i = 0; i < static_cast<size_t>(r); ++i) iso.set(i, i, 1);
  FpMat perp_i = perp(iso, symplectic_form(z.g, p));
  if (map_image(iso, z.f).rows() != 0) return false;
  if (!subspace_contains(perp_i, map_image(perp_i, z.f))) return false;
  for (size_t j = 0; j < static_cast<size_t>(r); ++j) {
    FpMat diff(1, 2 * g, p);
    for (size_t c = 0; c < 2 * g; ++c)
      diff.set(0, c, z.f.at(g + j, c) - eye.at(g + j, c));
    if (!subspace_contains(perp_i, diff)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lagrangian enumeration equals the brute-force filter") {
  for (auto [g, p] : {std::pair{1, 2l}, {1, 3l}, {1, 5l}, {2, 2l}, {2, 3l}}) {
    std::set<uint64_t> expect = lagrangians_by_filter(g, p);
    std::vector<FpMat> got = enumerate_lagrangians(g, p);
    CHECK(encoded_lag(got) == expect);
    CHECK(lagrangian_count_formula(g, p) == Integer(static_cast<unsigned long>(expect.size())));
    for (const FpMat& m : got) CHECK(row_basis(m) == m);  // canonical bases
  }
  // Frozen after the oracle run: (p+1) and (p+1)(p^2+1).
  CHECK(lagrangian_count_formula(1, 2) == 3);
  CHECK(lagrangian_count_formula(2, 2) == 15);
  CHECK(lagrangian_count_formula(2, 3) == 40);
}

TEST_CASE("zip enumeration equals the brute-force filter") {
  for (auto [g, p] : {std::pair{1, 2l}, {1, 3l}, {1, 5l}, {2, 2l}}) {
    std::set<uint64_t> expect = zips_by_filter(g, p);
    std::vector<Zip> got = enumerate_zips(g, p);
    CHECK(encoded(got) == expect);
    for (const Zip& z : got) z.validate();
    CHECK(zip_count_formula(g, p) == closed_form_count(g, p));
    CHECK(Integer(static_cast<unsigned long>(expect.size())) == zip_count_formula(g, p));
  }
  // Frozen after the oracle run.
  CHECK(zip_count_formula(1, 2) == 9);
  CHECK(zip_count_formula(1, 3) == 32);
  CHECK(zip_count_formula(1, 5) == 144);
  CHECK(zip_count_formula(2, 2) == 1350);
  CHECK(zip_count_formula(2, 3) == 76800);
}

TEST_CASE("zip validation rejects non-examples") {
  CHECK_THROWS_AS(Zip(1, 2, FpMat::identity(2, 2)).validate(), std::invalid_argument);
  // Rank 2 with image spanned by e_1, f_1: not isotropic.
  FpMat bad(4, 4, 2);
  bad.set(0, 0, 1);
  bad.set(1, 2, 1);
  CHECK_THROWS_AS(Zip(2, 2, bad).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Zip(1, 4, FpMat(2, 2, 4)).validate(), std::invalid_argument);
  CHECK_THROWS_AS(Zip(2, 2, FpMat(2, 2, 2)).validate(), std::invalid_argument);
}

TEST_CASE("adjoint swaps kernel and image") {
  for (auto [g, p] : {std::pair{1, 3l}, {2, 2l}}) {
    size_t n = 2 * static_cast<size_t>(g);
    int step = g == 1 ? 1 : 17;
    auto zips = enumerate_zips(g, p);
    for (size_t k = 0; k < zips.size(); k += static_cast<size_t>(step)) {
      const Zip& z = zips[k];
      FpMat v = adjoint_map(z);
      FpMat eye = FpMat::identity(n, p);
      CHECK(subspace_equal(kernel(v), map_image(eye, z.f)));
      CHECK(subspace_equal(map_image(eye, v), kernel(z.f)));
      // The adjoint is itself a zip.
      Zip(g, p, v).validate();
    }
  }
}

TEST_CASE("generator closure fills the symplectic group") {
  CHECK(symplectic_generator_closure_size(1, 2) == 6);
  CHECK(symplectic_generator_closure_size(1, 3) == 24);
  CHECK(symplectic_generator_closure_size(2, 2) == 720);
  CHECK(symplectic_group_order(1, 2) == 6);
  CHECK(symplectic_group_order(1, 3) == 24);
  CHECK(symplectic_group_order(2, 2) == 720);
  CHECK(symplectic_group_order(2, 3) == 51840);
  CHECK(Integer(static_cast<unsigned long>(sl2_by_filter(5).size())) ==
        symplectic_group_order(1, 5));
  FpMat form = symplectic_form(2, 3);
  for (const FpMat& s : symplectic_generators(2, 3)) {
    CHECK(s * form * s.transposed() == form);
    CHECK(s.is_invertible());
  }
}

TEST_CASE("orbits at genus one against the full-group oracle") {
  for (long p : {2l, 3l}) {
    auto group = sl2_by_filter(p);
    auto zips = enumerate_zips(1, p);
    // Orbit partition by applying every group element; no generator walk.
    std::map<uint64_t, uint64_t> orbit_of;
    uint64_t next_orbit = 0;
    std::vector<uint64_t> orbit_sizes;
    for (const Zip& z : zips) {
      if (orbit_of.count(z.f.encode())) continue;
      std::set<uint64_t> orbit;
      for (const FpMat& s : group) orbit.insert((s.inverse() * z.f * s).encode());
      for (uint64_t key : orbit) {
        REQUIRE(!orbit_of.count(key));
        orbit_of[key] = next_orbit;
      }
      orbit_sizes.push_back(orbit.size());
      ++next_orbit;
    }

    OrbitDecomposition dec = orbit_decomposition(1, p);
    CHECK(dec.zip_count == zips.size());
    CHECK(dec.classes.size() == 2);
    uint64_t orbit_total = 0, point_total = 0;
    for (const auto& cls : dec.classes) {
      orbit_total += static_cast<uint64_t>(cls.orbit_count);
      point_total += cls.points;
    }
    CHECK(orbit_total == next_orbit);
    CHECK(point_total == dec.zip_count);

    // The invariant must be constant on every oracle orbit and the per-class
    // point counts must match a pointwise recount.
    std::map<std::string, uint64_t> recount;
    for (const Zip& z : zips) recount[zip_invariant(z).key()] += 1;
    for (const Zip& z : zips)
      for (const FpMat& s : group) {
        Zip moved(1, p, s.inverse() * z.f * s);
        CHECK(zip_invariant(moved).key() == zip_invariant(z).key());
      }
    for (const auto& cls : dec.classes) {
      CHECK(recount.at(cls.invariant_key) == cls.points);
      CHECK(dec.class_for(cls.invariant_key) != nullptr);
      CHECK(dec.class_for(cls.invariant_key)->points == cls.points);
    }
    CHECK(dec.class_for("no such key") == nullptr);
  }

  // Frozen after the oracle run: sizes 3 and 6 at p = 2.
  OrbitDecomposition dec = orbit_decomposition(1, 2);
  std::multiset<uint64_t> sizes;
  for (const auto& cls : dec.classes) sizes.insert(cls.points);
  CHECK(sizes == std::multiset<uint64_t>{3, 6});
}

TEST_CASE("p-rank and a-number basics") {
  for (long p : {2l, 3l}) {
    for (const Zip& z : enumerate_zips(1, p)) {
      long f = p_rank(z), a = a_number(z);
      CHECK((f == 0 || f == 1));
      CHECK(a == 1 - f);
    }
  }
  // Superspecial zips at genus 2: image equals kernel, one Lagrangian plus
  // one isomorphism, 15 * 6 of them over F_2.
  long superspecial = 0;
  for (const Zip& z : enumerate_zips(2, 2))
    if (a_number(z) == 2) ++superspecial;
  CHECK(Integer(static_cast<unsigned long>(superspecial)) ==
        lagrangian_count_formula(2, 2) * gl_order(2, 2));
  CHECK(superspecial == 90);
}

TEST_CASE("labels from the two counts") {
  REQUIRE(label_from_counts(1, 1, 0));
  CHECK(*label_from_counts(1, 1, 0) == EOType{1, {}});
  CHECK(*label_from_counts(1, 0, 1) == EOType{1, {1}});
  CHECK(*label_from_counts(2, 0, 2) == EOType{2, {2, 1}});
  CHECK(*label_from_counts(3, 0, 1) == EOType{3, {3}});
  CHECK(*label_from_counts(3, 0, 3) == EOType{3, {3, 2, 1}});
  CHECK(*label_from_counts(3, 1, 2) == EOType{3, {2, 1}});
  // Two staircase partitions share these counts; no unique label.
  CHECK(!label_from_counts(3, 0, 2));
  // No staircase partition at all.
  CHECK(!label_from_counts(2, 2, 1));
  CHECK(!label_from_counts(2, 0, 3));
}

TEST_CASE("invariant keys do not depend on the prime") {
  std::set<std::string> keys2, keys3;
  for (const auto& cls : orbit_decomposition(2, 2).classes) keys2.insert(cls.invariant_key);
  for (const auto& cls : orbit_decomposition(2, 3).classes) keys3.insert(cls.invariant_key);
  CHECK(keys2 == keys3);
  CHECK(keys2.size() == 4);
}

TEST_CASE("census of classes by p-rank") {
  for (auto [g, p] : {std::pair{1, 2l}, {2, 2l}, {2, 3l}}) {
    OrbitDecomposition dec = orbit_decomposition(g, p);
    CHECK(prank_census_matches(dec));
    CHECK((static_cast<size_t>(1) << g) == dec.classes.size());
  }
}

TEST_CASE("constrained family equals the filtered enumeration") {
  for (auto [gg, r, p] : {std::tuple{2, 1, 2l}, {2, 1, 3l}}) {
    std::set<uint64_t> expect;
    for (const Zip& z : enumerate_zips(gg, p)) {
      bool shaped = constrained_shape(z.f, gg, r);
      CHECK(shaped == constrained_contract(z, r));
      if (shaped) expect.insert(z.f.encode());
    }
    std::vector<Zip> got = zips_with_isotropic(gg, r, p);
    CHECK(encoded(got) == expect);
    for (const Zip& z : got) {
      z.validate();
      CHECK(constrained_contract(z, r));
    }
  }
}

TEST_CASE("constrained family at genus three by streaming filter") {
  OracleLimits limits;
  for (int r : {1, 2}) {
    std::set<uint64_t> expect;
    for_each_zip(3, 2, limits, [&](const FpMat& f) {
      if (constrained_shape(f, 3, r)) expect.insert(f.encode());
    });
    CHECK(encoded(zips_with_isotropic(3, r, 2)) == expect);
  }
}

TEST_CASE("reduction and section are inverse on the section's image") {
  for (auto [g, r, p] : {std::tuple{2, 1, 2l}, {2, 1, 3l}, {3, 2, 2l}}) {
    std::set<uint64_t> family = encoded(zips_with_isotropic(g, r, p));
    for (const Zip& low : enumerate_zips(g - r, p)) {
      Zip up = embed_zip(low, r);
      CHECK(up.g == g);
      up.validate();
      CHECK(family.count(up.f.encode()) == 1);
      CHECK(induced_zip(up, r).f == low.f);
    }
    for (uint64_t key : family) {
      Zip z(g, p, FpMat::decode(key, 2 * static_cast<size_t>(g), 2 * static_cast<size_t>(g), p));
      Zip down = induced_zip(z, r);
      down.validate();
      CHECK(down.g == g - r);
      CHECK(p_rank(z) == p_rank(down) + r);
    }
  }
}

TEST_CASE("derived degeneration tables") {
  for (auto [g, r, p] : {std::tuple{2, 1, 2l}, {2, 1, 3l}, {3, 1, 2l}, {3, 2, 2l}}) {
    IotaTable t = derive_iota(g, r, p);
    CHECK(t.well_defined);
    CHECK(t.injective);
    CHECK(t.prank_additive);
    CHECK(t.labels_complete);
    CHECK(t.matches_closed_form);
    CHECK(t.induced_class_count == (1L << (g - r)));
    CHECK(t.by_invariant.size() == static_cast<size_t>(t.induced_class_count));
    // Induced keys are exactly the class keys of the smaller oracle.
    std::set<std::string> induced_keys, expect_keys;
    for (const auto& [ik, ak] : t.by_invariant) induced_keys.insert(ik);
    for (const auto& cls : orbit_decomposition(g - r, p).classes)
      expect_keys.insert(cls.invariant_key);
    CHECK(induced_keys == expect_keys);
  }
  // Parts are preserved: the observed label pairs at (2, 1).
  IotaTable t = derive_iota(2, 1, 2);
  std::map<std::string, std::string> labels;
  for (const auto& [a, b] : t.by_label) labels[a.to_string()] = b.to_string();
  CHECK(labels == std::map<std::string, std::string>{{"[]", "[]"}, {"[1]", "[1]"}});
}

TEST_CASE("tables are identical across primes") {
  IotaTable a = derive_iota(2, 1, 2);
  IotaTable b = derive_iota(2, 1, 3);
  CHECK(a.by_invariant == b.by_invariant);
  CHECK(a.by_label == b.by_label);
}

TEST_CASE("resource guards refuse oversized enumerations") {
  CHECK_THROWS_AS(orbit_decomposition(3, 3), ResourceGuardError);
  CHECK_THROWS_AS(orbit_decomposition(2, 5), ResourceGuardError);
  CHECK_THROWS_AS(enumerate_lagrangians(4, 7), ResourceGuardError);
  CHECK_THROWS_AS(zips_with_isotropic(3, 1, 7), ResourceGuardError);
  CHECK_THROWS_AS(symplectic_generator_closure_size(2, 5), ResourceGuardError);
  OracleLimits tight;
  tight.max_total_zips = 8;
  CHECK_THROWS_AS(enumerate_zips(1, 2, tight), ResourceGuardError);
}

TEST_CASE("decomposition JSON round trip") {
  OrbitDecomposition dec = orbit_decomposition(2, 2);
  OrbitDecomposition back = OrbitDecomposition::from_json_string(dec.to_json_string());
  CHECK(back.g == dec.g);
  CHECK(back.p == dec.p);
  CHECK(back.zip_count == dec.zip_count);
  REQUIRE(back.classes.size() == dec.classes.size());
  for (size_t i = 0; i < dec.classes.size(); ++i) {
    CHECK(back.classes[i].invariant_key == dec.classes[i].invariant_key);
    CHECK(back.classes[i].points == dec.classes[i].points);
    CHECK(back.classes[i].orbit_count == dec.classes[i].orbit_count);
    CHECK(back.classes[i].p_rank == dec.classes[i].p_rank);
    CHECK(back.classes[i].a_number == dec.classes[i].a_number);
    CHECK(back.classes[i].label == dec.classes[i].label);
    CHECK(back.classes[i].representative == dec.classes[i].representative);
  }
  CHECK(back.to_json_string() == dec.to_json_string());
  CHECK_THROWS(OrbitDecomposition::from_json_string("{}"));
}

TEST_CASE("iota JSON round trip") {
  IotaTable t = derive_iota(2, 1, 2);
  IotaTable back = IotaTable::from_json_string(t.to_json_string());
  CHECK(back.g == t.g);
  CHECK(back.r == t.r);
  CHECK(back.p == t.p);
  CHECK(back.by_invariant == t.by_invariant);
  CHECK(back.by_label == t.by_label);
  CHECK(back.to_json_string() == t.to_json_string());
}

TEST_CASE("cache files are reused and survive corruption") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "zipring_cache_test";
  fs::remove_all(dir);

  OrbitDecomposition fresh = cached_orbit_decomposition(dir.string(), 1, 3);
  OrbitDecomposition again = cached_orbit_decomposition(dir.string(), 1, 3);
  CHECK(fresh.to_json_string() == again.to_json_string());
  CHECK(fresh.to_json_string() == orbit_decomposition(1, 3).to_json_string());

  size_t files = 0;
  fs::path entry;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    entry = e.path();
  }
  REQUIRE(files == 1);
  {
    std::ofstream out(entry);
    out << "not json at all";
  }
  OrbitDecomposition healed = cached_orbit_decomposition(dir.string(), 1, 3);
  CHECK(healed.to_json_string() == fresh.to_json_string());

  IotaTable it = cached_iota(dir.string(), 2, 1, 2);
  CHECK(it.to_json_string() == derive_iota(2, 1, 2).to_json_string());
  CHECK(cached_iota(dir.string(), 2, 1, 2).to_json_string() == it.to_json_string());
  fs::remove_all(dir);
}
