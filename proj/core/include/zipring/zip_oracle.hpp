#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zipring/fpmat.hpp"
#include "zipring/rational.hpp"
#include "zipring/weyl.hpp"

namespace zipring {

// Enumeration budgets.  Every loop whose size is a formula in (g, p) checks
// the formula against these before running; breaching one raises
// ResourceGuardError, which the command line tool maps to its own exit code.
struct OracleLimits {
  uint64_t max_total_zips = uint64_t{1} << 22;
  uint64_t max_lagrangians = uint64_t{1} << 16;
  uint64_t max_constrained_loop = uint64_t{1} << 26;
  uint64_t max_group_bfs = uint64_t{1} << 17;
};

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One 2g x 2g matrix over F_p of rank g whose kernel and image are both
// Lagrangian with respect to the standard alternating form, acting on row
// vectors on the right.  Basis order e_1..e_g, f_1..f_g.
struct Zip {
  int g = 0;
  long p = 2;
  FpMat f;

  Zip(int g_, long p_, FpMat mat) : g(g_), p(p_), f(std::move(mat)) {}
  void validate() const;  // throws std::invalid_argument
};

// The adjoint J^{-1} F^T J; its kernel is the image of F and its image is
// the kernel of F, which the tests check on enumerated examples.
FpMat adjoint_map(const Zip& z);

// Closed forms; Integer avoids overflow for larger (g, p).
Integer lagrangian_count_formula(int g, long p);  // prod_{i=1..g} (p^i + 1)
Integer gl_order(int g, long p);
Integer zip_count_formula(int g, long p);  // lagrangian^2 * gl_order
Integer symplectic_group_order(int g, long p);

// All Lagrangian subspaces as canonical (reduced row echelon) bases, by
// depth first search over echelon patterns with isotropy pruning; the count
// is checked against the closed form before returning.
std::vector<FpMat> enumerate_lagrangians(int g, long p, const OracleLimits& limits = {});

// Streams every zip exactly once in a deterministic order, parametrized by
// (kernel, image, gluing matrix in GL_g); the total is checked against the
// closed form.
void for_each_zip(int g, long p, const OracleLimits& limits,
                  const std::function<void(const FpMat&)>& fn);
std::vector<Zip> enumerate_zips(int g, long p, const OracleLimits& limits = {});

// Generators of the symplectic group: the Levi copies of the elementary
// matrices, diag(U, U^{-T}), plus upper and lower block shears by the
// elementary symmetric matrices.  Each is checked to preserve the form.
std::vector<FpMat> symplectic_generators(int g, long p);
// Breadth first closure of the generators, for validating that they generate
// the full group (size must equal the closed form; capped by limits).
uint64_t symplectic_generator_closure_size(int g, long p, const OracleLimits& limits = {});

// Discrete invariant of a zip under symplectic conjugation.  All entries are
// dimensions or indices, never field elements, so keys are comparable
// across primes.
//
// The chain is the closure of {0, whole space} under U -> F(U) and
// U -> adjoint^{-1}(U); it is totally ordered (checked), so it is listed by
// dimension.  The two refining flags are the iterated F-preimages of 0 and
// the iterated F-images of the whole space, each followed by the list of
// their orthogonal complements in construction order; the matrix holds the
// pairwise intersection dimensions.
struct ZipInvariant {
  std::vector<long> chain_dims;
  std::vector<long> f_image_index;     // position of F(C_i) in the chain
  std::vector<long> v_preimage_index;  // position of adjoint^{-1}(C_i)
  std::vector<std::vector<long>> refinement;

  std::string key() const;
  friend bool operator==(const ZipInvariant&, const ZipInvariant&) = default;
};

ZipInvariant zip_invariant(const Zip& z);

long p_rank(const Zip& z);    // rank of F^(2g)
long a_number(const Zip& z);  // dim(ker F intersect im F)

// The strict partition in the staircase with largest part g - prank and
// exactly anum parts, when there is exactly one such partition.
std::optional<EOType> label_from_counts(int g, long prank, long anum);

struct OrbitClass {
  std::string invariant_key;
  uint64_t points = 0;   // number of zips with this invariant
  long orbit_count = 0;  // conjugation orbits sharing it; can exceed 1
  long p_rank = 0;
  long a_number = 0;
  std::optional<EOType> label;
  uint64_t representative = 0;  // encoded matrix of one member
};

struct OrbitDecomposition {
  int g = 0;
  long p = 2;
  uint64_t zip_count = 0;
  std::vector<OrbitClass> classes;  // sorted by invariant_key

  const OrbitClass* class_for(const std::string& invariant_key) const;
  std::string to_json_string() const;
  static OrbitDecomposition from_json_string(const std::string& text);
};

// Full enumeration plus union-find over the conjugation moves z -> s^-1 z s.
OrbitDecomposition orbit_decomposition(int g, long p, const OracleLimits& limits = {});

// Number of classes with each p-rank must be the number of staircase
// partitions with largest part g - prank (2^(g-prank-1), and 1 for the empty
// partition).
bool prank_census_matches(const OrbitDecomposition& dec);

// Zips degenerate along the isotropic subspace I = span(e_1..e_r):
// F kills I, preserves the perp of I, and fixes each f_j, j <= r, modulo
// that perp.  Enumerated by depth first search with rank and isotropy
// pruning.
std::vector<Zip> zips_with_isotropic(int g, int r, long p, const OracleLimits& limits = {});

// The action on perp(I)/I, a genus g-r zip: the middle block of the matrix.
// Requires the constrained shape above.
Zip induced_zip(const Zip& z, int r);
// Section of induced_zip: kills e_1..e_r, fixes f_1..f_r, acts by zprime in
// the middle.
Zip embed_zip(const Zip& zprime, int r);

// How classes of the constrained family project to classes of the induced
// genus: the observed map induced-invariant -> ambient-invariant.
struct IotaTable {
  int g = 0;
  int r = 0;
  long p = 2;
  bool well_defined = false;    // ambient invariant is a function of induced
  bool injective = false;
  bool prank_additive = false;  // ambient p-rank = induced p-rank + r always
  long induced_class_count = 0;
  std::vector<std::pair<std::string, std::string>> by_invariant;
  // Filled for the pairs where both (prank, a-number) labels are unique.
  std::vector<std::pair<EOType, EOType>> by_label;
  bool labels_complete = false;
  bool matches_closed_form = false;  // by_label agrees with iota_embedding

  std::string to_json_string() const;
  static IotaTable from_json_string(const std::string& text);
};

IotaTable derive_iota(int g, int r, long p, const OracleLimits& limits = {});

// File cache under dir, one JSON file per argument tuple, written via
// temporary file plus rename.  Entries are re-used only when genus, prime
// and format version all match.
OrbitDecomposition cached_orbit_decomposition(const std::string& dir, int g, long p,
                                              const OracleLimits& limits = {});
IotaTable cached_iota(const std::string& dir, int g, int r, long p,
                      const OracleLimits& limits = {});

}  // namespace zipring
