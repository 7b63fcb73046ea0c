#pragma once

#include <string>
#include <vector>

#include "zipring/polynomial.hpp"
#include "zipring/weyl.hpp"

namespace zipring {

// Polynomials in x_1..x_g, every generator of weight 1.  The signed
// permutation group acts by permuting and negating variables; the symmetric
// group part fixes the ring of symmetric polynomials, the full group fixes
// symmetric polynomials in the squares.

std::vector<int> x_weights(int g);
// e_j(x_1..x_g)
Polynomial elementary_symmetric(int g, int j);
// e_j(x_1^2..x_g^2), homogeneous of degree 2j
Polynomial elementary_symmetric_squares(int g, int j);

// x_i -> p * w(x_i), extended multiplicatively; w(x_i) is x_{|w(i)|} with the
// sign of w(i).  On any invariant of the signed permutation group this is
// multiplication by p^degree.
struct TwistData {
  Integer p;
  SignedPermutation w;
};
Polynomial apply_twist(const TwistData& twist, const Polynomial& f);

// Generators e_j(x^2), j = 1..g, of the invariant ideal cutting out the
// Borel-style presentation.
std::vector<Polynomial> borel_ideal_gens(int g);

// (1 - p^(2j)) * e_j(x^2), j = 1..g.  Each generator is produced as
// f - twist(f) and checked against the closed form, so the scaling behaviour
// of the twist on invariants is verified symbolically, not assumed.
std::vector<Polynomial> twisted_ideal_gens(int g, const Integer& p);

struct DegreeRankRow {
  long d = 0;
  long rank_borel = 0;
  long rank_twisted = 0;
  bool equal = false;  // identical row spaces inside degree-d symmetric polys
};

struct BorelReport {
  int g = 0;
  Integer p;
  long d_max = 0;
  std::vector<DegreeRankRow> degrees;
  bool all_equal = false;
  // dim of degree-d symmetric polynomials minus the Borel ideal rank; must
  // reproduce the Hilbert function of the genus-g quotient ring.
  std::vector<long> quotient_dims;
  bool dims_match_hilbert = false;

  std::string to_json_string() const;
};

// Compares, degree by degree up to d_max (default g(g+1)/2), the spans of
// the Borel and twisted generator multiples inside symmetric polynomials.
BorelReport ideals_equal_by_degree(int g, const Integer& p, long d_max = -1);

// u_i -> e_i(x_1..x_g) applied to a polynomial in u_1..u_g.
Polynomial chern_substitution(const Polynomial& u_poly);

struct ChernMapReport {
  int g = 0;
  // substituted defining relation equals prod(1 - x_i^2) - 1
  bool identity_holds = false;
  // that image equals sum_j (-1)^j e_j(x^2), an explicit ideal combination
  bool image_in_ideal = false;
  bool dims_match_hilbert = false;
  bool ok() const { return identity_holds && image_in_ideal && dims_match_hilbert; }
};

ChernMapReport chern_map_check(int g, long d_max = -1);

}  // namespace zipring
