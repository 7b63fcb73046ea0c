#pragma once

#include <string>
#include <vector>

#include "zipring/polynomial.hpp"

namespace zipring {

// Signed permutation of {1..g} in window notation: images[i-1] = w(i), with
// w(-i) = -w(i) implied.  This is the hyperoctahedral group, i.e. the Weyl
// group of type C_g.
struct SignedPermutation {
  std::vector<int> images;

  static SignedPermutation identity(int g);
  // i = 0 negates the first letter; i in 1..g-1 swaps letters i and i+1.
  static SignedPermutation simple_reflection(int g, int i);

  int g() const { return static_cast<int>(images.size()); }
  // i in {-g..-1, 1..g}.
  int apply(int i) const;
  void validate() const;
  // "2,-1"
  std::string to_string() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
  friend bool operator<(const SignedPermutation& a, const SignedPermutation& b) {
    return a.images < b.images;
  }
};

// (a*b)(i) = a(b(i)).
SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b);
SignedPermutation inverse(const SignedPermutation& w);

// Coxeter length with respect to the simple reflections above:
// #{i<j : w(i) > w(j)}  +  sum of |w(i)| over the negated letters.
// Cross-validated against Cayley-graph breadth-first search in the tests.
long length(const SignedPermutation& w);

// Strict partition inside the staircase (g, g-1, ..., 1): parts strictly
// decreasing, each in 1..g.  Labels one stratum; codimension is the sum of
// the parts.
struct EOType {
  int g = 0;
  std::vector<int> parts;

  void validate() const;
  long codim() const;
  // "[3,1]", "[]"
  std::string to_string() const;
  // {"g":3,"parts":[3,1]}
  std::string to_json_string() const;
  static EOType from_json_string(const std::string& text);

  friend bool operator==(const EOType&, const EOType&) = default;
  friend bool operator<(const EOType& a, const EOType& b) {
    if (a.g != b.g) return a.g < b.g;
    return a.parts < b.parts;
  }
};

struct CosetRep {
  SignedPermutation w;
  long len = 0;
  EOType type;
};

// The 2^g minimal-length representatives of the S_g-cosets in the signed
// permutation group (the parabolic generated by the g-1 swap reflections).
// Each coset is determined by its sign pattern; the minimal representative
// puts the small absolute values, negated, at the negative positions in
// increasing order.  The partition attached to a representative is its set
// of negative positions sorted decreasingly, so len == type.codim().
class CosetTable {
 public:
  static CosetTable build(int g);

  int g() const { return g_; }
  const std::vector<CosetRep>& reps() const { return reps_; }
  const CosetRep& rep_for(const EOType& t) const;

  // Header "rep,length,partition"; rows sorted by (length, one-line notation).
  std::string to_csv() const;

 private:
  int g_ = 0;
  std::vector<CosetRep> reps_;
};

// Length generating function of the minimal coset representatives, as a
// polynomial in one variable t.  Verifies the product formula
// (1+t)(1+t^2)...(1+t^g) against the table before returning.
Polynomial poincare_WP(int g);

// How a stratum label of genus g-r sits inside genus g after r steps of
// corank-one degeneration: the parts are unchanged.  This closed form is
// exhaustively verified against the finite-field enumeration for g <= 3
// (see derive_iota); for larger g it is a conjectured extrapolation, which
// is why the oracle cross-check is wired into the acceptance suite.
EOType iota_embedding(int g, int r, const EOType& t);

}  // namespace zipring
