#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "zipring/matrix.hpp"
#include "zipring/polynomial.hpp"

namespace zipring {

// Generators u_1..u_g with deg u_i = i, and one homogeneous relation per even
// degree 2..2g: the graded components of (1+u_1+...+u_g)(1-u_1+u_2-...) - 1.
// Odd components of that product vanish identically; this is asserted during
// construction.
struct Presentation {
  int g = 0;
  std::vector<int> weights;
  Polynomial master;                // the expanded product minus 1
  std::vector<Polynomial> relations;  // relations[k-1] has degree 2k
};

Presentation build_presentation(int g);

// One graded piece of the quotient: every monomial of the degree is either a
// basis monomial (non-pivot) or carries a stored rewrite into basis
// monomials.  Rewrites come from the reduced row echelon form of the span of
// relation multiples in this degree.
struct DegreeSlice {
  long degree = 0;
  std::vector<Monomial> monomials;  // decreasing monomial order
  std::vector<Monomial> basis;      // subset of the above, same order
  // pivot monomial -> dense coefficient vector over `basis`
  std::map<Monomial, std::vector<Rational>> rewrite;

  size_t dim() const { return basis.size(); }
};

// All monomials of weighted degree d, decreasing monomial order.
std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, long d);

// Per-degree bases of a graded quotient ring.  `extra_generators` join the
// defining relations (used for the quotient by the top generator); each must
// be homogeneous.
class GradedBasis {
 public:
  static GradedBasis build(const Presentation& pres, long d_max,
                           const std::vector<Polynomial>& extra_generators = {});

  int g() const { return g_; }
  long d_max() const { return static_cast<long>(slices_.size()) - 1; }
  const DegreeSlice& slice(long d) const;
  std::vector<long> dims() const;
  long total_dim() const;

 private:
  int g_ = 0;
  std::vector<DegreeSlice> slices_;
};

// Shared per-genus state.  Heavy work is lazy and cached: graded dimensions
// come from sparse rank computations (no rewrite data), and full slices with
// rewrite maps are built per degree only when a normal form needs them.
// Degrees above the top g(g+1)/2 are zero; that is certified on demand by
// checking that the g slices past the top are empty (any monomial of higher
// degree factors through one of those, in the same or higher degree, so
// emptiness propagates upward).
class RingData {
 public:
  explicit RingData(int g);
  explicit RingData(Presentation pres);

  int g() const { return pres_.g; }
  long top_degree() const { return top_; }
  const Presentation& presentation() const { return pres_; }

  // Lazy; valid degrees are 0..top_degree().
  const DegreeSlice& slice(long d) const;

  // Zero for components above the top degree (certifying first, see above).
  Polynomial normal_form(const Polynomial& p) const;
  std::vector<long> hilbert_function() const;

 private:
  void ensure_high_degrees_vanish() const;

  Presentation pres_;
  long top_ = 0;
  mutable std::mutex mu_;
  mutable std::map<long, DegreeSlice> slices_;
  mutable std::optional<std::vector<long>> hilbert_;
  mutable bool high_checked_ = false;
};

// Memoized access; safe under concurrent first use.
std::shared_ptr<const RingData> ring(int g);
// Guard: per-degree slices for g = 9 and beyond are too large to be built
// routinely; callers must opt in explicitly.
inline constexpr int max_supported_genus = 8;

struct RingElement {
  int g = 0;
  Polynomial nf;  // normal form; equality of elements is equality here

  friend bool operator==(const RingElement&, const RingElement&) = default;
};

RingElement element(const RingData& ring, const Polynomial& p);
RingElement multiply(const RingData& ring, const RingElement& x, const RingElement& y);
bool is_zero(const RingElement& x);
// u_i as a ring element, 1 <= i <= g.
RingElement lambda_class(const RingData& ring, int i);

// Coefficients of prod_{i=1..g} (1+t^i), the expected Hilbert function.
std::vector<long> expected_hilbert(int g);

struct QuotientReport {
  int g = 0;
  std::vector<long> quotient_dims;   // of R_g = quotient by (u_g), degree 0..
  std::vector<long> lower_dims;      // Hilbert function of the genus g-1 ring
  bool dims_match = false;
  bool bases_match = false;          // same basis monomials, u_g-free
  bool multiplicative = false;       // products agree with genus g-1 products
};

// Checks that killing u_g yields the genus g-1 ring: graded dimensions,
// basis monomials and all basis-pair products must agree.
QuotientReport quotient_by_top_lambda(int g);

}  // namespace zipring
