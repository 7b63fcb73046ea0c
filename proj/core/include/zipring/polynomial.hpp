#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zipring/rational.hpp"

namespace zipring {

// Exponent vector with cached weighted degree.  Arity is fixed by the owning
// polynomial; monomials of different arity must never meet in one container.
struct Monomial {
  std::vector<uint32_t> exp;
  long wdeg = 0;

  // Graded order, ties broken lexicographically on the exponent vector.
  // The map below iterates ascending; canonical output order (leading term
  // first) is reverse iteration.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.wdeg != b.wdeg) return a.wdeg < b.wdeg;
    return a.exp < b.exp;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.wdeg == b.wdeg && a.exp == b.exp;
  }
};

// Sparse polynomial over Rational with a positive integer weight per
// generator (deg u_i = weights[i-1]).  Invariants: no explicitly stored zero
// coefficients, every key has matching arity and consistent cached degree.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial() = default;  // zero polynomial in zero variables
  explicit Polynomial(std::vector<int> weights);

  static Polynomial constant(std::vector<int> weights, const Rational& c);
  // 0-based index; the generator u_{i+1} as a polynomial.
  static Polynomial generator(std::vector<int> weights, size_t i);

  size_t nvars() const { return weights_.size(); }
  const std::vector<int>& weights() const { return weights_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  // Weighted degree of the leading term, -1 for the zero polynomial.
  long degree() const;
  bool is_homogeneous() const;

  Monomial make_monomial(std::vector<uint32_t> exp) const;

  // Accumulates; removes the term if the sum cancels.
  void add_term(const Monomial& m, const Rational& c);
  void add_term(std::vector<uint32_t> exp, const Rational& c);

  const Rational* coeff(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial graded_component(long d) const;
  // Degrees that actually occur, ascending.
  std::vector<long> support_degrees() const;

  // Canonical text, terms in decreasing monomial order: "-1/2*u1^2 + u2".
  // Generator i is printed as names[i] when names are given, else prefix+(i+1).
  std::string to_string(const std::string& prefix = "u") const;
  std::string to_string(const std::vector<std::string>& names) const;

  // {"terms":[{"exp":[2,0],"num":"-1","den":"2"},...],"weights":[1,2]},
  // terms in decreasing monomial order.
  std::string to_json_string() const;
  static Polynomial from_json_string(const std::string& text);

 private:
  std::vector<int> weights_;
  TermMap terms_;
};

}  // namespace zipring
