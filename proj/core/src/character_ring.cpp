#include "zipring/character_ring.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "zipring/matrix.hpp"
#include "zipring/taut_ring.hpp"

namespace zipring {

namespace {

// Partitions of d into at most g parts, each vector sorted descending,
// enumerated in a fixed (descending lexicographic) order.
std::vector<std::vector<int>> partitions_at_most(long d, int g) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, long remaining, int maxpart, int slots) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (slots == 0) return;
    for (int part = std::min<long>(maxpart, remaining); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part, slots - 1);
      cur.pop_back();
    }
  };
  rec(rec, d, static_cast<int>(d), g);
  return out;
}

// Monomial symmetric polynomial: the sum of the distinct permutations of the
// padded exponent vector.
Polynomial monomial_symmetric(int g, const std::vector<int>& lambda) {
  Polynomial out(x_weights(g));
  std::vector<uint32_t> exp(static_cast<size_t>(g), 0);
  for (size_t i = 0; i < lambda.size(); ++i) exp[i] = static_cast<uint32_t>(lambda[i]);
  std::sort(exp.begin(), exp.end());
  do {
    out.add_term(exp, Rational(1));
  } while (std::next_permutation(exp.begin(), exp.end()));
  return out;
}

// Coordinates of a symmetric polynomial with respect to the monomial
// symmetric basis: the coefficient at the dominant (sorted descending)
// exponent of each orbit.
std::vector<Rational> symmetric_coordinates(const Polynomial& f,
                                            const std::vector<std::vector<int>>& basis,
                                            long d) {
  std::vector<Rational> coords(basis.size());
  std::map<std::vector<int>, size_t> index;
  for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  for (const auto& [m, c] : f.terms()) {
    if (m.wdeg != d) throw std::invalid_argument("inhomogeneous symmetric slice");
    bool dominant = true;
    for (size_t i = 0; i + 1 < m.exp.size(); ++i)
      if (m.exp[i] < m.exp[i + 1]) {
        dominant = false;
        break;
      }
    if (!dominant) continue;
    std::vector<int> lambda;
    for (uint32_t e : m.exp)
      if (e > 0) lambda.push_back(static_cast<int>(e));
    coords[index.at(lambda)] = c;
  }
  return coords;
}

struct SpanInfo {
  long rank = 0;
  ExactMatrix rref{0, 0};
};

SpanInfo span_of_multiples(int g, const std::vector<Polynomial>& gens, long d,
                           const std::vector<std::vector<int>>& basis) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& gen : gens) {
    long e = gen.degree();
    if (e > d) continue;
    for (const auto& mu : partitions_at_most(d - e, g)) {
      Polynomial prod = gen * monomial_symmetric(g, mu);
      rows.push_back(symmetric_coordinates(prod, basis, d));
    }
  }
  SpanInfo info;
  if (rows.empty() || basis.empty()) return info;
  ExactMatrix mat(rows.size(), basis.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j) mat.at(i, j) = rows[i][j];
  info.rank = static_cast<long>(mat.row_reduce().size());
  info.rref = std::move(mat);
  return info;
}

bool same_row_space(const SpanInfo& a, const SpanInfo& b) {
  if (a.rank != b.rank) return false;
  // Reduced row echelon form is canonical for the row space; compare the
  // nonzero rows.
  for (long i = 0; i < a.rank; ++i)
    for (size_t j = 0; j < a.rref.cols(); ++j)
      if (a.rref.at(static_cast<size_t>(i), j) != b.rref.at(static_cast<size_t>(i), j))
        return false;
  return true;
}

}  // namespace

std::vector<int> x_weights(int g) {
  if (g < 1) throw std::invalid_argument("genus must be positive");
  return std::vector<int>(static_cast<size_t>(g), 1);
}

Polynomial elementary_symmetric(int g, int j) {
  if (j < 0 || j > g) throw std::invalid_argument("symmetric index out of range");
  Polynomial out(x_weights(g));
  std::vector<uint32_t> exp(static_cast<size_t>(g), 0);
  // All 0/1 exponent vectors with j ones.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (left == 0) {
      out.add_term(exp, Rational(1));
      return;
    }
    if (g - pos < left) return;
    exp[static_cast<size_t>(pos)] = 1;
    self(self, pos + 1, left - 1);
    exp[static_cast<size_t>(pos)] = 0;
    self(self, pos + 1, left);
  };
  rec(rec, 0, j);
  return out;
}

Polynomial elementary_symmetric_squares(int g, int j) {
  Polynomial e = elementary_symmetric(g, j);
  Polynomial out(x_weights(g));
  for (const auto& [m, c] : e.terms()) {
    std::vector<uint32_t> exp = m.exp;
    for (auto& v : exp) v *= 2;
    out.add_term(std::move(exp), c);
  }
  return out;
}

Polynomial apply_twist(const TwistData& twist, const Polynomial& f) {
  int g = static_cast<int>(f.nvars());
  if (twist.w.g() != g) throw std::invalid_argument("twist rank mismatch");
  Polynomial out(f.weights());
  for (const auto& [m, c] : f.terms()) {
    std::vector<uint32_t> exp(m.exp.size(), 0);
    bool negate = false;
    for (size_t i = 0; i < m.exp.size(); ++i) {
      if (m.exp[i] == 0) continue;
      int img = twist.w.images[i];
      exp[static_cast<size_t>(std::abs(img) - 1)] += m.exp[i];
      if (img < 0 && m.exp[i] % 2 == 1) negate = !negate;
    }
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), twist.p.get_mpz_t(), static_cast<unsigned long>(m.wdeg));
    Rational coeff = c * Rational(scale);
    if (negate) coeff = -coeff;
    out.add_term(std::move(exp), coeff);
  }
  return out;
}

std::vector<Polynomial> borel_ideal_gens(int g) {
  std::vector<Polynomial> gens;
  for (int j = 1; j <= g; ++j) gens.push_back(elementary_symmetric_squares(g, j));
  return gens;
}

std::vector<Polynomial> twisted_ideal_gens(int g, const Integer& p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  // Any Weyl element works on invariants; use a full rotation with one sign
  // flip so the invariance check is not vacuous.
  TwistData twist{p, SignedPermutation::identity(g)};
  for (int i = 0; i + 1 < g; ++i) twist.w.images[static_cast<size_t>(i)] = i + 2;
  twist.w.images[static_cast<size_t>(g - 1)] = -1;
  twist.w.validate();

  std::vector<Polynomial> gens;
  for (int j = 1; j <= g; ++j) {
    Polynomial f = elementary_symmetric_squares(g, j);
    Polynomial twisted = f - apply_twist(twist, f);
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(2 * j));
    Polynomial closed = f * Rational(Integer(1) - pw);
    if (!(twisted == closed))
      throw std::logic_error("twist did not scale an invariant by p^degree");
    gens.push_back(std::move(twisted));
  }
  return gens;
}

std::string BorelReport::to_json_string() const {
  nlohmann::json j;
  j["g"] = g;
  j["p"] = p.get_str();
  j["d_max"] = d_max;
  auto& rows = j["degrees"] = nlohmann::json::array();
  for (const auto& row : degrees) {
    rows.push_back({{"d", row.d},
                    {"rank_borel", row.rank_borel},
                    {"rank_twisted", row.rank_twisted},
                    {"equal", row.equal}});
  }
  j["all_equal"] = all_equal;
  j["quotient_dims"] = quotient_dims;
  j["dims_match_hilbert"] = dims_match_hilbert;
  return j.dump();
}

BorelReport ideals_equal_by_degree(int g, const Integer& p, long d_max) {
  if (g < 1) throw std::invalid_argument("genus must be positive");
  long top = static_cast<long>(g) * (g + 1) / 2;
  if (d_max < 0) d_max = top;

  BorelReport report;
  report.g = g;
  report.p = p;
  report.d_max = d_max;

  std::vector<Polynomial> borel = borel_ideal_gens(g);
  std::vector<Polynomial> twisted = twisted_ideal_gens(g, p);

  std::vector<long> hilbert = ring(g)->hilbert_function();
  report.all_equal = true;
  report.dims_match_hilbert = true;
  for (long d = 0; d <= d_max; ++d) {
    auto basis = partitions_at_most(d, g);
    SpanInfo sb = span_of_multiples(g, borel, d, basis);
    SpanInfo st = span_of_multiples(g, twisted, d, basis);
    DegreeRankRow row;
    row.d = d;
    row.rank_borel = sb.rank;
    row.rank_twisted = st.rank;
    row.equal = same_row_space(sb, st);
    report.all_equal = report.all_equal && row.equal;
    report.degrees.push_back(row);

    long dim = static_cast<long>(basis.size()) - sb.rank;
    report.quotient_dims.push_back(dim);
    long expected = d < static_cast<long>(hilbert.size()) ? hilbert[static_cast<size_t>(d)] : 0;
    if (dim != expected) report.dims_match_hilbert = false;
  }
  return report;
}

Polynomial chern_substitution(const Polynomial& u_poly) {
  int g = static_cast<int>(u_poly.nvars());
  for (int i = 0; i < g; ++i)
    if (u_poly.weights()[static_cast<size_t>(i)] != i + 1)
      throw std::invalid_argument("expected the graded generator weights 1..g");

  std::vector<Polynomial> e;
  for (int i = 1; i <= g; ++i) e.push_back(elementary_symmetric(g, i));

  Polynomial out(x_weights(g));
  for (const auto& [m, c] : u_poly.terms()) {
    Polynomial term = Polynomial::constant(x_weights(g), c);
    for (size_t i = 0; i < m.exp.size(); ++i)
      for (uint32_t k = 0; k < m.exp[i]; ++k) term = term * e[i];
    out += term;
  }
  return out;
}

ChernMapReport chern_map_check(int g, long d_max) {
  ChernMapReport report;
  report.g = g;
  long top = static_cast<long>(g) * (g + 1) / 2;
  if (d_max < 0) d_max = top;

  Presentation pres = build_presentation(g);
  Polynomial image = chern_substitution(pres.master);

  Polynomial target = Polynomial::constant(x_weights(g), Rational(1));
  for (int i = 0; i < g; ++i) {
    Polynomial factor = Polynomial::constant(x_weights(g), Rational(1));
    std::vector<uint32_t> sq(static_cast<size_t>(g), 0);
    sq[static_cast<size_t>(i)] = 2;
    factor.add_term(std::move(sq), Rational(-1));
    target = target * factor;
  }
  target -= Polynomial::constant(x_weights(g), Rational(1));
  report.identity_holds = image == target;

  Polynomial combo(x_weights(g));
  for (int j = 1; j <= g; ++j)
    combo += elementary_symmetric_squares(g, j) * Rational(j % 2 == 0 ? 1 : -1);
  report.image_in_ideal = image == combo;

  std::vector<Polynomial> borel = borel_ideal_gens(g);
  std::vector<long> hilbert = ring(g)->hilbert_function();
  report.dims_match_hilbert = true;
  for (long d = 0; d <= d_max; ++d) {
    auto basis = partitions_at_most(d, g);
    SpanInfo sb = span_of_multiples(g, borel, d, basis);
    long dim = static_cast<long>(basis.size()) - sb.rank;
    long expected = d < static_cast<long>(hilbert.size()) ? hilbert[static_cast<size_t>(d)] : 0;
    if (dim != expected) report.dims_match_hilbert = false;
  }
  return report;
}

}  // namespace zipring
