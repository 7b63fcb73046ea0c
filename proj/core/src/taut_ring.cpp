#include "zipring/taut_ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zipring {

Presentation build_presentation(int g) {
  if (g < 1) throw std::invalid_argument("genus must be positive");
  std::vector<int> weights(g);
  for (int i = 0; i < g; ++i) weights[i] = i + 1;

  Polynomial plus = Polynomial::constant(weights, Rational(1));
  Polynomial minus = Polynomial::constant(weights, Rational(1));
  for (int i = 0; i < g; ++i) {
    Polynomial ui = Polynomial::generator(weights, i);
    plus += ui;
    minus += ui * Rational((i + 1) % 2 == 0 ? 1 : -1);
  }
  Polynomial master = plus * minus - Polynomial::constant(weights, Rational(1));

  Presentation pres;
  pres.g = g;
  pres.weights = weights;
  for (long d : master.support_degrees())
    if (d % 2 != 0)
      throw std::logic_error("odd graded component of the defining product survived");
  for (int k = 1; k <= g; ++k) {
    Polynomial rel = master.graded_component(2 * k);
    if (rel.is_zero())
      throw std::logic_error("missing relation in degree " + std::to_string(2 * k));
    pres.relations.push_back(std::move(rel));
  }
  if (master.degree() > 2 * g)
    throw std::logic_error("defining product has unexpected high-degree terms");
  pres.master = std::move(master);
  return pres;
}

std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, long d) {
  std::vector<Monomial> out;
  std::vector<uint32_t> exp(weights.size(), 0);
  // Fill from the last generator down so each prefix decision bounds the rest.
  auto rec = [&](auto&& self, size_t i, long remaining) -> void {
    if (i == 0) {
      if (remaining % weights[0] == 0) {
        exp[0] = static_cast<uint32_t>(remaining / weights[0]);
        Monomial m{exp, d};
        out.push_back(std::move(m));
        exp[0] = 0;
      }
      return;
    }
    long w = weights[i];
    for (long e = 0; e * w <= remaining; ++e) {
      exp[i] = static_cast<uint32_t>(e);
      self(self, i - 1, remaining - e * w);
    }
    exp[i] = 0;
  };
  if (d >= 0) rec(rec, weights.size() - 1, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
  return out;
}

namespace {

// Rows spanning the degree-d piece of the ideal: every generator times every
// monomial of the complementary degree, in the coordinates of `monos`.
std::vector<SparseRow> ideal_rows(const Presentation& pres,
                                  const std::vector<const Polynomial*>& gens, long d,
                                  const std::vector<Monomial>& monos) {
  std::map<Monomial, size_t> col_of;
  for (size_t j = 0; j < monos.size(); ++j) col_of.emplace(monos[j], j);

  std::vector<SparseRow> rows;
  std::vector<uint32_t> prod(pres.weights.size());
  for (const Polynomial* gen : gens) {
    long e = gen->degree();
    if (e > d || gen->is_zero()) continue;
    for (const Monomial& m : monomials_of_degree(pres.weights, d - e)) {
      SparseRow row;
      row.reserve(gen->terms().size());
      for (const auto& [gm, gc] : gen->terms()) {
        for (size_t i = 0; i < prod.size(); ++i) prod[i] = gm.exp[i] + m.exp[i];
        row.emplace_back(col_of.at(Monomial{prod, d}), gc);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

DegreeSlice build_slice(const Presentation& pres, const std::vector<const Polynomial*>& gens,
                        long d) {
  DegreeSlice slice;
  slice.degree = d;
  slice.monomials = monomials_of_degree(pres.weights, d);
  if (slice.monomials.empty()) return slice;

  auto rref = sparse_rref(ideal_rows(pres, gens, d, slice.monomials));

  std::vector<bool> is_pivot(slice.monomials.size(), false);
  for (const auto& [col, row] : rref) is_pivot[col] = true;
  std::vector<size_t> basis_index(slice.monomials.size(), 0);
  for (size_t j = 0; j < slice.monomials.size(); ++j)
    if (!is_pivot[j]) {
      basis_index[j] = slice.basis.size();
      slice.basis.push_back(slice.monomials[j]);
    }
  for (const auto& [col, row] : rref) {
    std::vector<Rational> rw(slice.basis.size());
    for (size_t k = 1; k < row.size(); ++k) rw[basis_index[row[k].first]] = -row[k].second;
    slice.rewrite.emplace(slice.monomials[col], std::move(rw));
  }
  return slice;
}

long slice_dim(const Presentation& pres, const std::vector<const Polynomial*>& gens, long d) {
  std::vector<Monomial> monos = monomials_of_degree(pres.weights, d);
  if (monos.empty()) return 0;
  return static_cast<long>(monos.size()) - sparse_rank(ideal_rows(pres, gens, d, monos));
}

std::vector<const Polynomial*> relation_pointers(const Presentation& pres) {
  std::vector<const Polynomial*> gens;
  for (const auto& r : pres.relations) gens.push_back(&r);
  return gens;
}

}  // namespace

GradedBasis GradedBasis::build(const Presentation& pres, long d_max,
                               const std::vector<Polynomial>& extra_generators) {
  GradedBasis gb;
  gb.g_ = pres.g;
  std::vector<const Polynomial*> gens = relation_pointers(pres);
  for (const auto& e : extra_generators) {
    if (!e.is_homogeneous()) throw std::invalid_argument("extra generator not homogeneous");
    gens.push_back(&e);
  }
  for (long d = 0; d <= d_max; ++d) gb.slices_.push_back(build_slice(pres, gens, d));
  return gb;
}

const DegreeSlice& GradedBasis::slice(long d) const {
  if (d < 0 || d >= static_cast<long>(slices_.size()))
    throw std::invalid_argument("degree outside built range");
  return slices_[static_cast<size_t>(d)];
}

std::vector<long> GradedBasis::dims() const {
  std::vector<long> out;
  for (const auto& s : slices_) out.push_back(static_cast<long>(s.dim()));
  return out;
}

long GradedBasis::total_dim() const {
  long t = 0;
  for (const auto& s : slices_) t += static_cast<long>(s.dim());
  return t;
}

RingData::RingData(int g) : RingData(build_presentation(g)) {}

RingData::RingData(Presentation pres)
    : pres_(std::move(pres)), top_(static_cast<long>(pres_.g) * (pres_.g + 1) / 2) {}

const DegreeSlice& RingData::slice(long d) const {
  if (d < 0 || d > top_) throw std::invalid_argument("degree outside 0..top");
  std::lock_guard<std::mutex> lock(mu_);
  auto it = slices_.find(d);
  if (it == slices_.end())
    it = slices_.emplace(d, build_slice(pres_, relation_pointers(pres_), d)).first;
  return it->second;
}

void RingData::ensure_high_degrees_vanish() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (high_checked_) return;
  // Degrees top+1 .. top+g must be zero; beyond that, any monomial splits
  // off a generator and the cofactor still has degree above the top, so
  // emptiness propagates by induction on degree.
  auto gens = relation_pointers(pres_);
  for (long d = top_ + 1; d <= top_ + pres_.g; ++d)
    if (slice_dim(pres_, gens, d) != 0)
      throw std::logic_error("ring does not vanish above its top degree");
  high_checked_ = true;
}

Polynomial RingData::normal_form(const Polynomial& p) const {
  if (p.weights() != pres_.weights)
    throw std::invalid_argument("polynomial does not live in this ring");
  Polynomial out(pres_.weights);
  bool high_seen = false;
  for (const auto& [m, c] : p.terms()) {
    if (m.wdeg > top_) {
      if (!high_seen) {
        ensure_high_degrees_vanish();
        high_seen = true;
      }
      continue;
    }
    const DegreeSlice& sl = slice(m.wdeg);
    auto it = sl.rewrite.find(m);
    if (it == sl.rewrite.end()) {
      out.add_term(m, c);
    } else {
      for (size_t b = 0; b < it->second.size(); ++b)
        if (it->second[b] != 0) out.add_term(sl.basis[b], c * it->second[b]);
    }
  }
  return out;
}

std::vector<long> RingData::hilbert_function() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!hilbert_) {
    std::vector<long> dims;
    auto gens = relation_pointers(pres_);
    for (long d = 0; d <= top_; ++d) dims.push_back(slice_dim(pres_, gens, d));
    hilbert_ = std::move(dims);
  }
  return *hilbert_;
}

std::shared_ptr<const RingData> ring(int g) {
  if (g < 1 || g > max_supported_genus)
    throw std::invalid_argument("genus outside supported range 1.." +
                                std::to_string(max_supported_genus));
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const RingData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(g);
  if (it != cache.end()) return it->second;
  auto data = std::make_shared<const RingData>(g);
  cache.emplace(g, data);
  return data;
}

RingElement element(const RingData& ring, const Polynomial& p) {
  return RingElement{ring.g(), ring.normal_form(p)};
}

RingElement multiply(const RingData& ring, const RingElement& x, const RingElement& y) {
  if (x.g != ring.g() || y.g != ring.g())
    throw std::invalid_argument("element genus mismatch");
  return RingElement{ring.g(), ring.normal_form(x.nf * y.nf)};
}

bool is_zero(const RingElement& x) { return x.nf.is_zero(); }

RingElement lambda_class(const RingData& ring, int i) {
  if (i < 1 || i > ring.g()) throw std::invalid_argument("class index out of range");
  return element(ring, Polynomial::generator(ring.presentation().weights,
                                             static_cast<size_t>(i - 1)));
}

std::vector<long> expected_hilbert(int g) {
  long top = static_cast<long>(g) * (g + 1) / 2;
  std::vector<long> coeff(static_cast<size_t>(top) + 1, 0);
  coeff[0] = 1;
  for (int i = 1; i <= g; ++i)
    for (long d = top; d >= i; --d)
      if (coeff[static_cast<size_t>(d - i)] != 0)
        coeff[static_cast<size_t>(d)] += coeff[static_cast<size_t>(d - i)];
  return coeff;
}

QuotientReport quotient_by_top_lambda(int g) {
  if (g < 2) throw std::invalid_argument("quotient comparison needs g >= 2");
  QuotientReport report;
  report.g = g;

  auto big = ring(g);
  auto low = ring(g - 1);
  long top = big->top_degree();
  long low_top = low->top_degree();

  Polynomial ug = Polynomial::generator(big->presentation().weights,
                                        static_cast<size_t>(g - 1));
  GradedBasis quot = GradedBasis::build(big->presentation(), top, {ug});

  report.quotient_dims = quot.dims();
  report.lower_dims = low->hilbert_function();
  std::vector<long> padded = report.lower_dims;
  padded.resize(report.quotient_dims.size(), 0);
  report.dims_match = padded == report.quotient_dims;

  // The quotient kills every monomial containing u_g, so its basis should be
  // exactly the genus g-1 basis read in g variables.
  report.bases_match = true;
  for (long d = 0; d <= top && report.bases_match; ++d) {
    const auto& qb = quot.slice(d).basis;
    std::vector<Monomial> lowered;
    if (d <= low_top)
      for (const auto& m : low->slice(d).basis) {
        std::vector<uint32_t> exp = m.exp;
        exp.push_back(0);
        lowered.push_back(Monomial{std::move(exp), m.wdeg});
      }
    if (qb.size() != lowered.size()) {
      report.bases_match = false;
      break;
    }
    for (size_t i = 0; i < qb.size(); ++i)
      if (!(qb[i] == lowered[i])) {
        report.bases_match = false;
        break;
      }
  }

  // Products of basis monomials must reduce identically in the quotient and
  // in the genus g-1 ring.  Degrees above low_top vanish on both sides: the
  // quotient slices between low_top and top are already known empty when the
  // dimensions matched, and emptiness propagates upward as usual.
  auto quotient_nf = [&](const Polynomial& p) {
    Polynomial out(big->presentation().weights);
    for (const auto& [m, c] : p.terms()) {
      if (m.wdeg > low_top) continue;
      const DegreeSlice& slice = quot.slice(m.wdeg);
      auto it = slice.rewrite.find(m);
      if (it == slice.rewrite.end()) {
        out.add_term(m, c);
      } else {
        for (size_t b = 0; b < it->second.size(); ++b)
          if (it->second[b] != 0) out.add_term(slice.basis[b], c * it->second[b]);
      }
    }
    return out;
  };

  report.multiplicative = report.dims_match && report.bases_match;
  if (report.multiplicative) {
    std::vector<Monomial> low_basis;
    for (long d = 0; d <= low_top; ++d)
      for (const auto& m : low->slice(d).basis) low_basis.push_back(m);

    const auto& wlow = low->presentation().weights;
    const auto& wbig = big->presentation().weights;
    for (size_t i = 0; i < low_basis.size() && report.multiplicative; ++i) {
      for (size_t j = i; j < low_basis.size() && report.multiplicative; ++j) {
        Polynomial a(wlow), b(wlow);
        a.add_term(low_basis[i], Rational(1));
        b.add_term(low_basis[j], Rational(1));
        Polynomial low_nf = low->normal_form(a * b);

        Polynomial abig(wbig), bbig(wbig);
        std::vector<uint32_t> ea = low_basis[i].exp, eb = low_basis[j].exp;
        ea.push_back(0);
        eb.push_back(0);
        abig.add_term(std::move(ea), Rational(1));
        bbig.add_term(std::move(eb), Rational(1));
        Polynomial quot_nf = quotient_nf(abig * bbig);

        Polynomial lifted(wbig);
        for (const auto& [m, c] : low_nf.terms()) {
          std::vector<uint32_t> exp = m.exp;
          exp.push_back(0);
          lifted.add_term(std::move(exp), c);
        }
        if (!(lifted == quot_nf)) report.multiplicative = false;
      }
    }
  }
  return report;
}

}  // namespace zipring
