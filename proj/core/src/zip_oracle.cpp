#include "zipring/zip_oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zipring/version.hpp"

namespace zipring {

namespace {

Integer integer_pow(long base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

bool fits_limit(const Integer& value, uint64_t limit) {
  static_assert(sizeof(unsigned long) >= sizeof(uint64_t));
  return value <= Integer(static_cast<unsigned long>(limit));
}

void require_prime(long p) {
  if (!is_small_prime(p)) throw std::invalid_argument("p must be a (small) prime");
}

// <a, b> for the standard form in the basis e_1..e_g, f_1..f_g.
long pair_sym(const std::vector<long>& a, const std::vector<long>& b, int g, long p) {
  long acc = 0;
  for (int i = 0; i < g; ++i) {
    acc += a[static_cast<size_t>(i)] * b[static_cast<size_t>(g + i)];
    acc -= a[static_cast<size_t>(g + i)] * b[static_cast<size_t>(i)];
    acc %= p;
  }
  return acc < 0 ? acc + p : acc;
}

bool gram_vanishes(const FpMat& rows, const FpMat& form) {
  FpMat gram = rows * form * rows.transposed();
  for (size_t i = 0; i < gram.rows(); ++i)
    for (size_t j = 0; j < gram.cols(); ++j)
      if (gram.at(i, j) != 0) return false;
  return true;
}

// Incremental rank tracker: rows with distinct leading positions, stack
// discipline (pop only what was pushed).
class Echelon {
 public:
  explicit Echelon(long p) : p_(p) {}

  size_t size() const { return rows_.size(); }

  // True when v enlarges the span (and was pushed).
  bool push(std::vector<long> v) {
    for (size_t k = 0; k < rows_.size(); ++k) {
      long c = v[leads_[k]];
      if (c == 0) continue;
      const auto& r = rows_[k];
      for (size_t j = leads_[k]; j < v.size(); ++j) {
        long x = (v[j] - c * r[j]) % p_;
        v[j] = x < 0 ? x + p_ : x;
      }
    }
    size_t lead = v.size();
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        lead = j;
        break;
      }
    if (lead == v.size()) return false;
    long inv = mod_inverse(v[lead], p_);
    if (inv != 1)
      for (size_t j = lead; j < v.size(); ++j) v[j] = v[j] * inv % p_;
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  void pop() {
    rows_.pop_back();
    leads_.pop_back();
  }

 private:
  long p_;
  std::vector<std::vector<long>> rows_;
  std::vector<size_t> leads_;
};

std::string subspace_key(const FpMat& basis) { return basis.to_string(); }

nlohmann::json label_to_json(const std::optional<EOType>& label) {
  if (!label) return nullptr;
  return nlohmann::json{{"g", label->g}, {"parts", label->parts}};
}

std::optional<EOType> label_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  EOType t;
  t.g = j.at("g").get<int>();
  t.parts = j.at("parts").get<std::vector<int>>();
  t.validate();
  return t;
}

}  // namespace

void Zip::validate() const {
  require_prime(p);
  size_t n = 2 * static_cast<size_t>(g);
  if (g < 1 || f.rows() != n || f.cols() != n || f.p() != p)
    throw std::invalid_argument("zip matrix has the wrong shape");
  if (f.rank() != g) throw std::invalid_argument("zip matrix must have rank g");
  FpMat form = symplectic_form(g, p);
  if (!gram_vanishes(f, form)) throw std::invalid_argument("image is not isotropic");
  if (!gram_vanishes(kernel(f), form)) throw std::invalid_argument("kernel is not isotropic");
}

FpMat adjoint_map(const Zip& z) {
  FpMat form = symplectic_form(z.g, z.p);
  return form.inverse() * z.f.transposed() * form;
}

Integer lagrangian_count_formula(int g, long p) {
  Integer out = 1;
  for (int i = 1; i <= g; ++i) out *= integer_pow(p, static_cast<unsigned long>(i)) + 1;
  return out;
}

Integer gl_order(int g, long p) {
  Integer out = 1;
  Integer pg = integer_pow(p, static_cast<unsigned long>(g));
  for (int i = 0; i < g; ++i) out *= pg - integer_pow(p, static_cast<unsigned long>(i));
  return out;
}

Integer zip_count_formula(int g, long p) {
  Integer lag = lagrangian_count_formula(g, p);
  return lag * lag * gl_order(g, p);
}

Integer symplectic_group_order(int g, long p) {
  Integer out = integer_pow(p, static_cast<unsigned long>(g) * static_cast<unsigned long>(g));
  for (int i = 1; i <= g; ++i) out *= integer_pow(p, 2 * static_cast<unsigned long>(i)) - 1;
  return out;
}

std::vector<FpMat> enumerate_lagrangians(int g, long p, const OracleLimits& limits) {
  require_prime(p);
  if (g < 1) throw std::invalid_argument("genus must be positive");
  Integer expect = lagrangian_count_formula(g, p);
  if (!fits_limit(expect, limits.max_lagrangians))
    throw ResourceGuardError("Lagrangian count exceeds the configured limit");

  size_t n = 2 * static_cast<size_t>(g);
  std::vector<FpMat> found;

  std::vector<size_t> pivots(static_cast<size_t>(g));
  for (size_t i = 0; i < pivots.size(); ++i) pivots[i] = i;
  bool more = true;
  while (more) {
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<size_t>> free_cols(static_cast<size_t>(g));
    for (size_t i = 0; i < free_cols.size(); ++i)
      for (size_t j = pivots[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free_cols[i].push_back(j);

    std::vector<std::vector<long>> rows(static_cast<size_t>(g), std::vector<long>(n, 0));
    auto dfs = [&](auto&& self, size_t i) -> void {
      if (i == static_cast<size_t>(g)) {
        FpMat m(static_cast<size_t>(g), n, p);
        for (size_t a = 0; a < rows.size(); ++a)
          for (size_t b = 0; b < n; ++b) m.set(a, b, rows[a][b]);
        found.push_back(std::move(m));
        return;
      }
      auto& row = rows[i];
      std::fill(row.begin(), row.end(), 0);
      row[pivots[i]] = 1;
      const auto& fc = free_cols[i];
      std::vector<long> digits(fc.size(), 0);
      for (;;) {
        bool isotropic = true;
        for (size_t k = 0; k < i && isotropic; ++k)
          isotropic = pair_sym(row, rows[k], g, p) == 0;
        if (isotropic) self(self, i + 1);
        size_t d = 0;
        while (d < digits.size()) {
          if (++digits[d] < p) {
            row[fc[d]] = digits[d];
            break;
          }
          digits[d] = 0;
          row[fc[d]] = 0;
          ++d;
        }
        if (d == digits.size()) break;
      }
    };
    dfs(dfs, 0);

    // next g-combination of {0..n-1}
    size_t i = pivots.size();
    while (i-- > 0) {
      if (pivots[i] != n - pivots.size() + i) {
        ++pivots[i];
        for (size_t j = i + 1; j < pivots.size(); ++j) pivots[j] = pivots[j - 1] + 1;
        break;
      }
      if (i == 0) more = false;
    }
  }

  if (Integer(static_cast<unsigned long>(found.size())) != expect)
    throw std::logic_error("Lagrangian enumeration disagrees with the closed form");
  return found;
}

void for_each_zip(int g, long p, const OracleLimits& limits,
                  const std::function<void(const FpMat&)>& fn) {
  require_prime(p);
  Integer expect = zip_count_formula(g, p);
  if (!fits_limit(expect, limits.max_total_zips))
    throw ResourceGuardError("zip count exceeds the configured limit");

  size_t n = 2 * static_cast<size_t>(g);
  size_t gs = static_cast<size_t>(g);
  std::vector<FpMat> lags = enumerate_lagrangians(g, p, limits);

  // All invertible g x g matrices, in odometer order.
  std::vector<FpMat> gl;
  {
    std::vector<long> digits(gs * gs, 0);
    for (;;) {
      FpMat a(gs, gs, p);
      for (size_t i = 0; i < gs; ++i)
        for (size_t j = 0; j < gs; ++j) a.set(i, j, digits[i * gs + j]);
      if (a.is_invertible()) gl.push_back(std::move(a));
      size_t d = 0;
      while (d < digits.size() && ++digits[d] == p) digits[d++] = 0;
      if (d == digits.size()) break;
    }
    if (Integer(static_cast<unsigned long>(gl.size())) != gl_order(g, p))
      throw std::logic_error("GL enumeration disagrees with the closed form");
  }

  // Images of the transversal rows: one basis of the target Lagrangian per
  // gluing matrix.
  std::vector<std::vector<FpMat>> glued(lags.size());
  for (size_t l2 = 0; l2 < lags.size(); ++l2) {
    glued[l2].reserve(gl.size());
    for (const auto& a : gl) glued[l2].push_back(a * lags[l2]);
  }

  uint64_t total = 0;
  for (const auto& l1 : lags) {
    // Transversal: unit vectors at the non-pivot columns of the kernel basis.
    FpMat l1copy = l1;
    auto piv = l1copy.row_reduce();
    std::vector<bool> is_pivot(n, false);
    for (size_t c : piv) is_pivot[c] = true;
    FpMat b(n, n, p);
    for (size_t i = 0; i < gs; ++i)
      for (size_t j = 0; j < n; ++j) b.set(i, j, l1.at(i, j));
    size_t t = gs;
    for (size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) b.set(t++, j, 1);
    FpMat binv = b.inverse();
    // Only the columns that hit the transversal rows matter: the kernel rows
    // map to zero.
    FpMat bc(n, gs, p);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < gs; ++j) bc.set(i, j, binv.at(i, gs + j));

    for (size_t l2 = 0; l2 < lags.size(); ++l2)
      for (const auto& al2 : glued[l2]) {
        FpMat f = bc * al2;
        fn(f);
        ++total;
      }
  }
  if (Integer(total) != expect) throw std::logic_error("zip enumeration disagrees with the closed form");
}

std::vector<Zip> enumerate_zips(int g, long p, const OracleLimits& limits) {
  std::vector<Zip> out;
  for_each_zip(g, p, limits, [&](const FpMat& f) { out.emplace_back(g, p, f); });
  return out;
}

std::vector<FpMat> symplectic_generators(int g, long p) {
  require_prime(p);
  size_t gs = static_cast<size_t>(g);
  size_t n = 2 * gs;
  FpMat form = symplectic_form(g, p);
  std::vector<FpMat> gens;

  auto add = [&](const FpMat& m) {
    if (!(m * form * m.transposed() == form))
      throw std::logic_error("generator does not preserve the form");
    gens.push_back(m);
  };

  // diag(U, U^{-T}) for the elementary U = I + E_ij.
  for (size_t i = 0; i < gs; ++i)
    for (size_t j = 0; j < gs; ++j) {
      if (i == j) continue;
      FpMat m = FpMat::identity(n, p);
      m.set(i, j, 1);
      m.set(gs + j, gs + i, -1);
      add(m);
    }
  // Block shears by the elementary symmetric matrices.
  std::vector<FpMat> sym;
  for (size_t i = 0; i < gs; ++i) {
    FpMat s(gs, gs, p);
    s.set(i, i, 1);
    sym.push_back(s);
  }
  for (size_t i = 0; i < gs; ++i)
    for (size_t j = i + 1; j < gs; ++j) {
      FpMat s(gs, gs, p);
      s.set(i, j, 1);
      s.set(j, i, 1);
      sym.push_back(s);
    }
  for (const auto& s : sym) {
    FpMat upper = FpMat::identity(n, p);
    FpMat lower = FpMat::identity(n, p);
    for (size_t i = 0; i < gs; ++i)
      for (size_t j = 0; j < gs; ++j) {
        upper.set(i, gs + j, s.at(i, j));
        lower.set(gs + i, j, s.at(i, j));
      }
    add(upper);
    add(lower);
  }
  return gens;
}

uint64_t symplectic_generator_closure_size(int g, long p, const OracleLimits& limits) {
  std::vector<FpMat> gens = symplectic_generators(g, p);
  size_t n = 2 * static_cast<size_t>(g);
  std::set<uint64_t> seen;
  std::queue<uint64_t> frontier;
  uint64_t start = FpMat::identity(n, p).encode();
  seen.insert(start);
  frontier.push(start);
  while (!frontier.empty()) {
    FpMat m = FpMat::decode(frontier.front(), n, n, p);
    frontier.pop();
    for (const auto& s : gens) {
      uint64_t key = (m * s).encode();
      if (seen.insert(key).second) {
        if (seen.size() > limits.max_group_bfs)
          throw ResourceGuardError("group closure exceeds the configured limit");
        frontier.push(key);
      }
    }
  }
  return seen.size();
}

ZipInvariant zip_invariant(const Zip& z) {
  size_t n = 2 * static_cast<size_t>(z.g);
  FpMat form = symplectic_form(z.g, z.p);
  FpMat v = adjoint_map(z);

  // Closure of {0, everything} under F-image and adjoint-preimage.
  std::vector<FpMat> chain{FpMat(0, n, z.p), FpMat::identity(n, z.p)};
  std::set<std::string> seen{subspace_key(chain[0]), subspace_key(chain[1])};
  for (size_t i = 0; i < chain.size(); ++i) {
    for (FpMat next : {map_image(chain[i], z.f), map_preimage(chain[i], v)}) {
      if (seen.insert(subspace_key(next)).second) chain.push_back(std::move(next));
    }
  }
  std::sort(chain.begin(), chain.end(),
            [](const FpMat& a, const FpMat& b) { return a.rows() < b.rows(); });
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i].rows() == chain[i + 1].rows() || !subspace_contains(chain[i + 1], chain[i]))
      throw std::logic_error("canonical subspaces do not form a chain");
  }

  ZipInvariant inv;
  for (const auto& c : chain) inv.chain_dims.push_back(static_cast<long>(c.rows()));
  auto position = [&](const FpMat& u) {
    std::string k = subspace_key(u);
    for (size_t j = 0; j < chain.size(); ++j)
      if (subspace_key(chain[j]) == k) return static_cast<long>(j);
    throw std::logic_error("closure is not closed");
  };
  for (const auto& c : chain) {
    inv.f_image_index.push_back(position(map_image(c, z.f)));
    inv.v_preimage_index.push_back(position(map_preimage(c, v)));
  }

  // Refining flags, in construction order (which conjugation preserves):
  // iterated preimages of 0 and images of everything, then their perps.
  auto build_family = [&](bool preimages) {
    std::vector<FpMat> fam;
    FpMat cur = preimages ? FpMat(0, n, z.p) : FpMat::identity(n, z.p);
    fam.push_back(cur);
    for (;;) {
      FpMat next = preimages ? map_preimage(cur, z.f) : map_image(cur, z.f);
      if (subspace_key(next) == subspace_key(cur)) break;
      fam.push_back(next);
      cur = std::move(next);
    }
    size_t base = fam.size();
    for (size_t i = 0; i < base; ++i) fam.push_back(perp(fam[i], form));
    // drop repeats, keeping first occurrences
    std::vector<FpMat> out;
    std::set<std::string> keys;
    for (auto& m : fam)
      if (keys.insert(subspace_key(m)).second) out.push_back(std::move(m));
    return out;
  };
  std::vector<FpMat> cfam = build_family(true);
  std::vector<FpMat> dfam = build_family(false);
  inv.refinement.assign(cfam.size(), std::vector<long>(dfam.size(), 0));
  for (size_t i = 0; i < cfam.size(); ++i)
    for (size_t j = 0; j < dfam.size(); ++j)
      inv.refinement[i][j] = dim_intersection(cfam[i], dfam[j]);
  return inv;
}

std::string ZipInvariant::key() const {
  std::ostringstream out;
  auto join = [&](const std::vector<long>& v) {
    for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  };
  out << "c:";
  join(chain_dims);
  out << ";f:";
  join(f_image_index);
  out << ";v:";
  join(v_preimage_index);
  out << ";m:";
  for (size_t i = 0; i < refinement.size(); ++i) {
    if (i) out << "/";
    join(refinement[i]);
  }
  return out.str();
}

long p_rank(const Zip& z) { return z.f.pow(2 * static_cast<unsigned long>(z.g)).rank(); }

long a_number(const Zip& z) { return dim_intersection(kernel(z.f), row_basis(z.f)); }

std::optional<EOType> label_from_counts(int g, long prank, long anum) {
  if (prank < 0 || prank > g || anum < 0) return std::nullopt;
  if (prank == g) {
    if (anum != 0) return std::nullopt;
    return EOType{g, {}};
  }
  int m = static_cast<int>(g - prank);  // largest part
  if (anum < 1 || anum > m) return std::nullopt;
  // Partitions: {m} union (anum-1 parts chosen from 1..m-1); unique only at
  // the two extremes.
  if (anum == 1) return EOType{g, {m}};
  if (anum == m) {
    std::vector<int> parts;
    for (int q = m; q >= 1; --q) parts.push_back(q);
    return EOType{g, parts};
  }
  return std::nullopt;
}

const OrbitClass* OrbitDecomposition::class_for(const std::string& invariant_key) const {
  for (const auto& c : classes)
    if (c.invariant_key == invariant_key) return &c;
  return nullptr;
}

namespace {

struct UnionFind {
  std::vector<uint32_t> parent;
  std::vector<uint32_t> size;

  explicit UnionFind(size_t n) : parent(n), size(n, 1) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
  }
  uint32_t find(uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

OrbitDecomposition orbit_decomposition(int g, long p, const OracleLimits& limits) {
  size_t n = 2 * static_cast<size_t>(g);
  Integer key_bound = integer_pow(p, static_cast<unsigned long>(n) * n);
  if (!fits_limit(key_bound, std::numeric_limits<uint64_t>::max()))
    throw ResourceGuardError("matrix keys would not fit in 64 bits");

  std::vector<uint64_t> keys;
  {
    Integer expect = zip_count_formula(g, p);
    if (fits_limit(expect, limits.max_total_zips)) keys.reserve(expect.get_ui());
  }
  for_each_zip(g, p, limits, [&](const FpMat& f) { keys.push_back(f.encode()); });
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::logic_error("zip enumeration produced duplicates");

  auto index_of = [&](uint64_t key) {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key)
      throw std::logic_error("conjugation left the enumerated set");
    return static_cast<uint32_t>(it - keys.begin());
  };

  std::vector<std::pair<FpMat, FpMat>> moves;
  for (const auto& s : symplectic_generators(g, p)) moves.emplace_back(s.inverse(), s);

  UnionFind uf(keys.size());
  for (size_t i = 0; i < keys.size(); ++i) {
    FpMat f = FpMat::decode(keys[i], n, n, p);
    for (const auto& [sinv, s] : moves)
      uf.unite(static_cast<uint32_t>(i), index_of((sinv * f * s).encode()));
  }

  // roots in first-member order
  std::map<uint32_t, uint32_t> root_first;
  for (size_t i = 0; i < keys.size(); ++i)
    root_first.emplace(uf.find(static_cast<uint32_t>(i)), static_cast<uint32_t>(i));

  std::map<std::string, OrbitClass> by_key;
  for (const auto& [root, first] : root_first) {
    Zip rep(g, p, FpMat::decode(keys[first], n, n, p));
    std::string key = zip_invariant(rep).key();
    long prank = p_rank(rep);
    long anum = a_number(rep);
    auto [it, fresh] = by_key.try_emplace(key);
    OrbitClass& cls = it->second;
    if (fresh) {
      cls.invariant_key = key;
      cls.p_rank = prank;
      cls.a_number = anum;
      cls.label = label_from_counts(g, prank, anum);
      cls.representative = keys[first];
    } else if (cls.p_rank != prank || cls.a_number != anum) {
      throw std::logic_error("invariant failed to separate distinct behaviour");
    }
    cls.points += uf.size[root];
    cls.orbit_count += 1;
  }

  OrbitDecomposition dec;
  dec.g = g;
  dec.p = p;
  dec.zip_count = keys.size();
  for (auto& [key, cls] : by_key) dec.classes.push_back(std::move(cls));
  return dec;
}

bool prank_census_matches(const OrbitDecomposition& dec) {
  std::map<long, long> census;
  for (const auto& c : dec.classes) census[c.p_rank] += 1;
  for (long f = 0; f <= dec.g; ++f) {
    long expected = f == dec.g ? 1 : (1L << (dec.g - f - 1));
    long got = census.count(f) ? census[f] : 0;
    if (got != expected) return false;
  }
  return static_cast<long>(dec.classes.size()) == (1L << dec.g);
}

std::vector<Zip> zips_with_isotropic(int g, int r, long p, const OracleLimits& limits) {
  require_prime(p);
  if (r < 1 || r > g) throw std::invalid_argument("need 1 <= r <= g");
  size_t n = 2 * static_cast<size_t>(g);
  size_t gs = static_cast<size_t>(g);
  size_t rs = static_cast<size_t>(r);
  unsigned long side = 2 * static_cast<unsigned long>(g) - static_cast<unsigned long>(r);
  if (!fits_limit(integer_pow(p, side * side), limits.max_constrained_loop))
    throw ResourceGuardError("constrained enumeration exceeds the configured limit");

  // Free coordinates: everything outside the f_1..f_r block.
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < n; ++j)
    if (j < gs || j >= gs + rs) free_cols.push_back(j);

  // Rows r..2g-1 vary; rows g..g+r-1 are affine (unit f_j part fixed).
  std::vector<size_t> var_rows;
  for (size_t i = rs; i < n; ++i) var_rows.push_back(i);

  FpMat form = symplectic_form(g, p);
  FpMat f(n, n, p);
  for (size_t j = 0; j < rs; ++j) f.set(gs + j, gs + j, 1);

  std::vector<std::vector<long>> fixed_rows(n, std::vector<long>(n, 0));
  for (size_t j = 0; j < rs; ++j) fixed_rows[gs + j][gs + j] = 1;

  std::vector<Zip> out;
  Echelon ech(p);
  auto dfs = [&](auto&& self, size_t level) -> void {
    if (level == var_rows.size()) {
      if (ech.size() != gs) return;
      if (!gram_vanishes(kernel(f), form)) return;
      Zip z(g, p, f);
      z.validate();
      out.push_back(std::move(z));
      return;
    }
    size_t ri = var_rows[level];
    std::vector<long>& row = fixed_rows[ri];
    std::vector<long> digits(free_cols.size(), 0);
    for (size_t j : free_cols) row[j] = 0;
    for (;;) {
      bool isotropic = true;
      for (size_t k = rs; k < ri && isotropic; ++k)
        isotropic = pair_sym(row, fixed_rows[k], g, p) == 0;
      if (isotropic) {
        bool grew = ech.push(row);
        if (!grew || ech.size() <= gs) {
          for (size_t j = 0; j < n; ++j) f.set(ri, j, row[j]);
          self(self, level + 1);
        }
        if (grew) ech.pop();
      }
      size_t d = 0;
      while (d < digits.size()) {
        if (++digits[d] < p) {
          row[free_cols[d]] = digits[d];
          break;
        }
        digits[d] = 0;
        row[free_cols[d]] = 0;
        ++d;
      }
      if (d == digits.size()) break;
    }
  };
  dfs(dfs, 0);
  return out;
}

namespace {

// Positions of the induced basis e_{r+1}..e_g, f_{r+1}..f_g inside the
// ambient one.
std::vector<size_t> middle_positions(int g, int r) {
  std::vector<size_t> pos;
  for (int a = r; a < g; ++a) pos.push_back(static_cast<size_t>(a));
  for (int a = g + r; a < 2 * g; ++a) pos.push_back(static_cast<size_t>(a));
  return pos;
}

void check_constrained_shape(const Zip& z, int r) {
  size_t gs = static_cast<size_t>(z.g);
  size_t rs = static_cast<size_t>(r);
  size_t n = 2 * gs;
  for (size_t i = 0; i < rs; ++i)
    for (size_t j = 0; j < n; ++j)
      if (z.f.at(i, j) != 0) throw std::invalid_argument("e_1..e_r are not killed");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = gs; j < gs + rs; ++j) {
      long want = (i >= gs && i < gs + rs && i == j) ? 1 : 0;
      if (z.f.at(i, j) != want)
        throw std::invalid_argument("matrix does not respect the degeneration shape");
    }
}

}  // namespace

Zip induced_zip(const Zip& z, int r) {
  if (r < 1 || r > z.g) throw std::invalid_argument("need 1 <= r <= g");
  check_constrained_shape(z, r);
  auto pos = middle_positions(z.g, r);
  FpMat m(pos.size(), pos.size(), z.p);
  for (size_t a = 0; a < pos.size(); ++a)
    for (size_t b = 0; b < pos.size(); ++b) m.set(a, b, z.f.at(pos[a], pos[b]));
  Zip out(z.g - r, z.p, std::move(m));
  out.validate();
  return out;
}

Zip embed_zip(const Zip& zprime, int r) {
  if (r < 1) throw std::invalid_argument("need r >= 1");
  int g = zprime.g + r;
  size_t gs = static_cast<size_t>(g);
  FpMat f(2 * gs, 2 * gs, zprime.p);
  for (size_t j = 0; j < static_cast<size_t>(r); ++j) f.set(gs + j, gs + j, 1);
  auto pos = middle_positions(g, r);
  for (size_t a = 0; a < pos.size(); ++a)
    for (size_t b = 0; b < pos.size(); ++b) f.set(pos[a], pos[b], zprime.f.at(a, b));
  Zip out(g, zprime.p, std::move(f));
  out.validate();
  return out;
}

IotaTable derive_iota(int g, int r, long p, const OracleLimits& limits) {
  IotaTable table;
  table.g = g;
  table.r = r;
  table.p = p;

  struct ClassSeen {
    std::set<std::string> ambient_keys;
    long prank_induced = 0;
    long anum_induced = 0;
  };
  std::map<std::string, ClassSeen> seen;
  std::map<std::string, std::pair<long, long>> ambient_counts;

  table.prank_additive = true;
  for (const Zip& z : zips_with_isotropic(g, r, p, limits)) {
    Zip ind = induced_zip(z, r);
    std::string ik = zip_invariant(ind).key();
    std::string ak = zip_invariant(z).key();
    long pr_ind = p_rank(ind);
    long pr_amb = p_rank(z);
    auto& cell = seen[ik];
    cell.ambient_keys.insert(ak);
    cell.prank_induced = pr_ind;
    cell.anum_induced = a_number(ind);
    ambient_counts.try_emplace(ak, pr_amb, a_number(z));
    if (pr_amb != pr_ind + r) table.prank_additive = false;
  }

  table.well_defined = true;
  table.injective = true;
  std::set<std::string> images;
  for (const auto& [ik, cell] : seen) {
    if (cell.ambient_keys.size() != 1) table.well_defined = false;
    for (const auto& ak : cell.ambient_keys) {
      table.by_invariant.emplace_back(ik, ak);
      if (!images.insert(ak).second) table.injective = false;
    }
  }
  table.induced_class_count = static_cast<long>(seen.size());

  table.labels_complete = true;
  table.matches_closed_form = table.well_defined;
  for (const auto& [ik, cell] : seen) {
    if (cell.ambient_keys.size() != 1) continue;
    const std::string& ak = *cell.ambient_keys.begin();
    auto dom = label_from_counts(g - r, cell.prank_induced, cell.anum_induced);
    auto img = label_from_counts(g, ambient_counts.at(ak).first, ambient_counts.at(ak).second);
    if (!dom || !img) {
      table.labels_complete = false;
      table.matches_closed_form = false;
      continue;
    }
    table.by_label.emplace_back(*dom, *img);
    if (!(iota_embedding(g, r, *dom) == *img)) table.matches_closed_form = false;
  }
  std::sort(table.by_label.begin(), table.by_label.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (!table.labels_complete) table.matches_closed_form = false;
  return table;
}

std::string OrbitDecomposition::to_json_string() const {
  nlohmann::json j;
  j["format_version"] = format_version;
  j["toolkit_version"] = toolkit_version;
  j["g"] = g;
  j["p"] = p;
  j["zip_count"] = zip_count;
  auto& arr = j["classes"] = nlohmann::json::array();
  for (const auto& c : classes) {
    arr.push_back({{"invariant", c.invariant_key},
                   {"points", c.points},
                   {"orbits", c.orbit_count},
                   {"p_rank", c.p_rank},
                   {"a_number", c.a_number},
                   {"label", label_to_json(c.label)},
                   {"representative", std::to_string(c.representative)}});
  }
  return j.dump();
}

OrbitDecomposition OrbitDecomposition::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != format_version)
    throw std::runtime_error("cache entry has a different format version");
  OrbitDecomposition dec;
  dec.g = j.at("g").get<int>();
  dec.p = j.at("p").get<long>();
  dec.zip_count = j.at("zip_count").get<uint64_t>();
  for (const auto& e : j.at("classes")) {
    OrbitClass c;
    c.invariant_key = e.at("invariant").get<std::string>();
    c.points = e.at("points").get<uint64_t>();
    c.orbit_count = e.at("orbits").get<long>();
    c.p_rank = e.at("p_rank").get<long>();
    c.a_number = e.at("a_number").get<long>();
    c.label = label_from_json(e.at("label"));
    c.representative = std::stoull(e.at("representative").get<std::string>());
    dec.classes.push_back(std::move(c));
  }
  return dec;
}

std::string IotaTable::to_json_string() const {
  nlohmann::json j;
  j["format_version"] = format_version;
  j["toolkit_version"] = toolkit_version;
  j["g"] = g;
  j["r"] = r;
  j["p"] = p;
  j["well_defined"] = well_defined;
  j["injective"] = injective;
  j["prank_additive"] = prank_additive;
  j["induced_class_count"] = induced_class_count;
  auto& inv = j["by_invariant"] = nlohmann::json::array();
  for (const auto& [a, b] : by_invariant) inv.push_back({a, b});
  auto& lab = j["by_label"] = nlohmann::json::array();
  for (const auto& [a, b] : by_label)
    lab.push_back({{{"g", a.g}, {"parts", a.parts}}, {{"g", b.g}, {"parts", b.parts}}});
  j["labels_complete"] = labels_complete;
  j["matches_closed_form"] = matches_closed_form;
  return j.dump();
}

IotaTable IotaTable::from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != format_version)
    throw std::runtime_error("cache entry has a different format version");
  IotaTable t;
  t.g = j.at("g").get<int>();
  t.r = j.at("r").get<int>();
  t.p = j.at("p").get<long>();
  t.well_defined = j.at("well_defined").get<bool>();
  t.injective = j.at("injective").get<bool>();
  t.prank_additive = j.at("prank_additive").get<bool>();
  t.induced_class_count = j.at("induced_class_count").get<long>();
  for (const auto& e : j.at("by_invariant"))
    t.by_invariant.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  for (const auto& e : j.at("by_label")) {
    EOType a;
    a.g = e.at(0).at("g").get<int>();
    a.parts = e.at(0).at("parts").get<std::vector<int>>();
    EOType b;
    b.g = e.at(1).at("g").get<int>();
    b.parts = e.at(1).at("parts").get<std::vector<int>>();
    t.by_label.emplace_back(std::move(a), std::move(b));
  }
  t.labels_complete = j.at("labels_complete").get<bool>();
  t.matches_closed_form = j.at("matches_closed_form").get<bool>();
  return t;
}

namespace {

template <typename T, typename Compute>
T cached(const std::string& dir, const std::string& name, const Compute& compute,
         const std::function<bool(const T&)>& valid) {
  namespace fs = std::filesystem;
  fs::path path = fs::path(dir) / name;
  if (fs::exists(path)) {
    try {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      T loaded = T::from_json_string(buf.str());
      if (valid(loaded)) return loaded;
    } catch (const std::exception&) {
      // fall through to recompute
    }
  }
  T fresh = compute();
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << fresh.to_json_string() << '\n';
  }
  fs::rename(tmp, path);
  return fresh;
}

}  // namespace

OrbitDecomposition cached_orbit_decomposition(const std::string& dir, int g, long p,
                                              const OracleLimits& limits) {
  std::string name = "oracle-g" + std::to_string(g) + "-p" + std::to_string(p) + ".json";
  return cached<OrbitDecomposition>(
      dir, name, [&] { return orbit_decomposition(g, p, limits); },
      [&](const OrbitDecomposition& d) { return d.g == g && d.p == p; });
}

IotaTable cached_iota(const std::string& dir, int g, int r, long p, const OracleLimits& limits) {
  std::string name = "iota-g" + std::to_string(g) + "-r" + std::to_string(r) + "-p" +
                     std::to_string(p) + ".json";
  return cached<IotaTable>(
      dir, name, [&] { return derive_iota(g, r, p, limits); },
      [&](const IotaTable& t) { return t.g == g && t.r == r && t.p == p; });
}

}  // namespace zipring
