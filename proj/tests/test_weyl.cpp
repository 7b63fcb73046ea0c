#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "zipring/taut_ring.hpp"
#include "zipring/weyl.hpp"

using namespace zipring;

namespace {

// All 2^g g! signed permutations, by direct product of permutations and sign
// patterns.
std::vector<SignedPermutation> whole_group(int g) {
  std::vector<int> base(static_cast<size_t>(g));
  for (int i = 0; i < g; ++i) base[static_cast<size_t>(i)] = i + 1;
  std::vector<SignedPermutation> out;
  std::sort(base.begin(), base.end());
  do {
    for (int mask = 0; mask < (1 << g); ++mask) {
      SignedPermutation w{base};
      for (int i = 0; i < g; ++i)
        if (mask & (1 << i)) w.images[static_cast<size_t>(i)] *= -1;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// Length oracle: distance from the identity in the Cayley graph of the
// simple reflections, by breadth first search.
std::map<std::vector<int>, long> bfs_lengths(int g) {
  std::vector<SignedPermutation> gens;
  for (int i = 0; i < g; ++i) gens.push_back(SignedPermutation::simple_reflection(g, i));
  std::map<std::vector<int>, long> dist;
  std::queue<SignedPermutation> queue;
  SignedPermutation id = SignedPermutation::identity(g);
  dist[id.images] = 0;
  queue.push(id);
  while (!queue.empty()) {
    SignedPermutation w = queue.front();
    queue.pop();
    long d = dist[w.images];
    for (const auto& s : gens) {
      SignedPermutation next = compose(w, s);
      if (dist.emplace(next.images, d + 1).second) queue.push(next);
    }
  }
  return dist;
}

// The permutation subgroup: signed permutations with no negated letters.
bool is_unsigned_perm(const SignedPermutation& w) {
  for (int v : w.images)
    if (v < 0) return false;
  return true;
}

// Positions holding a negated letter; constant on cosets S_g * w, since
// left multiplication only permutes the values and keeps their signs.
std::vector<int> coset_key(const SignedPermutation& w) {
  std::vector<int> neg;
  for (int i = 0; i < w.g(); ++i)
    if (w.images[static_cast<size_t>(i)] < 0) neg.push_back(i + 1);
  return neg;
}

std::vector<long> poly_coeffs(const Polynomial& f) {
  std::vector<long> c(static_cast<size_t>(f.degree()) + 1, 0);
  for (const auto& [m, coeff] : f.terms()) {
    REQUIRE(coeff.get_den() == 1);
    c[static_cast<size_t>(m.wdeg)] = static_cast<long>(coeff.get_num().get_si());
  }
  return c;
}

}  // namespace

TEST_CASE("closed form length equals Cayley graph distance") {
  for (int g = 1; g <= 3; ++g) {
    auto dist = bfs_lengths(g);
    auto all = whole_group(g);
    REQUIRE(dist.size() == all.size());
    for (const auto& w : all) CHECK(length(w) == dist.at(w.images));
  }
}

TEST_CASE("group structure around composition") {
  int g = 3;
  auto all = whole_group(g);
  SignedPermutation id = SignedPermutation::identity(g);
  for (size_t k = 0; k < all.size(); k += 5) {
    const auto& w = all[k];
    w.validate();
    CHECK(compose(w, inverse(w)) == id);
    CHECK(compose(inverse(w), w) == id);
    CHECK(length(inverse(w)) == length(w));
    const auto& v = all[(k * 7 + 3) % all.size()];
    for (int i = 1; i <= g; ++i) {
      CHECK(compose(w, v).apply(i) == w.apply(v.apply(i)));
      CHECK(w.apply(-i) == -w.apply(i));
    }
  }
  CHECK(length(id) == 0);
  for (int i = 0; i < g; ++i) CHECK(length(SignedPermutation::simple_reflection(g, i)) == 1);
}

TEST_CASE("validate rejects malformed windows") {
  CHECK_THROWS(SignedPermutation{{1, 1}}.validate());
  CHECK_THROWS(SignedPermutation{{2, -2}}.validate());
  CHECK_THROWS(SignedPermutation{{0, 1}}.validate());
  CHECK_THROWS(SignedPermutation{{3, 1}}.validate());
  SignedPermutation ok{{-2, 1}};
  ok.validate();
  CHECK(ok.to_string() == "-2,1");
}

TEST_CASE("coset table lists the unique minimal representatives") {
  for (int g = 1; g <= 3; ++g) {
    auto all = whole_group(g);
    // Brute force: group the whole hyperoctahedral group into cosets S_g * w
    // and find each coset's minimum length.
    std::map<std::vector<int>, std::vector<SignedPermutation>> cosets;
    for (const auto& w : all) cosets[coset_key(w)].push_back(w);
    REQUIRE(cosets.size() == (size_t{1} << g));
    for (auto& [key, members] : cosets) {
      // Cosets are closed under left multiplication by unsigned perms.
      for (const auto& m : members)
        for (const auto& s : all)
          if (is_unsigned_perm(s)) CHECK(coset_key(compose(s, m)) == key);
    }

    CosetTable table = CosetTable::build(g);
    REQUIRE(table.reps().size() == (size_t{1} << g));
    std::set<std::vector<int>> seen;
    for (const CosetRep& rep : table.reps()) {
      rep.w.validate();
      CHECK(seen.insert(coset_key(rep.w)).second);
      const auto& members = cosets.at(coset_key(rep.w));
      long best = length(members.front());
      long best_count = 0;
      for (const auto& m : members) best = std::min(best, length(m));
      for (const auto& m : members)
        if (length(m) == best) ++best_count;
      CHECK(best_count == 1);  // the minimum is unique
      CHECK(rep.len == best);
      CHECK(length(rep.w) == best);
      CHECK(rep.len == rep.type.codim());
      rep.type.validate();
      // The attached partition lists the negative positions, largest first.
      std::vector<int> positions = coset_key(rep.w);
      std::reverse(positions.begin(), positions.end());
      CHECK(rep.type.parts == positions);
      CHECK(table.rep_for(rep.type).w == rep.w);
    }
  }
}

TEST_CASE("length generating function is the even product formula") {
  for (int g = 1; g <= 5; ++g) {
    Polynomial p = poincare_WP(g);
    // Direct convolution of (1+t)(1+t^2)...(1+t^g).
    std::vector<long> expect = {1};
    for (int i = 1; i <= g; ++i) {
      std::vector<long> next(expect.size() + static_cast<size_t>(i), 0);
      for (size_t k = 0; k < expect.size(); ++k) {
        next[k] += expect[k];
        next[k + static_cast<size_t>(i)] += expect[k];
      }
      expect = std::move(next);
    }
    CHECK(poly_coeffs(p) == expect);
  }
  // Same coefficients as the graded quotient ring dimensions.
  for (int g = 1; g <= 4; ++g) CHECK(poly_coeffs(poincare_WP(g)) == ring(g)->hilbert_function());
}

TEST_CASE("stratum labels are staircase partitions") {
  EOType t{3, {3, 1}};
  t.validate();
  CHECK(t.codim() == 4);
  CHECK(t.to_string() == "[3,1]");
  EOType empty{2, {}};
  empty.validate();
  CHECK(empty.codim() == 0);
  CHECK(empty.to_string() == "[]");
  CHECK_THROWS(EOType{3, {1, 3}}.validate());
  CHECK_THROWS(EOType{3, {2, 2}}.validate());
  CHECK_THROWS(EOType{2, {3}}.validate());
  CHECK_THROWS(EOType{2, {1, 0}}.validate());
}

TEST_CASE("stratum label JSON round trip") {
  EOType t{4, {3, 2}};
  EOType back = EOType::from_json_string(t.to_json_string());
  CHECK(back == t);
  CHECK(EOType::from_json_string("{\"g\":2,\"parts\":[]}") == EOType{2, {}});
  CHECK_THROWS(EOType::from_json_string("{\"g\":2}"));
}

TEST_CASE("coset csv has one row per stratum") {
  CosetTable table = CosetTable::build(3);
  std::string csv = table.to_csv();
  size_t lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 9);  // header + 8 reps
  CHECK(csv.rfind("rep,length,partition\n", 0) == 0);
}

TEST_CASE("degeneration keeps stratum parts") {
  EOType t{2, {2, 1}};
  EOType up = iota_embedding(4, 2, t);
  CHECK(up.g == 4);
  CHECK(up.parts == t.parts);
  up.validate();
  EOType empty = iota_embedding(3, 2, EOType{1, {}});
  CHECK(empty == EOType{3, {}});
  CHECK_THROWS(iota_embedding(3, 1, EOType{3, {1}}));  // genus mismatch
  CHECK_THROWS(iota_embedding(2, -1, EOType{3, {1}}));
}
